#include "qtreekit/space.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <sstream>

namespace qtreekit {

std::string format_point(const Point& p) {
  if (const double* x = std::get_if<double>(&p)) {
    std::ostringstream os;
    os.precision(12);
    os << *x;
    return os.str();
  }
  const Label& label = std::get<Label>(p);
  std::string out = "(";
  for (std::size_t i = 0; i < label.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(label[i]);
  }
  return out + ")";
}

const Label& label_of(const Point& p) {
  const Label* label = std::get_if<Label>(&p);
  if (!label) throw Error("expected a vertex label, got a real coordinate");
  return *label;
}

double coordinate_of(const Point& p) {
  const double* x = std::get_if<double>(&p);
  if (!x) throw Error("expected a real coordinate, got a vertex label");
  return *x;
}

Point vertex(std::initializer_list<std::int64_t> coords) { return Label(coords); }

bool RealLine::contains(const Point& p) const {
  const double* x = std::get_if<double>(&p);
  return x && std::isfinite(*x);
}

double RealLine::distance(const Point& a, const Point& b) const {
  return std::abs(coordinate_of(a) - coordinate_of(b));
}

MaterialisedBall materialise_ball(const Space& space, const Point& center, std::size_t radius) {
  if (!space.contains(center)) throw Error("ball centre outside space " + space.name());
  MaterialisedBall ball;
  std::vector<std::size_t> depth;
  ball.points.push_back(center);
  ball.index.emplace(center, 0);
  depth.push_back(0);
  std::vector<std::pair<PointId, PointId>> edges;
  for (std::size_t head = 0; head < ball.points.size(); ++head) {
    const Point u = ball.points[head];
    for (const Point& v : space.neighbors(u)) {
      auto it = ball.index.find(v);
      if (it == ball.index.end()) {
        if (depth[head] >= radius) continue;
        it = ball.index.emplace(v, ball.points.size()).first;
        ball.points.push_back(v);
        depth.push_back(depth[head] + 1);
      }
      if (head < it->second) edges.emplace_back(head, it->second);
    }
  }
  ball.graph = Graph(ball.points.size());
  for (const auto& [u, v] : edges) {
    if (!ball.graph.has_edge(u, v)) ball.graph.add_edge(u, v);
  }
  return ball;
}

Point LazyTree::step_toward(const Point& u, const Point& v) const {
  const double d = distance(u, v);
  if (d == 0.0) return u;
  for (const Point& w : neighbors(u)) {
    if (distance(w, v) == d - 1.0) return w;
  }
  throw Error("distance oracle of " + name() + " disagrees with its adjacency");
}

std::vector<Point> LazyTree::geodesic(const Point& u, const Point& v) const {
  if (!contains(u) || !contains(v)) throw Error("geodesic endpoint outside " + name());
  std::vector<Point> path{u};
  while (path.back() != v) path.push_back(step_toward(path.back(), v));
  return path;
}

LazyTree::Ball LazyTree::ball(const Point& center, std::size_t radius) const {
  MaterialisedBall data = materialise_ball(*this, center, radius);
  SimplicialTree tree(data.graph, 0);
  return Ball{std::move(data), std::move(tree)};
}

// ---------------------------------------------------------------------------

CayleyTree::CayleyTree(int rank) : rank_(rank) {
  if (rank < 1) throw Error("Cayley tree needs rank >= 1");
}

std::string CayleyTree::name() const { return "cayley-tree-" + std::to_string(2 * rank_); }

Point CayleyTree::point_of(const Word& w) {
  return Label(w.letters().begin(), w.letters().end());
}

Word CayleyTree::word_of(const Point& p) {
  const Label& label = label_of(p);
  return Word(std::vector<int>(label.begin(), label.end()));
}

bool CayleyTree::contains(const Point& p) const {
  const Label* label = std::get_if<Label>(&p);
  if (!label) return false;
  for (std::size_t i = 0; i < label->size(); ++i) {
    const auto l = (*label)[i];
    if (l == 0 || std::llabs(l) > rank_) return false;
    if (i > 0 && (*label)[i - 1] == -l) return false;
  }
  return true;
}

double CayleyTree::distance(const Point& a, const Point& b) const {
  const Label& x = label_of(a);
  const Label& y = label_of(b);
  std::size_t common = 0;
  while (common < x.size() && common < y.size() && x[common] == y[common]) ++common;
  return static_cast<double>(x.size() + y.size() - 2 * common);
}

std::vector<Point> CayleyTree::neighbors(const Point& p) const {
  const Label& label = label_of(p);
  std::vector<Point> out;
  for (int g = 1; g <= rank_; ++g) {
    for (int s : {g, -g}) {
      Label next = label;
      if (!next.empty() && next.back() == -s) {
        next.pop_back();
      } else {
        next.push_back(s);
      }
      out.emplace_back(std::move(next));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

bool SimplicialLine::contains(const Point& p) const {
  const Label* label = std::get_if<Label>(&p);
  return label && label->size() == 1;
}

double SimplicialLine::distance(const Point& a, const Point& b) const {
  return static_cast<double>(std::llabs(label_of(a).at(0) - label_of(b).at(0)));
}

std::vector<Point> SimplicialLine::neighbors(const Point& p) const {
  const auto n = label_of(p).at(0);
  return {Label{n - 1}, Label{n + 1}};
}

// ---------------------------------------------------------------------------

CosetTree::CosetTree(std::vector<int> orders) : orders_(std::move(orders)) {
  if (orders_.empty()) throw Error("coset tree needs at least one factor");
  for (int p : orders_) {
    if (p < 2) throw Error("coset tree factor orders must be >= 2");
  }
}

std::string CosetTree::name() const {
  std::string out = "coset-tree(";
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(orders_[i]);
  }
  return out + ")";
}

bool CosetTree::contains(const Point& p) const {
  const Label* label = std::get_if<Label>(&p);
  if (!label || label->empty()) return false;
  const auto level = (*label)[0];
  if (level < 0 || level > static_cast<std::int64_t>(orders_.size())) return false;
  if (label->size() != 1 + orders_.size() - static_cast<std::size_t>(level)) return false;
  for (std::size_t j = 1; j < label->size(); ++j) {
    const auto factor = static_cast<std::size_t>(level) + j - 1;
    if ((*label)[j] < 0 || (*label)[j] >= orders_[factor]) return false;
  }
  return true;
}

std::size_t CosetTree::level_of(const Point& p) const {
  if (!contains(p)) throw Error("label outside " + name());
  return static_cast<std::size_t>(label_of(p)[0]);
}

double CosetTree::distance(const Point& a, const Point& b) const {
  const std::size_t i = level_of(a);
  const std::size_t j = level_of(b);
  const Label& x = label_of(a);
  const Label& y = label_of(b);
  const std::size_t m = orders_.size();
  // Lowest common ancestor level: smallest k >= max(i, j) with the
  // coordinates of factors k+1..m agreeing.
  std::size_t k = m;
  for (std::size_t level = std::max(i, j); level <= m; ++level) {
    bool agree = true;
    for (std::size_t factor = level; factor < m && agree; ++factor) {
      agree = x[1 + factor - i] == y[1 + factor - j];
    }
    if (agree) {
      k = level;
      break;
    }
  }
  return static_cast<double>((k - i) + (k - j));
}

Point CosetTree::basepoint() const { return element_vertex(Label(orders_.size(), 0)); }

Point CosetTree::element_vertex(const std::vector<std::int64_t>& coords) const {
  if (coords.size() != orders_.size()) throw Error("element coordinates do not match the factors");
  Label label{0};
  label.insert(label.end(), coords.begin(), coords.end());
  if (!contains(label)) throw Error("element coordinates out of range");
  return label;
}

std::vector<Point> CosetTree::neighbors(const Point& p) const {
  const std::size_t level = level_of(p);
  const Label& label = label_of(p);
  std::vector<Point> out;
  if (level < orders_.size()) {
    Label parent{static_cast<std::int64_t>(level + 1)};
    parent.insert(parent.end(), label.begin() + 2, label.end());
    out.emplace_back(std::move(parent));
  }
  if (level > 0) {
    for (int x = 0; x < orders_[level - 1]; ++x) {
      Label child{static_cast<std::int64_t>(level - 1), x};
      child.insert(child.end(), label.begin() + 1, label.end());
      out.emplace_back(std::move(child));
    }
  }
  return out;
}

Point CosetTree::act(int factor, long power, const Point& p) const {
  const std::size_t level = level_of(p);
  if (factor < 1 || static_cast<std::size_t>(factor) > orders_.size()) {
    throw Error("coset tree has no factor " + std::to_string(factor));
  }
  const auto f = static_cast<std::size_t>(factor - 1);
  if (f < level) return p;  // the factor lies in G_level and fixes the coset
  Label out = label_of(p);
  const long order = orders_[f];
  auto& coord = out[1 + f - level];
  coord = ((coord + power) % order + order) % order;
  return out;
}

// ---------------------------------------------------------------------------

HairyTree::HairyTree(std::shared_ptr<const LazyTree> base, int hair_length)
    : base_(std::move(base)), hair_length_(hair_length) {
  if (!base_) throw Error("hairy tree needs a base tree");
  if (hair_length_ < 0) throw Error("hair length must be nonnegative");
}

std::string HairyTree::name() const {
  return base_->name() + "+hairs" + std::to_string(hair_length_);
}

Point HairyTree::attach(const Point& base_point, std::int64_t depth) const {
  Label out = label_of(base_point);
  out.push_back(depth);
  return out;
}

Point HairyTree::foot(const Point& p) const {
  Label out = label_of(p);
  if (out.empty()) throw Error("hairy tree label is empty");
  out.pop_back();
  return out;
}

std::int64_t HairyTree::depth(const Point& p) const { return label_of(p).back(); }

bool HairyTree::contains(const Point& p) const {
  const Label* label = std::get_if<Label>(&p);
  if (!label || label->empty()) return false;
  const auto k = label->back();
  return k >= 0 && k <= hair_length_ && base_->contains(foot(p));
}

double HairyTree::distance(const Point& a, const Point& b) const {
  const Point fa = foot(a);
  const Point fb = foot(b);
  const auto ka = depth(a);
  const auto kb = depth(b);
  if (fa == fb) return static_cast<double>(std::llabs(ka - kb));
  return static_cast<double>(ka + kb) + base_->distance(fa, fb);
}

Point HairyTree::basepoint() const { return attach(base_->basepoint(), 0); }

std::vector<Point> HairyTree::neighbors(const Point& p) const {
  const Point f = foot(p);
  const auto k = depth(p);
  std::vector<Point> out;
  if (k == 0) {
    for (const Point& q : base_->neighbors(f)) out.push_back(attach(q, 0));
  } else {
    out.push_back(attach(f, k - 1));
  }
  if (k < hair_length_) out.push_back(attach(f, k + 1));
  return out;
}

// ---------------------------------------------------------------------------

StarTree::StarTree(int arms, int arm_length) : arms_(arms), arm_length_(arm_length) {
  if (arms < 1 || arm_length < 1) throw Error("star needs at least one arm of positive length");
}

std::string StarTree::name() const {
  return "star(" + std::to_string(arms_) + "x" + std::to_string(arm_length_) + ")";
}

bool StarTree::contains(const Point& p) const {
  const Label* label = std::get_if<Label>(&p);
  if (!label || label->size() != 2) return false;
  const auto arm = (*label)[0];
  const auto k = (*label)[1];
  if (k == 0) return arm == 0;
  return arm >= 0 && arm < arms_ && k > 0 && k <= arm_length_;
}

double StarTree::distance(const Point& a, const Point& b) const {
  const Label& x = label_of(a);
  const Label& y = label_of(b);
  if (x[0] == y[0] || x[1] == 0 || y[1] == 0) return static_cast<double>(std::llabs(x[1] - y[1]));
  return static_cast<double>(x[1] + y[1]);
}

std::vector<Point> StarTree::neighbors(const Point& p) const {
  const Label& x = label_of(p);
  std::vector<Point> out;
  if (x[1] == 0) {
    for (int a = 0; a < arms_; ++a) out.emplace_back(Label{a, 1});
    return out;
  }
  out.emplace_back(x[1] == 1 ? Label{0, 0} : Label{x[0], x[1] - 1});
  if (x[1] < arm_length_) out.emplace_back(Label{x[0], x[1] + 1});
  return out;
}

// ---------------------------------------------------------------------------

GraphSpace::GraphSpace(Graph graph) : graph_(std::move(graph)), dist_(graph_.all_distances()) {}

bool GraphSpace::contains(const Point& p) const {
  const Label* label = std::get_if<Label>(&p);
  return label && label->size() == 1 && (*label)[0] >= 0 &&
         static_cast<std::size_t>((*label)[0]) < graph_.vertex_count();
}

double GraphSpace::distance(const Point& a, const Point& b) const {
  const long d = dist_.at(static_cast<std::size_t>(label_of(a).at(0)))
                     .at(static_cast<std::size_t>(label_of(b).at(0)));
  if (d < 0) return std::numeric_limits<double>::infinity();
  return static_cast<double>(d);
}

std::vector<Point> GraphSpace::neighbors(const Point& p) const {
  std::vector<Point> out;
  for (PointId v : graph_.neighbors(static_cast<PointId>(label_of(p).at(0)))) {
    out.emplace_back(Label{static_cast<std::int64_t>(v)});
  }
  return out;
}

FiniteTreeSpace::FiniteTreeSpace(SimplicialTree tree) : tree_(std::move(tree)) {}

bool FiniteTreeSpace::contains(const Point& p) const {
  const Label* label = std::get_if<Label>(&p);
  return label && label->size() == 1 && (*label)[0] >= 0 &&
         static_cast<std::size_t>((*label)[0]) < tree_.size();
}

double FiniteTreeSpace::distance(const Point& a, const Point& b) const {
  return static_cast<double>(tree_.distance(static_cast<PointId>(label_of(a).at(0)),
                                            static_cast<PointId>(label_of(b).at(0))));
}

std::vector<Point> FiniteTreeSpace::neighbors(const Point& p) const {
  std::vector<Point> out;
  for (PointId v : tree_.graph().neighbors(static_cast<PointId>(label_of(p).at(0)))) {
    out.emplace_back(Label{static_cast<std::int64_t>(v)});
  }
  return out;
}

std::shared_ptr<const Space> make_graph_space(Graph graph) {
  if (graph.is_connected() && graph.edge_count() + 1 == graph.vertex_count()) {
    return std::make_shared<FiniteTreeSpace>(SimplicialTree(std::move(graph)));
  }
  return std::make_shared<GraphSpace>(std::move(graph));
}

}  // namespace qtreekit
