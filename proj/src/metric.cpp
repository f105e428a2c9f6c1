#include "qtreekit/metric.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <sstream>

namespace qtreekit {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) std::swap(a, b);
    parent_[a] = b;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

Graph::Graph(std::size_t vertex_count) : adjacency_(vertex_count) {}

void Graph::add_edge(PointId u, PointId v) {
  if (u >= vertex_count() || v >= vertex_count()) {
    throw Error("edge references vertex outside 0.." + std::to_string(vertex_count()));
  }
  if (u == v) throw Error("self-loop at vertex " + std::to_string(u));
  if (has_edge(u, v)) {
    throw Error("duplicate edge " + std::to_string(u) + "-" + std::to_string(v));
  }
  auto insert_sorted = [](std::vector<PointId>& list, PointId x) {
    list.insert(std::lower_bound(list.begin(), list.end(), x), x);
  };
  insert_sorted(adjacency_[u], v);
  insert_sorted(adjacency_[v], u);
  ++edge_count_;
}

bool Graph::has_edge(PointId u, PointId v) const {
  const auto& list = adjacency_.at(u);
  return std::binary_search(list.begin(), list.end(), v);
}

std::vector<std::pair<PointId, PointId>> Graph::edges() const {
  std::vector<std::pair<PointId, PointId>> out;
  out.reserve(edge_count_);
  for (PointId u = 0; u < vertex_count(); ++u) {
    for (PointId v : adjacency_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

std::vector<long> Graph::distances_from(PointId source) const {
  return distances_from(source, std::vector<bool>(vertex_count(), false));
}

std::vector<long> Graph::distances_from(PointId source, const std::vector<bool>& blocked) const {
  std::vector<long> dist(vertex_count(), -1);
  if (blocked[source]) return dist;
  std::deque<PointId> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const PointId u = queue.front();
    queue.pop_front();
    for (PointId v : adjacency_[u]) {
      if (dist[v] < 0 && !blocked[v]) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

std::vector<std::vector<long>> Graph::all_distances() const {
  std::vector<std::vector<long>> out;
  out.reserve(vertex_count());
  for (PointId v = 0; v < vertex_count(); ++v) out.push_back(distances_from(v));
  return out;
}

bool Graph::is_connected() const {
  if (vertex_count() == 0) return true;
  const auto dist = distances_from(0);
  return std::none_of(dist.begin(), dist.end(), [](long d) { return d < 0; });
}

std::vector<std::vector<PointId>> Graph::components() const {
  std::vector<std::vector<PointId>> out;
  std::vector<bool> seen(vertex_count(), false);
  for (PointId s = 0; s < vertex_count(); ++s) {
    if (seen[s]) continue;
    std::vector<PointId> block;
    std::deque<PointId> queue{s};
    seen[s] = true;
    while (!queue.empty()) {
      const PointId u = queue.front();
      queue.pop_front();
      block.push_back(u);
      for (PointId v : adjacency_[u]) {
        if (!seen[v]) {
          seen[v] = true;
          queue.push_back(v);
        }
      }
    }
    std::sort(block.begin(), block.end());
    out.push_back(std::move(block));
  }
  return out;
}

Graph Graph::induced(std::span<const PointId> vertices) const {
  std::vector<long> local(vertex_count(), -1);
  for (std::size_t i = 0; i < vertices.size(); ++i) local.at(vertices[i]) = static_cast<long>(i);
  Graph out(vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (PointId v : adjacency_[vertices[i]]) {
      if (local[v] > static_cast<long>(i)) out.add_edge(i, static_cast<PointId>(local[v]));
    }
  }
  return out;
}

FiniteMetricSpace::FiniteMetricSpace(std::size_t n, std::vector<double> table,
                                     std::vector<std::string> labels)
    : n_(n), table_(std::move(table)), labels_(std::move(labels)) {
  validate_basic();
#ifndef NDEBUG
  validate_triangle_inequality();
#endif
}

FiniteMetricSpace FiniteMetricSpace::from_graph(const Graph& graph) {
  const std::size_t n = graph.vertex_count();
  std::vector<double> table(n * n);
  for (PointId u = 0; u < n; ++u) {
    const auto dist = graph.distances_from(u);
    for (PointId v = 0; v < n; ++v) {
      if (dist[v] < 0) throw Error("graph is disconnected; its path metric is not finite");
      table[u * n + v] = static_cast<double>(dist[v]);
    }
  }
  return FiniteMetricSpace(n, std::move(table));
}

FiniteMetricSpace FiniteMetricSpace::on_line(std::span<const double> coordinates) {
  const std::size_t n = coordinates.size();
  std::vector<double> table(n * n);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    std::ostringstream os;
    os << coordinates[i];
    labels.push_back(os.str());
    for (std::size_t j = 0; j < n; ++j) table[i * n + j] = std::abs(coordinates[i] - coordinates[j]);
  }
  return FiniteMetricSpace(n, std::move(table), std::move(labels));
}

FiniteMetricSpace FiniteMetricSpace::from_function(
    std::size_t n, const std::function<double(PointId, PointId)>& dist,
    std::vector<std::string> labels) {
  std::vector<double> table(n * n, 0.0);
  for (PointId i = 0; i < n; ++i) {
    for (PointId j = i + 1; j < n; ++j) {
      const double d = dist(i, j);
      table[i * n + j] = d;
      table[j * n + i] = d;
    }
  }
  return FiniteMetricSpace(n, std::move(table), std::move(labels));
}

void FiniteMetricSpace::validate_basic() const {
  if (table_.size() != n_ * n_) throw Error("distance table is not n*n");
  if (!labels_.empty() && labels_.size() != n_) throw Error("label count does not match points");
  for (std::size_t i = 0; i < n_; ++i) {
    if (std::abs(distance(i, i)) > kTolerance) throw Error("dist(x,x) must be 0");
    for (std::size_t j = i + 1; j < n_; ++j) {
      const double d = distance(i, j);
      if (!(d >= 0.0) || !std::isfinite(d)) throw Error("distances must be finite and nonnegative");
      if (std::abs(d - distance(j, i)) > kTolerance) throw Error("distance table is not symmetric");
    }
  }
}

void FiniteMetricSpace::validate_triangle_inequality() const {
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      for (std::size_t k = 0; k < n_; ++k) {
        if (distance(i, k) > distance(i, j) + distance(j, k) + kTolerance) {
          throw Error("triangle inequality fails at (" + std::to_string(i) + "," +
                      std::to_string(j) + "," + std::to_string(k) + ")");
        }
      }
    }
  }
}

FiniteMetricSpace FiniteMetricSpace::subspace(std::span<const PointId> ids) const {
  const std::size_t m = ids.size();
  std::vector<double> table(m * m);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < m; ++i) {
    if (!labels_.empty()) labels.push_back(labels_.at(ids[i]));
    for (std::size_t j = 0; j < m; ++j) table[i * m + j] = distance(ids[i], ids[j]);
  }
  return FiniteMetricSpace(m, std::move(table), std::move(labels));
}

std::string to_string(WitnessKind kind) {
  switch (kind) {
    case WitnessKind::qie_lower: return "qie-lower";
    case WitnessKind::qie_upper: return "qie-upper";
    case WitnessKind::not_coarse_onto: return "not-coarse-onto";
    case WitnessKind::not_coarse_dense: return "not-coarse-dense";
  }
  return "unknown";
}

std::vector<std::vector<PointId>> coarse_components(const FiniteMetricSpace& space, double c) {
  if (!(c > 0.0)) throw Error("coarse connectivity scale must be positive");
  if (space.empty()) throw Error("coarse_components needs a non-empty space");
  const std::size_t n = space.size();
  DisjointSets sets(n);
  for (PointId i = 0; i < n; ++i) {
    for (PointId j = i + 1; j < n; ++j) {
      if (space.distance(i, j) <= c + kTolerance) sets.unite(i, j);
    }
  }
  std::vector<std::vector<PointId>> blocks;
  std::vector<long> block_of(n, -1);
  for (PointId i = 0; i < n; ++i) {
    const std::size_t root = sets.find(i);
    if (block_of[root] < 0) {
      block_of[root] = static_cast<long>(blocks.size());
      blocks.emplace_back();
    }
    blocks[static_cast<std::size_t>(block_of[root])].push_back(i);
  }
  return blocks;
}

double coarse_connectivity_constant(const FiniteMetricSpace& space) {
  const std::size_t n = space.size();
  if (n <= 1) return 0.0;
  // Prim's algorithm; the answer is the heaviest MST edge.
  std::vector<double> best(n, std::numeric_limits<double>::infinity());
  std::vector<bool> in_tree(n, false);
  best[0] = 0.0;
  double bottleneck = 0.0;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t next = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (!in_tree[v] && (next == n || best[v] < best[next])) next = v;
    }
    in_tree[next] = true;
    bottleneck = std::max(bottleneck, best[next]);
    for (std::size_t v = 0; v < n; ++v) {
      if (!in_tree[v]) best[v] = std::min(best[v], space.distance(next, v));
    }
  }
  return bottleneck;
}

DensityCheck is_coarse_dense(std::span<const PointId> subset, const FiniteMetricSpace& ambient,
                             double C) {
  if (subset.empty()) throw Error("coarse density needs a non-empty subset");
  for (PointId s : subset) {
    if (s >= ambient.size()) throw Error("subset point outside ambient space");
  }
  DensityCheck out;
  for (PointId p = 0; p < ambient.size(); ++p) {
    double nearest = std::numeric_limits<double>::infinity();
    for (PointId s : subset) nearest = std::min(nearest, ambient.distance(p, s));
    if (nearest > out.farthest_distance) {
      out.farthest_distance = nearest;
      out.farthest = p;
    }
  }
  out.dense = out.farthest_distance <= C + kTolerance;
  if (!out.dense) {
    out.witness = Witness{WitnessKind::not_coarse_dense, {out.farthest}, out.farthest_distance - C};
  }
  return out;
}

double hausdorff_distance(std::span<const PointId> a, std::span<const PointId> b,
                          const FiniteMetricSpace& ambient) {
  if (a.empty() || b.empty()) throw Error("hausdorff distance needs non-empty sets");
  auto directed = [&](std::span<const PointId> from, std::span<const PointId> to) {
    double worst = 0.0;
    for (PointId x : from) {
      double nearest = std::numeric_limits<double>::infinity();
      for (PointId y : to) nearest = std::min(nearest, ambient.distance(x, y));
      worst = std::max(worst, nearest);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

QieCheck check_qie(std::size_t n, const std::function<double(PointId, PointId)>& dx,
                   const std::function<double(PointId, PointId)>& dy,
                   const std::optional<QieConstants>& constants) {
  QieCheck out;
  if (constants) {
    const auto [K, eps, C] = *constants;
    if (K < 1.0 || eps < 0.0 || C < 0.0) throw Error("QI constants need K >= 1, eps >= 0, C >= 0");
    for (PointId i = 0; i < n; ++i) {
      for (PointId j = i + 1; j < n; ++j) {
        const double a = dx(i, j);
        const double b = dy(i, j);
        const double lower = a / K - eps - b;
        const double upper = b - K * a - eps;
        if (lower > kTolerance) {
          out.witness = Witness{WitnessKind::qie_lower, {i, j}, lower};
          return out;
        }
        if (upper > kTolerance) {
          out.witness = Witness{WitnessKind::qie_upper, {i, j}, upper};
          return out;
        }
      }
    }
    out.constants = *constants;
    return out;
  }

  double K = 1.0;
  for (PointId i = 0; i < n; ++i) {
    for (PointId j = i + 1; j < n; ++j) {
      const double a = dx(i, j);
      const double b = dy(i, j);
      if (a < 1.0) continue;
      K = std::max(K, b / a);
      if (b > kTolerance) K = std::max(K, a / b);
    }
  }
  double eps = 0.0;
  for (PointId i = 0; i < n; ++i) {
    for (PointId j = i + 1; j < n; ++j) {
      const double a = dx(i, j);
      const double b = dy(i, j);
      eps = std::max({eps, b - K * a, a / K - b});
    }
  }
  out.constants = QieConstants{K, eps, 0.0};
  return out;
}

QieCheck verify_qie(std::span<const PointId> f, const FiniteMetricSpace& x,
                    const FiniteMetricSpace& y, const std::optional<QieConstants>& constants) {
  if (f.size() != x.size()) throw Error("map must be defined on every point of the domain");
  for (PointId v : f) {
    if (v >= y.size()) throw Error("map sends a point outside the target space");
  }
  return check_qie(
      x.size(), [&](PointId i, PointId j) { return x.distance(i, j); },
      [&](PointId i, PointId j) { return y.distance(f[i], f[j]); }, constants);
}

QieCheck verify_qi(std::span<const PointId> f, const FiniteMetricSpace& x,
                   const FiniteMetricSpace& y, const std::optional<QieConstants>& constants) {
  QieCheck out = verify_qie(f, x, y, constants);
  if (!out.ok()) return out;
  std::vector<PointId> image(f.begin(), f.end());
  std::sort(image.begin(), image.end());
  image.erase(std::unique(image.begin(), image.end()), image.end());
  if (image.empty()) return out;
  const DensityCheck density =
      is_coarse_dense(image, y, constants ? constants->C : std::numeric_limits<double>::max());
  if (constants) {
    if (!density.dense) {
      out.constants.reset();
      out.witness = Witness{WitnessKind::not_coarse_onto, {density.farthest},
                            density.farthest_distance - constants->C};
    }
  } else {
    out.constants->C = density.farthest_distance;
  }
  return out;
}

std::vector<PointId> ball(const FiniteMetricSpace& space, PointId center, double radius) {
  std::vector<PointId> out;
  for (PointId p = 0; p < space.size(); ++p) {
    if (space.distance(center, p) <= radius + kTolerance) out.push_back(p);
  }
  return out;
}

std::size_t covering_number(const FiniteMetricSpace& space, PointId center, double radius,
                            double cover_radius) {
  if (cover_radius < 0.0) throw Error("cover radius must be nonnegative");
  if (radius < cover_radius) throw Error("covering_number needs R >= R0");
  if (center >= space.size()) throw Error("center outside space");
  const std::vector<PointId> target = ball(space, center, radius);
  std::vector<bool> covered(target.size(), false);
  std::size_t remaining = target.size();
  std::size_t count = 0;
  while (remaining > 0) {
    // Candidate centres are the points of the ball; ties go to the lowest id.
    std::size_t best_gain = 0;
    PointId best = target.front();
    for (PointId cand : target) {
      std::size_t gain = 0;
      for (std::size_t i = 0; i < target.size(); ++i) {
        if (!covered[i] && space.distance(cand, target[i]) <= cover_radius + kTolerance) ++gain;
      }
      if (gain > best_gain) {
        best_gain = gain;
        best = cand;
      }
    }
    for (std::size_t i = 0; i < target.size(); ++i) {
      if (!covered[i] && space.distance(best, target[i]) <= cover_radius + kTolerance) {
        covered[i] = true;
        --remaining;
      }
    }
    ++count;
  }
  return count;
}

}  // namespace qtreekit
