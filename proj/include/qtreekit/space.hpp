#pragma once

// Target spaces for actions: the real line, lazily evaluated simplicial
// trees (materialisable to finite balls) and finite graphs.

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "qtreekit/metric.hpp"
#include "qtreekit/trees.hpp"
#include "qtreekit/word.hpp"

namespace qtreekit {

using Label = std::vector<std::int64_t>;
// Vertex label of a simplicial space, or a coordinate on the real line.
using Point = std::variant<Label, double>;

std::string format_point(const Point& p);
const Label& label_of(const Point& p);
double coordinate_of(const Point& p);
Point vertex(std::initializer_list<std::int64_t> coords);

class Space {
 public:
  virtual ~Space() = default;

  virtual std::string name() const = 0;
  virtual bool contains(const Point& p) const = 0;
  virtual double distance(const Point& a, const Point& b) const = 0;
  virtual Point basepoint() const = 0;

  virtual bool is_tree() const { return false; }
  virtual bool is_line() const { return false; }
  // Exact integer metric with label identity (false for the real line).
  virtual bool exact() const { return true; }
  // Adjacent vertices for simplicial spaces; empty for the line.
  virtual std::vector<Point> neighbors(const Point&) const { return {}; }
};

class RealLine final : public Space {
 public:
  std::string name() const override { return "real-line"; }
  bool contains(const Point& p) const override;
  double distance(const Point& a, const Point& b) const override;
  Point basepoint() const override { return 0.0; }
  bool is_line() const override { return true; }
  bool exact() const override { return false; }
};

// Materialised ball of a simplicial space; point i of `points` is vertex i of
// `graph`, and the centre is vertex 0.
struct MaterialisedBall {
  std::vector<Point> points;
  std::map<Point, PointId> index;
  Graph graph;
};

MaterialisedBall materialise_ball(const Space& space, const Point& center, std::size_t radius);

class LazyTree : public Space {
 public:
  bool is_tree() const final { return true; }

  // Vertex sequence from u to v.
  std::vector<Point> geodesic(const Point& u, const Point& v) const;
  // Next vertex on the geodesic from u towards v (u itself when equal).
  Point step_toward(const Point& u, const Point& v) const;

  struct Ball {
    MaterialisedBall data;
    SimplicialTree tree;
  };
  Ball ball(const Point& center, std::size_t radius) const;
};

// Cayley tree of the free group on `rank` generators (T_4 for rank 2).
class CayleyTree final : public LazyTree {
 public:
  explicit CayleyTree(int rank);

  std::string name() const override;
  bool contains(const Point& p) const override;
  double distance(const Point& a, const Point& b) const override;
  Point basepoint() const override { return Label{}; }
  std::vector<Point> neighbors(const Point& p) const override;

  int rank() const { return rank_; }
  static Point point_of(const Word& w);
  static Word word_of(const Point& p);

 private:
  int rank_;
};

// The simplicial line: vertices are the integers.
class SimplicialLine final : public LazyTree {
 public:
  std::string name() const override { return "simplicial-line"; }
  bool contains(const Point& p) const override;
  double distance(const Point& a, const Point& b) const override;
  Point basepoint() const override { return Label{0}; }
  std::vector<Point> neighbors(const Point& p) const override;
};

// Coset tree of a direct product of cyclic groups C_{p1} x ... x C_{pm},
// filtered by G_i = C_{p1} x ... x C_{pi}. A level-i vertex (a coset gG_i)
// is labelled {i, g_{i+1}, ..., g_m}; level m is the single top vertex.
class CosetTree final : public LazyTree {
 public:
  explicit CosetTree(std::vector<int> orders);

  std::string name() const override;
  bool contains(const Point& p) const override;
  double distance(const Point& a, const Point& b) const override;
  Point basepoint() const override;
  std::vector<Point> neighbors(const Point& p) const override;

  const std::vector<int>& orders() const { return orders_; }
  std::size_t levels() const { return orders_.size(); }
  std::size_t level_of(const Point& p) const;
  // Level-0 vertex of a group element given by its coordinates.
  Point element_vertex(const std::vector<std::int64_t>& coords) const;
  // Image of p under the generator of the k-th factor (1-based) raised to
  // `power`.
  Point act(int factor, long power, const Point& p) const;

 private:
  std::vector<int> orders_;
};

// A base tree with a path of `hair_length` edges hung from every vertex.
// Labels are the base label followed by the depth along the hair; foot()
// returns the base label.
class HairyTree final : public LazyTree {
 public:
  HairyTree(std::shared_ptr<const LazyTree> base, int hair_length);

  std::string name() const override;
  bool contains(const Point& p) const override;
  double distance(const Point& a, const Point& b) const override;
  Point basepoint() const override;
  std::vector<Point> neighbors(const Point& p) const override;

  const LazyTree& base() const { return *base_; }
  int hair_length() const { return hair_length_; }
  Point attach(const Point& base_point, std::int64_t depth) const;
  Point foot(const Point& p) const;
  std::int64_t depth(const Point& p) const;

 private:
  std::shared_ptr<const LazyTree> base_;
  int hair_length_;
};

// `arms` paths of length `arm_length` joined at a centre {0, 0}; vertex
// {a, k} is at distance k along arm a.
class StarTree final : public LazyTree {
 public:
  StarTree(int arms, int arm_length);

  std::string name() const override;
  bool contains(const Point& p) const override;
  double distance(const Point& a, const Point& b) const override;
  Point basepoint() const override { return Label{0, 0}; }
  std::vector<Point> neighbors(const Point& p) const override;

  int arms() const { return arms_; }
  int arm_length() const { return arm_length_; }

 private:
  int arms_;
  int arm_length_;
};

// Finite graph with its path metric; vertices are labelled {v}. Reports
// itself as a tree through FiniteTreeSpace instead when acyclic.
class GraphSpace final : public Space {
 public:
  explicit GraphSpace(Graph graph);

  std::string name() const override { return "graph"; }
  bool contains(const Point& p) const override;
  double distance(const Point& a, const Point& b) const override;
  Point basepoint() const override { return Label{0}; }
  std::vector<Point> neighbors(const Point& p) const override;
  const Graph& graph() const { return graph_; }

 private:
  Graph graph_;
  std::vector<std::vector<long>> dist_;
};

class FiniteTreeSpace final : public LazyTree {
 public:
  explicit FiniteTreeSpace(SimplicialTree tree);

  std::string name() const override { return "finite-tree"; }
  bool contains(const Point& p) const override;
  double distance(const Point& a, const Point& b) const override;
  Point basepoint() const override { return Label{0}; }
  std::vector<Point> neighbors(const Point& p) const override;
  const SimplicialTree& tree() const { return tree_; }

 private:
  SimplicialTree tree_;
};

std::shared_ptr<const Space> make_graph_space(Graph graph);

}  // namespace qtreekit
