#pragma once

// Finite simplicial trees: geodesics, convex closures, the valence
// certificates of a quasi-isometry onto a tree, Manning's bottleneck
// criterion and end counting on graph balls.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qtreekit/metric.hpp"

namespace qtreekit {

class SimplicialTree {
 public:
  SimplicialTree() = default;
  // Throws unless the graph is connected and acyclic.
  explicit SimplicialTree(Graph graph, PointId root = 0);

  const Graph& graph() const { return graph_; }
  std::size_t size() const { return graph_.vertex_count(); }
  PointId root() const { return root_; }
  PointId parent(PointId v) const { return parent_.at(v); }
  std::size_t depth(PointId v) const { return depth_.at(v); }
  std::size_t valence(PointId v) const { return graph_.neighbors(v).size(); }
  std::size_t distance(PointId u, PointId v) const;

 private:
  Graph graph_;
  PointId root_ = 0;
  std::vector<PointId> parent_;
  std::vector<std::size_t> depth_;
};

std::vector<PointId> tree_geodesic(const SimplicialTree& tree, PointId u, PointId v);

// A subtree of a host tree; vertex i of `tree` is host vertex vertices[i].
struct Subtree {
  std::vector<PointId> vertices;  // sorted host ids
  SimplicialTree tree;

  bool contains(PointId host) const;
};

Subtree convex_closure(const SimplicialTree& tree, std::span<const PointId> subset);

struct ClosureDensityReport {
  bool precondition_ok = false;  // subset is c-coarse connected
  double bound = 0.0;            // ceil(c / 2)
  double achieved = 0.0;         // farthest closure vertex from the subset
  bool dense = false;
  std::optional<Witness> witness;
  std::string diagnostic;
};

ClosureDensityReport verify_closure_density(const SimplicialTree& tree,
                                            std::span<const PointId> subset, double c);

// BFS geodesic with the lexicographically smallest vertex sequence.
std::vector<PointId> lex_geodesic(const Graph& graph, PointId x, PointId y);

struct BottleneckWitness {
  PointId x = 0;
  PointId y = 0;
  PointId z = 0;
  std::vector<PointId> detour;  // x..y avoiding B(z, C)
};

struct BottleneckResult {
  bool pass = true;
  std::size_t pairs_checked = 0;
  std::optional<BottleneckWitness> witness;
};

BottleneckResult bottleneck_check(const Graph& graph, double C,
                                  std::span<const std::pair<PointId, PointId>> pairs);

std::vector<std::pair<PointId, PointId>> all_pairs(std::size_t n);
std::vector<std::pair<PointId, PointId>> sample_pairs(std::size_t n, std::size_t count,
                                                      std::uint64_t seed);

enum class EndVerdict { zero, one, two, three_or_more, unstable };

std::string to_string(EndVerdict verdict);

struct EndProfile {
  double radius = 0.0;
  std::vector<double> ladder;
  std::vector<std::size_t> counts;  // escaping components per ladder value
  EndVerdict verdict = EndVerdict::unstable;
};

// Components of B(x0, R) \ B(x0, b) that reach the sphere of radius R.
// Every ladder value must satisfy 0 <= b <= R / 2.
EndProfile end_profile(const Graph& graph, PointId x0, double radius, std::vector<double> ladder);
// Metric variant: points at distance <= 1 count as adjacent.
EndProfile end_profile(const FiniteMetricSpace& space, PointId x0, double radius,
                       std::vector<double> ladder);

struct ValenceCertificate {
  PointId s = 0;            // host tree vertex
  std::size_t valence = 0;  // valence of s inside the subtree
  PointId p = 0;            // graph vertex
  double image_distance = 0.0;
  std::size_t ball_size = 0;
};

struct SubtreeFromQi {
  Subtree subtree;
  double ball_radius = 0.0;  // 2K^2 + 3K eps
  std::vector<ValenceCertificate> certificates;
};

// `map[v]` is the tree vertex of graph vertex v. The map is checked as a
// (K, eps) quasi-isometric embedding first; a vertex that cannot be
// certified raises an Error naming it.
SubtreeFromQi subtree_from_qi(const Graph& graph, const SimplicialTree& tree,
                              std::span<const PointId> map, double K, double eps);

struct ApproximatingTree {
  SimplicialTree tree;
  std::vector<PointId> vertex_map;  // graph vertex -> tree node
  std::vector<std::pair<std::size_t, std::vector<PointId>>> nodes;  // (shell, members)
  QieConstants fitted;
  std::vector<std::string> warnings;
};

// Shells of width 2C+1 around x0, cut into 3C-coarse components (scale at
// least 1), joined across consecutive shells. The fit pins K at 2C+1.
// Refuses (throws) when the bottleneck check fails at C on `pairs`, or on
// all pairs through x0 plus a seeded sample when `pairs` is empty.
ApproximatingTree approximating_tree(const Graph& graph, PointId x0, double C,
                                     std::span<const std::pair<PointId, PointId>> pairs = {});

// Removes leaves repeatedly; returns the surviving vertices (sorted).
std::vector<PointId> prune_leaves(const Graph& graph);

}  // namespace qtreekit
