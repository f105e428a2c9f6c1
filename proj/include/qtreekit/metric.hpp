#pragma once

// Finite metric spaces, unit-length graphs, and the coarse notions built on
// them (coarse connectivity, coarse density, quasi-isometric embeddings).

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qtreekit {

using PointId = std::size_t;

// Absolute tolerance for float-backed distance comparisons.
inline constexpr double kTolerance = 1e-9;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t vertex_count);

  std::size_t vertex_count() const { return adjacency_.size(); }
  std::size_t edge_count() const { return edge_count_; }

  // Throws on self-loops, duplicate edges and out-of-range vertices.
  void add_edge(PointId u, PointId v);
  bool has_edge(PointId u, PointId v) const;

  const std::vector<PointId>& neighbors(PointId v) const { return adjacency_.at(v); }
  std::vector<std::pair<PointId, PointId>> edges() const;  // sorted, u < v

  // BFS distances from source; -1 marks unreachable vertices.
  std::vector<long> distances_from(PointId source) const;
  // Same, but vertices with blocked[v] are treated as deleted.
  std::vector<long> distances_from(PointId source, const std::vector<bool>& blocked) const;
  std::vector<std::vector<long>> all_distances() const;

  bool is_connected() const;
  std::vector<std::vector<PointId>> components() const;

  Graph induced(std::span<const PointId> vertices) const;

 private:
  std::vector<std::vector<PointId>> adjacency_;
  std::size_t edge_count_ = 0;
};

class FiniteMetricSpace {
 public:
  FiniteMetricSpace() = default;
  // Row-major n*n table.
  FiniteMetricSpace(std::size_t n, std::vector<double> table,
                    std::vector<std::string> labels = {});

  static FiniteMetricSpace from_graph(const Graph& graph);
  static FiniteMetricSpace on_line(std::span<const double> coordinates);
  static FiniteMetricSpace from_function(std::size_t n,
                                         const std::function<double(PointId, PointId)>& dist,
                                         std::vector<std::string> labels = {});

  std::size_t size() const { return n_; }
  bool empty() const { return n_ == 0; }
  double distance(PointId a, PointId b) const { return table_[a * n_ + b]; }
  const std::vector<std::string>& labels() const { return labels_; }

  FiniteMetricSpace subspace(std::span<const PointId> ids) const;

  // O(n^3); run automatically on construction in debug builds.
  void validate_triangle_inequality() const;

 private:
  void validate_basic() const;

  std::size_t n_ = 0;
  std::vector<double> table_;
  std::vector<std::string> labels_;
};

struct QieConstants {
  double K = 1.0;
  double eps = 0.0;
  double C = 0.0;
};

enum class WitnessKind { qie_lower, qie_upper, not_coarse_onto, not_coarse_dense };

std::string to_string(WitnessKind kind);

struct Witness {
  WitnessKind kind = WitnessKind::qie_lower;
  std::vector<PointId> points;
  double violation = 0.0;
};

struct DensityCheck {
  bool dense = true;
  PointId farthest = 0;
  double farthest_distance = 0.0;
  std::optional<Witness> witness;
};

struct QieCheck {
  std::optional<QieConstants> constants;
  std::optional<Witness> witness;

  bool ok() const { return constants.has_value(); }
};

std::vector<std::vector<PointId>> coarse_components(const FiniteMetricSpace& space, double c);

// Smallest c for which the space is c-coarse connected (bottleneck of a
// minimum spanning tree); 0 for a single point.
double coarse_connectivity_constant(const FiniteMetricSpace& space);

DensityCheck is_coarse_dense(std::span<const PointId> subset, const FiniteMetricSpace& ambient,
                             double C);

double hausdorff_distance(std::span<const PointId> a, std::span<const PointId> b,
                          const FiniteMetricSpace& ambient);

// Pairwise check on n points given both distance functions. With constants
// the first violated pair (lexicographic) is returned as the witness; without,
// K is the max distortion ratio over pairs with d_X >= 1 and eps the smallest
// additive error making both inequalities hold.
QieCheck check_qie(std::size_t n, const std::function<double(PointId, PointId)>& dx,
                   const std::function<double(PointId, PointId)>& dy,
                   const std::optional<QieConstants>& constants = std::nullopt);

// f[i] is the image in Y of point i of X.
QieCheck verify_qie(std::span<const PointId> f, const FiniteMetricSpace& x,
                    const FiniteMetricSpace& y,
                    const std::optional<QieConstants>& constants = std::nullopt);

// verify_qie plus C-coarse density of the image in Y. With no constants the
// fitted C is the image's farthest-point distance.
QieCheck verify_qi(std::span<const PointId> f, const FiniteMetricSpace& x,
                   const FiniteMetricSpace& y,
                   const std::optional<QieConstants>& constants = std::nullopt);

std::vector<PointId> ball(const FiniteMetricSpace& space, PointId center, double radius);

std::size_t covering_number(const FiniteMetricSpace& space, PointId center, double radius,
                            double cover_radius);

}  // namespace qtreekit
