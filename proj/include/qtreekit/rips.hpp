#pragma once

#include <vector>

#include "qtreekit/metric.hpp"

namespace qtreekit {

// Rips graph: the base points, with an edge wherever 0 < d(x, y) <= r.
// Vertex ids are the base PointIds.
struct RipsGraph {
  FiniteMetricSpace base;
  double r = 1.0;
  Graph graph;
};

RipsGraph build_rips_graph(const FiniteMetricSpace& space, double r);

struct RipsReport {
  double r = 0.0;
  bool connected = false;
  // d_X(a, b) <= r * d_Gamma(a, b) on every pair; false when disconnected.
  bool lower_exact = false;
  // Fitted constants of the inclusion X -> Gamma_r(X); only when connected.
  std::optional<QieConstants> fitted;
};

RipsReport verify_rips_qi(const FiniteMetricSpace& space, double r);

// One report per scale in the ladder (in ladder order).
std::vector<RipsReport> rips_sweep(const FiniteMetricSpace& space, const std::vector<double>& ladder);

}  // namespace qtreekit
