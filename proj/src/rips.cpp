#include "qtreekit/rips.hpp"

namespace qtreekit {

RipsGraph build_rips_graph(const FiniteMetricSpace& space, double r) {
  if (!(r > 0.0)) throw Error("Rips scale must be positive");
  if (space.empty()) throw Error("Rips graph of an empty space");
  Graph graph(space.size());
  for (PointId i = 0; i < space.size(); ++i) {
    for (PointId j = i + 1; j < space.size(); ++j) {
      const double d = space.distance(i, j);
      if (d > kTolerance && d <= r + kTolerance) graph.add_edge(i, j);
    }
  }
  return RipsGraph{space, r, std::move(graph)};
}

RipsReport verify_rips_qi(const FiniteMetricSpace& space, double r) {
  const RipsGraph rips = build_rips_graph(space, r);
  RipsReport report;
  report.r = r;
  report.connected = rips.graph.is_connected();
  if (!report.connected) return report;

  const auto graph_dist = rips.graph.all_distances();
  report.lower_exact = true;
  for (PointId a = 0; a < space.size() && report.lower_exact; ++a) {
    for (PointId b = a + 1; b < space.size(); ++b) {
      if (space.distance(a, b) > r * static_cast<double>(graph_dist[a][b]) + kTolerance) {
        report.lower_exact = false;
        break;
      }
    }
  }
  const QieCheck fit = check_qie(
      space.size(), [&](PointId a, PointId b) { return space.distance(a, b); },
      [&](PointId a, PointId b) { return static_cast<double>(graph_dist[a][b]); });
  report.fitted = fit.constants;
  return report;
}

std::vector<RipsReport> rips_sweep(const FiniteMetricSpace& space, const std::vector<double>& ladder) {
  std::vector<RipsReport> out;
  out.reserve(ladder.size());
  for (double r : ladder) out.push_back(verify_rips_qi(space, r));
  return out;
}

}  // namespace qtreekit
