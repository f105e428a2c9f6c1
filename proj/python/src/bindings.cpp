#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qtreekit/busemann.hpp"
#include "qtreekit/corpus.hpp"
#include "qtreekit/rips.hpp"

namespace py = pybind11;
using namespace qtreekit;

namespace {

ActionArgs action_args(const std::string& name, const py::kwargs& kw) {
  ActionArgs a;
  a.name = name;
  for (const auto& [key, value] : kw) {
    const auto k = key.cast<std::string>();
    if (k == "k") a.k = value.cast<double>();
    else if (k == "primes") a.primes = value.cast<std::vector<int>>();
    else if (k == "arms") a.arms = value.cast<int>();
    else if (k == "word") a.word = value.cast<std::string>();
    else if (k == "t") a.t = value.cast<std::string>();
    else if (k == "base") a.base = value.cast<std::string>();
    else if (k == "qi") a.qi = value.cast<std::string>();
    else if (k == "graph") a.graph_path = value.cast<std::string>();
    else if (k == "gens") a.gens_path = value.cast<std::string>();
    else throw py::type_error("unknown action parameter '" + k + "'");
  }
  return a;
}

Graph graph_from_edges(std::size_t n, const std::vector<std::pair<PointId, PointId>>& edges) {
  Graph g(n);
  for (const auto& [u, v] : edges) g.add_edge(u, v);
  return g;
}

py::dict classify(const std::string& action, std::size_t word_radius, double R,
                  const py::kwargs& kw) {
  const QuasiActionSpec spec = make_named_action(action_args(action, kw));
  const TrichotomyReport r = classify_trichotomy(spec, spec.basepoint, word_radius, R);
  py::dict out;
  out["verdict"] = to_string(r.verdict);
  out["good"] = r.diagnosis.good;
  std::vector<double> cs;
  for (const auto& level : r.diagnosis.levels) cs.push_back(level.c);
  out["c"] = cs;
  out["orbit_points"] = r.orbit_points;
  out["rips_scale"] = r.rips_scale;
  if (r.ends) out["end_counts"] = r.ends->counts;
  if (spec.kind == ActionKind::genuine && spec.target->is_tree()) {
    out["hyperbolic_type"] = to_string(
        classify_hyperbolic_type_tree(spec, word_ball(spec.generators_for(word_radius), 2),
                                      spec.basepoint, word_radius)
            .type);
  }
  return out;
}

py::dict element(const std::string& action, const std::string& g, std::size_t N,
                 const py::kwargs& kw) {
  const QuasiActionSpec spec = make_named_action(action_args(action, kw));
  const ElementTypeReport r = element_type(spec, Word::parse(g), spec.basepoint, N);
  py::dict out;
  out["verdict"] = to_string(r.verdict);
  out["slope"] = r.slope;
  out["samples"] = r.samples;
  if (r.oracle) out["oracle"] = to_string(*r.oracle);
  return out;
}

py::dict reduce_line(const std::string& action, std::size_t radius, const py::kwargs& kw) {
  const QuasiActionSpec spec = make_named_action(action_args(action, kw));
  const LineReduction r = classify_line_reduction(spec, radius);
  py::dict out;
  out["verdict"] = to_string(r.verdict);
  out["theta"] = r.theta;
  out["residual"] = r.residual;
  out["simplicial"] = r.simplicial;
  if (r.bavard) {
    out["bavard"] = py::make_tuple(r.bavard->sup, r.bavard->g.to_string(), r.bavard->h.to_string());
  }
  return out;
}

double busemann(const std::string& action, const std::string& l, const std::string& g,
                const py::kwargs& kw) {
  const QuasiActionSpec spec = make_named_action(action_args(action, kw));
  return busemann_value(spec, Word::parse(l), Word::parse(g), spec.basepoint).value;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  py::register_exception<Error>(m, "QtreekitError", PyExc_ValueError);

  m.def("reduce_word", [](const std::string& w) { return Word::parse(w).to_string(); });
  m.def("word_ball", [](int generators, std::size_t radius) {
    std::vector<std::string> out;
    for (const Word& w : word_ball(generators, radius)) out.push_back(w.to_string());
    return out;
  });

  m.def("coarse_components", [](const std::vector<double>& xs, double c) {
    return coarse_components(FiniteMetricSpace::on_line(xs), c);
  }, py::arg("coordinates"), py::arg("c"));
  m.def("rips_edges", [](const std::vector<double>& xs, double r) {
    return build_rips_graph(FiniteMetricSpace::on_line(xs), r).graph.edges();
  }, py::arg("coordinates"), py::arg("r"));
  m.def("convex_closure", [](std::size_t n, const std::vector<std::pair<PointId, PointId>>& edges,
                             const std::vector<PointId>& subset) {
    return convex_closure(SimplicialTree(graph_from_edges(n, edges)), subset).vertices;
  }, py::arg("n"), py::arg("edges"), py::arg("subset"));
  m.def("end_counts", [](std::size_t n, const std::vector<std::pair<PointId, PointId>>& edges,
                         PointId x0, double R, std::vector<double> ladder) {
    const EndProfile p = end_profile(graph_from_edges(n, edges), x0, R, std::move(ladder));
    return py::make_tuple(p.counts, to_string(p.verdict));
  }, py::arg("n"), py::arg("edges"), py::arg("x0"), py::arg("R"), py::arg("ladder"));

  m.def("named_actions", &named_actions);
  m.def("classify", &classify, py::arg("action"), py::arg("word_radius") = 5, py::arg("R") = 12.0);
  m.def("element_type", &element, py::arg("action"), py::arg("element"), py::arg("N") = 32);
  m.def("reduce_line", &reduce_line, py::arg("action"), py::arg("radius") = 4);
  m.def("busemann_value", &busemann, py::arg("action"), py::arg("l"), py::arg("g"));

  m.def("brooks", [](const std::string& w, const std::string& g) {
    return brooks(Word::parse(w))(Word::parse(g));
  }, py::arg("word"), py::arg("g"));
  m.def("brooks_defect", [](const std::string& w, std::size_t radius) {
    return fit_defect(brooks(Word::parse(w)), radius).defect;
  }, py::arg("word"), py::arg("radius") = 3);
  m.def("homogenise", [](const std::string& w, const std::string& g, long N) {
    return homogenise(brooks(Word::parse(w)), Word::parse(g), N);
  }, py::arg("word"), py::arg("g"), py::arg("N") = kHomogenisationBudget);
  m.def("bavard", [](const std::string& w, std::size_t radius) {
    const BavardFit f = fit_bavard(homogenised(brooks(Word::parse(w))), radius);
    return py::make_tuple(f.sup, f.g.to_string(), f.h.to_string());
  }, py::arg("word"), py::arg("radius") = 3);
}
