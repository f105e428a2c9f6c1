// qtreekit command line. Every subcommand builds a flat report; --kv prints
// it as key=value lines.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qtreekit/busemann.hpp"
#include "qtreekit/corpus.hpp"
#include "qtreekit/io.hpp"
#include "qtreekit/rips.hpp"
#include "qtreekit/trees.hpp"

using namespace qtreekit;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInconclusive = 2;

std::string num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;  // no "-0"
  std::ostringstream out;
  out << std::setprecision(12) << v;
  return out.str();
}

std::string flag(bool b) { return b ? "true" : "false"; }

template <typename T>
std::string join(const std::vector<T>& xs) {
  std::ostringstream out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out << ',';
    if constexpr (std::is_floating_point_v<T>) {
      out << num(xs[i]);
    } else {
      out << xs[i];
    }
  }
  return out.str();
}

std::string join_words(const std::vector<Word>& ws) {
  std::vector<std::string> s;
  for (const Word& w : ws) s.push_back(w.to_string());
  return join(s);
}

class Report {
 public:
  void add(const std::string& key, const std::string& value) { rows_.emplace_back(key, value); }
  void add(const std::string& key, const char* value) { add(key, std::string(value)); }
  void add(const std::string& key, double value) { add(key, num(value)); }
  void add(const std::string& key, std::size_t value) { add(key, std::to_string(value)); }
  void add(const std::string& key, int value) { add(key, std::to_string(value)); }
  void add(const std::string& key, long value) { add(key, std::to_string(value)); }
  void add(const std::string& key, bool value) { add(key, flag(value)); }

  // (K, eps, C, ...) with their provenance.
  void constants(const std::string& prefix, const QieConstants& c, const std::string& provenance) {
    add(prefix + ".K", c.K);
    add(prefix + ".eps", c.eps);
    add(prefix + ".C", c.C);
    add(prefix + ".provenance", provenance);
  }

  void print(std::ostream& out, bool kv) const {
    std::size_t width = 0;
    for (const auto& row : rows_) width = std::max(width, row.first.size());
    for (const auto& [key, value] : rows_) {
      if (kv) {
        out << key << '=' << value << '\n';
      } else {
        out << std::left << std::setw(static_cast<int>(width)) << key << "  " << value << '\n';
      }
    }
  }

 private:
  std::vector<std::pair<std::string, std::string>> rows_;
};

struct Options {
  bool kv = false;
  std::uint64_t seed = 0;
  std::string graph;
  std::string subset;
  double r = 1.0;
  std::string ladder;
  double c = -1.0;
  double C = 1.0;
  std::size_t x0 = 0;
  double R = 12.0;
  std::size_t samples = 0;
  std::size_t word_radius = 5;
  std::size_t radius = 4;
  std::size_t N = 32;
  std::size_t ray_steps = kRaySteps;
  std::size_t qa_radius = 3;
  std::size_t points = 12;
  std::string word = "ab";
  std::string element = "a";
  std::string l = "a";
  std::string t;
  std::string qm = "brooks";
  std::string values = "1";
  ActionArgs action;
  std::string primes = "2,3,5";
};

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    if (item.empty()) continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw Error("cannot parse number '" + item + "'");
    }
    if (used != item.size()) throw Error("cannot parse number '" + item + "'");
    out.push_back(v);
  }
  return out;
}

std::vector<PointId> parse_ids(const std::string& text, std::size_t n) {
  std::vector<PointId> out;
  for (double v : parse_doubles(text)) {
    if (v < 0 || v != std::floor(v) || v >= static_cast<double>(n)) {
      throw Error("vertex id " + num(v) + " out of range 0.." + std::to_string(n - 1));
    }
    out.push_back(static_cast<PointId>(v));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.empty()) throw Error("empty vertex subset");
  return out;
}

Graph load_graph(const Options& o) {
  if (o.graph.empty()) throw Error("--graph is required");
  return ingest_graph(o.graph);
}

QuasiActionSpec load_action(const Options& o) {
  ActionArgs args = o.action;
  std::vector<int> primes;
  for (double p : parse_doubles(o.primes)) primes.push_back(static_cast<int>(p));
  args.primes = primes;
  return make_named_action(args);
}

void echo_action(Report& rep, const QuasiActionSpec& spec) {
  rep.add("action.name", spec.name);
  rep.add("action.kind", to_string(spec.kind));
  rep.add("action.rank", spec.rank);
  rep.add("action.target", spec.target->name());
  rep.add("action.basepoint", format_point(spec.basepoint));
  if (spec.declared) rep.constants("action.declared", *spec.declared, "declared");
}

// Seeded sample of target points near the basepoint.
std::vector<Point> sample_points(const QuasiActionSpec& spec, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Point> out{spec.basepoint};
  if (spec.target->is_line()) {
    std::uniform_real_distribution<double> u(-50.0, 50.0);
    while (out.size() < count) out.emplace_back(std::round(u(rng) * 1000.0) / 1000.0);
    return out;
  }
  std::vector<Point> ball = materialise_ball(*spec.target, spec.basepoint, 3).points;
  std::shuffle(ball.begin() + 1, ball.end(), rng);
  for (std::size_t i = 1; i < ball.size() && out.size() < count; ++i) out.push_back(ball[i]);
  return out;
}

int cmd_rips(const Options& o, Report& rep) {
  const Graph graph = load_graph(o);
  const FiniteMetricSpace space = FiniteMetricSpace::from_graph(graph);
  std::vector<double> ladder = o.ladder.empty() ? std::vector<double>{o.r} : parse_doubles(o.ladder);
  rep.add("input.vertices", graph.vertex_count());
  rep.add("input.edges", graph.edge_count());
  rep.add("input.c", coarse_connectivity_constant(space));
  for (const RipsReport& r : rips_sweep(space, ladder)) {
    const std::string p = "rips[" + num(r.r) + "]";
    rep.add(p + ".edges", build_rips_graph(space, r.r).graph.edge_count());
    rep.add(p + ".connected", r.connected);
    rep.add(p + ".lower_exact", r.lower_exact);
    if (r.fitted) rep.constants(p + ".fit", *r.fitted, "fitted");
  }
  return kExitOk;
}

int cmd_coarse(const Options& o, Report& rep) {
  const Graph graph = load_graph(o);
  const FiniteMetricSpace space = FiniteMetricSpace::from_graph(graph);
  std::vector<PointId> subset(space.size());
  std::iota(subset.begin(), subset.end(), PointId{0});
  if (!o.subset.empty()) subset = parse_ids(o.subset, space.size());
  const FiniteMetricSpace sub = space.subspace(subset);
  const double constant = coarse_connectivity_constant(sub);
  const double c = o.c >= 0 ? o.c : constant;
  rep.add("coarse.subset_size", subset.size());
  rep.add("coarse.c", c);
  rep.add("coarse.connectivity_constant", constant);
  rep.add("coarse.components", coarse_components(sub, c).size());
  const DensityCheck density = is_coarse_dense(subset, space, o.C);
  rep.add("density.C", o.C);
  rep.add("density.dense", density.dense);
  rep.add("density.farthest", density.farthest);
  rep.add("density.farthest_distance", density.farthest_distance);
  return kExitOk;
}

int cmd_cclosure(const Options& o, Report& rep) {
  const SimplicialTree tree(load_graph(o));
  const std::vector<PointId> subset = parse_ids(o.subset, tree.size());
  const double c = o.c >= 0 ? o.c
                            : coarse_connectivity_constant(
                                  FiniteMetricSpace::from_graph(tree.graph()).subspace(subset));
  const Subtree closure = convex_closure(tree, subset);
  const ClosureDensityReport density = verify_closure_density(tree, subset, c);
  rep.add("closure.subset_size", subset.size());
  rep.add("closure.size", closure.vertices.size());
  rep.add("closure.vertices", join(closure.vertices));
  rep.add("density.c", c);
  rep.add("density.precondition", density.precondition_ok);
  rep.add("density.bound", density.bound);
  rep.add("density.achieved", density.achieved);
  rep.add("density.dense", density.dense);
  if (!density.diagnostic.empty()) rep.add("density.diagnostic", density.diagnostic);
  return kExitOk;
}

int cmd_bottleneck(const Options& o, Report& rep) {
  const Graph graph = load_graph(o);
  const std::size_t n = graph.vertex_count();
  const bool exhaustive = o.samples == 0;
  const auto pairs = exhaustive ? all_pairs(n) : sample_pairs(n, o.samples, o.seed);
  const BottleneckResult result = bottleneck_check(graph, o.C, pairs);
  rep.add("budget.seed", static_cast<std::size_t>(o.seed));
  rep.add("budget.pairs", exhaustive ? std::string("all") : std::to_string(o.samples));
  rep.add("bottleneck.C", o.C);
  rep.add("bottleneck.pass", result.pass);
  rep.add("bottleneck.pairs_checked", result.pairs_checked);
  if (result.witness) {
    rep.add("bottleneck.witness.x", result.witness->x);
    rep.add("bottleneck.witness.y", result.witness->y);
    rep.add("bottleneck.witness.z", result.witness->z);
    rep.add("bottleneck.witness.detour", join(result.witness->detour));
  }
  return kExitOk;
}

int cmd_ends(const Options& o, Report& rep) {
  const Graph graph = load_graph(o);
  std::vector<double> ladder = parse_doubles(o.ladder);
  if (ladder.empty()) {
    for (double b = 0; b <= o.R / 2.0; b += 1.0) ladder.push_back(b);
  }
  const EndProfile profile = end_profile(graph, o.x0, o.R, ladder);
  rep.add("ends.x0", o.x0);
  rep.add("ends.R", o.R);
  rep.add("ends.ladder", join(profile.ladder));
  rep.add("ends.counts", join(profile.counts));
  rep.add("ends.verdict", to_string(profile.verdict));
  return profile.verdict == EndVerdict::unstable ? kExitInconclusive : kExitOk;
}

int cmd_tree_approx(const Options& o, Report& rep) {
  const Graph graph = load_graph(o);
  std::vector<std::pair<PointId, PointId>> pairs;
  if (o.samples > 0) pairs = sample_pairs(graph.vertex_count(), o.samples, o.seed);
  const ApproximatingTree approx = approximating_tree(graph, o.x0, o.C, pairs);
  rep.add("budget.seed", static_cast<std::size_t>(o.seed));
  rep.add("approx.C", o.C);
  rep.add("approx.nodes", approx.tree.size());
  rep.add("approx.tree_edges", approx.tree.graph().edge_count());
  rep.add("approx.vertex_map", join(approx.vertex_map));
  rep.constants("approx.fit", approx.fitted, "fitted");
  rep.add("approx.warnings", approx.warnings.size());
  for (std::size_t i = 0; i < approx.warnings.size(); ++i) {
    rep.add("approx.warning[" + std::to_string(i) + "]", approx.warnings[i]);
  }
  return kExitOk;
}

int cmd_orbit(const Options& o, Report& rep) {
  const QuasiActionSpec spec = load_action(o);
  echo_action(rep, spec);
  std::vector<std::size_t> radii;
  for (std::size_t r = 1; r <= o.word_radius; ++r) radii.push_back(r);
  const OrbitDiagnosis diag = orbit_diagnosis(spec, spec.basepoint, radii);
  rep.add("budget.word_radius", o.word_radius);
  for (const OrbitLevel& level : diag.levels) {
    const std::string p = "orbit[" + std::to_string(level.radius) + "]";
    rep.add(p + ".points", level.points);
    rep.add(p + ".c", level.c);
    rep.add(p + ".diameter", level.diameter);
    rep.add(p + ".saturated", level.saturated);
  }
  for (const auto& [R, count] : diag.properness) {
    rep.add("properness[" + num(R) + "]", count);
  }
  rep.add("orbit.quality", diag.good ? "good" : "bad");
  rep.add("orbit.bounded", diag.bounded);
  return kExitOk;
}

int cmd_verify_qa(const Options& o, Report& rep) {
  const QuasiActionSpec spec = load_action(o);
  echo_action(rep, spec);
  const std::vector<Point> points = sample_points(spec, o.points, o.seed);
  const QuasiActionFit fit = verify_quasi_action(spec, o.qa_radius, points);
  rep.add("budget.word_radius", o.qa_radius);
  rep.add("budget.points", points.size());
  rep.add("budget.seed", static_cast<std::size_t>(o.seed));
  rep.add("qa.words", fit.words);
  rep.constants("qa.fit", fit.fitted, "fitted");
  rep.add("qa.identity_deviation", fit.identity_deviation);
  rep.add("qa.composition_deviation", fit.composition_deviation);
  if (!fit.composition_witness.empty()) rep.add("qa.composition_witness", fit.composition_witness);
  return kExitOk;
}

int cmd_element_type(const Options& o, Report& rep) {
  const QuasiActionSpec spec = load_action(o);
  echo_action(rep, spec);
  const ElementTypeReport r = element_type(spec, Word::parse(o.element), spec.basepoint, o.N);
  rep.add("budget.N", o.N);
  rep.add("element.word", r.element.to_string());
  rep.add("element.verdict", to_string(r.verdict));
  rep.add("element.slope", r.slope);
  if (r.verdict == ElementType::loxodromic) {
    rep.add("element.fit.K", r.K_fit);
    rep.add("element.fit.eps", r.eps_fit);
    rep.add("element.fit.provenance", "fitted");
  }
  if (r.min_displacement) {
    rep.add("oracle.min_displacement", *r.min_displacement);
    rep.add("oracle.verdict", to_string(*r.oracle));
  }
  return r.verdict == ElementType::indeterminate ? kExitInconclusive : kExitOk;
}

int cmd_classify(const Options& o, Report& rep) {
  const QuasiActionSpec spec = load_action(o);
  echo_action(rep, spec);
  const TrichotomyReport tri =
      classify_trichotomy(spec, spec.basepoint, o.word_radius, o.R, parse_doubles(o.ladder));
  rep.add("budget.word_radius", o.word_radius);
  rep.add("budget.R", o.R);
  rep.add("orbit.quality", tri.diagnosis.good ? "good" : "bad");
  rep.add("orbit.c", join([&] {
            std::vector<double> cs;
            for (const OrbitLevel& l : tri.diagnosis.levels) cs.push_back(l.c);
            return cs;
          }()));
  rep.add("trichotomy.orbit_points", tri.orbit_points);
  rep.add("trichotomy.rips_scale", tri.rips_scale);
  rep.add("trichotomy.effective_R", tri.effective_radius);
  rep.add("trichotomy.saturated", tri.saturated);
  if (tri.ends) {
    rep.add("trichotomy.ladder", join(tri.ends->ladder));
    rep.add("trichotomy.end_counts", join(tri.ends->counts));
  }
  rep.add("trichotomy.verdict", to_string(tri.verdict));
  if (spec.kind == ActionKind::genuine && (spec.target->is_tree() || spec.target->is_line())) {
    const HyperbolicTypeReport h = classify_hyperbolic_type_tree(
        spec, word_ball(spec.generators_for(2), 2), spec.basepoint);
    rep.add("hyperbolic.type", to_string(h.type));
    rep.add("hyperbolic.loxodromics", h.loxodromics.size());
    if (!h.swapping.empty()) rep.add("hyperbolic.swapping", join_words(h.swapping));
  }
  return tri.verdict == Trichotomy::inconclusive ? kExitInconclusive : kExitOk;
}

int cmd_qm(const Options& o, Report& rep) {
  QuasiMorphism f;
  if (o.qm == "brooks") {
    f = brooks(Word::parse(o.word));
  } else if (o.qm == "hom") {
    f = homomorphism(parse_doubles(o.values));
  } else {
    throw Error("unknown quasi-morphism '" + o.qm + "' (expected brooks or hom)");
  }
  const QuasiMorphism B = homogenised(f);
  const Word g = Word::parse(o.element);
  rep.add("qm.name", f.name);
  rep.add("qm.kind", to_string(f.kind));
  rep.add("budget.radius", o.radius);
  rep.add("budget.N", kHomogenisationBudget);
  const DefectFit D = fit_defect(f, o.radius);
  rep.add("qm.D", D.defect);
  rep.add("qm.D.provenance", "fitted");
  rep.add("qm.D.witness", D.g.to_string() + " " + D.h.to_string());
  rep.add("qm.homogenise.g", g.to_string());
  rep.add("qm.homogenise.value", homogenise(f, g, kHomogenisationBudget));
  rep.add("qm.homogenise.value_2N", homogenise(f, g, 2 * kHomogenisationBudget));
  rep.add("qm.homogenised.D", fit_defect(B, o.radius).defect);
  const BavardFit bavard = fit_bavard(B, o.radius);
  rep.add("qm.bavard.sup", bavard.sup);
  if (bavard.sup > 0) rep.add("qm.bavard.witness", bavard.g.to_string() + " " + bavard.h.to_string());
  rep.add("qm.homomorphism", bavard.sup <= kLineTolerance && D.defect <= kLineTolerance);
  return kExitOk;
}

int cmd_busemann(const Options& o, Report& rep) {
  const QuasiActionSpec spec = load_action(o);
  echo_action(rep, spec);
  const Word l = Word::parse(o.l);
  const Point& x0 = spec.basepoint;
  const HyperbolicType type = require_lineal(spec, l, x0);
  const std::size_t N = std::max<std::size_t>(o.ray_steps, 4);
  rep.add("budget.N", N);
  rep.add("budget.M", kBusemannPowers);
  rep.add("budget.word_radius", o.radius);
  rep.add("busemann.l", l.to_string());
  rep.add("busemann.type", to_string(type));
  const RaySequence seq(spec, l, x0, N);
  const EndKey plus = end_toward(spec, Word(), l, 1, x0);
  std::vector<Word> preserving;
  for (const Word& g : word_ball(spec.generators_for(2), 2)) {
    if (type == HyperbolicType::lineal_plus || end_toward(spec, g, l, 1, x0) == plus) {
      preserving.push_back(g);
    }
  }
  for (int i = 1; i <= spec.rank; ++i) {
    const Word g = Word::generator(i);
    if (std::find(preserving.begin(), preserving.end(), g) == preserving.end()) continue;
    const BusemannValue b = busemann_value(seq, g);
    rep.add("busemann.B[" + g.to_string() + "]", b.value);
    rep.add("busemann.B[" + g.to_string() + "].stabilised", b.stabilised);
  }
  const SymmetryReport sym = verify_busemann_symmetry(spec, l, preserving, x0, N);
  rep.add("symmetry.homogenised_max", sym.homogenised_max);
  rep.add("symmetry.raw_max", sym.raw_max);
  rep.add("symmetry.L", sym.L);
  rep.add("symmetry.L.provenance", "fitted");
  rep.add("symmetry.raw_within_6L", sym.raw_within_6L);
  if (type == HyperbolicType::lineal_plus) {
    const LineReductionMap map = line_reduction_map(spec, l, x0, o.radius, N);
    rep.add("reduction.pairs", map.pairs);
    rep.add("reduction.L", map.L);
    rep.add("reduction.upper_excess", map.upper_excess);
    rep.add("reduction.lower_slack", map.lower_slack);
    rep.add("reduction.M", map.equivariance.M);
    rep.add("reduction.M.provenance", "fitted");
    rep.add("reduction.onto", map.onto);
    rep.add("reduction.perturbed_basepoint", map.perturbed);
    rep.add("reduction.stabilised", map.stabilised);
  } else {
    if (o.t.empty()) throw Error("lineal- action: pass --t with an end-swapping element");
    const DihedralReduction red = dihedral_reduction(spec, Word::parse(o.t), l, x0, o.radius);
    rep.add("dihedral.t", red.spec.t.to_string());
    rep.add("dihedral.antisymmetry", red.antisymmetry.antisymmetry);
    rep.add("dihedral.square_max", red.antisymmetry.square_max);
    rep.add("dihedral.M", red.equivariance.M);
    rep.add("dihedral.M.provenance", "fitted");
    rep.add("dihedral.coset_elliptic", std::to_string(red.coset_elliptic) + "/" +
                                           std::to_string(red.coset_sampled));
  }
  return kExitOk;
}

int cmd_reduce_line(const Options& o, Report& rep) {
  const QuasiActionSpec spec = load_action(o);
  echo_action(rep, spec);
  const LineReduction red = classify_line_reduction(spec, o.radius);
  rep.add("budget.radius", o.radius);
  rep.add("budget.N", red.budget);
  rep.add("reduction.theta", join(red.theta));
  rep.add("reduction.residual", red.residual);
  rep.add("reduction.kernel_matches", red.kernel_matches);
  rep.add("reduction.elliptic_sampled", red.elliptic.size());
  if (red.bavard) {
    rep.add("reduction.bavard.g", red.bavard->g.to_string());
    rep.add("reduction.bavard.h", red.bavard->h.to_string());
    rep.add("reduction.bavard.value", red.bavard->sup);
  }
  rep.add("reduction.simplicial", red.simplicial);
  rep.add("reduction.verdict", to_string(red.verdict));
  return red.verdict == LineReductionVerdict::undecided ? kExitInconclusive : kExitOk;
}

void add_graph(CLI::App* cmd, Options& o) {
  cmd->add_option("--graph", o.graph, "graph file")->required();
}

void add_action(CLI::App* cmd, Options& o) {
  cmd->add_option("--action", o.action.name, "named action")->required();
  cmd->add_option("--k", o.action.k, "translation length for zn-line/zn-tree");
  cmd->add_option("--primes", o.primes, "cyclic orders for coset-tree/finite-coset");
  cmd->add_option("--arms", o.action.arms, "arms for finite-star");
  cmd->add_option("--word", o.action.word, "Brooks word for brooks-line/dihedral-qm");
  cmd->add_option("--flip", o.action.t, "element t for dihedral-qm");
  cmd->add_option("--base", o.action.base, "base action for conjugated");
  cmd->add_option("--qi", o.action.qi, "quasi-isometry for conjugated: fold or hair");
  cmd->add_option("--graph", o.action.graph_path, "graph file for graph-action");
  cmd->add_option("--gens", o.action.gens_path, "generator-map file for graph-action");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coarse geometry of group actions on trees and lines"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  long long seed = 0;
  app.add_flag("--kv", o.kv, "key=value output");
  app.add_option("--seed", seed, "random seed (QTREEKIT_SEED overrides)");

  using Handler = int (*)(const Options&, Report&);
  std::vector<std::pair<CLI::App*, Handler>> commands;

  auto* rips = app.add_subcommand("rips", "Rips graph of a graph metric and its quasi-isometry");
  add_graph(rips, o);
  rips->add_option("--r", o.r, "scale");
  rips->add_option("--ladder", o.ladder, "comma-separated scales");
  commands.emplace_back(rips, cmd_rips);

  auto* coarse = app.add_subcommand("coarse", "coarse components and density of a subset");
  add_graph(coarse, o);
  coarse->add_option("--subset", o.subset, "comma-separated vertex ids (default all)");
  coarse->add_option("--c", o.c, "coarse scale (default: the connectivity constant)");
  coarse->add_option("--C", o.C, "density constant");
  commands.emplace_back(coarse, cmd_coarse);

  auto* cclosure = app.add_subcommand("cclosure", "convex closure of a subset of a tree");
  add_graph(cclosure, o);
  cclosure->add_option("--subset", o.subset, "comma-separated vertex ids")->required();
  cclosure->add_option("--c", o.c, "coarse scale (default: the connectivity constant)");
  commands.emplace_back(cclosure, cmd_cclosure);

  auto* bottleneck = app.add_subcommand("bottleneck", "bottleneck criterion at C");
  add_graph(bottleneck, o);
  bottleneck->add_option("--C", o.C, "bottleneck constant");
  bottleneck->add_option("--samples", o.samples, "sampled pairs (0: all pairs)");
  commands.emplace_back(bottleneck, cmd_bottleneck);

  auto* ends = app.add_subcommand("ends", "end profile of a ball");
  add_graph(ends, o);
  ends->add_option("--x0", o.x0, "centre vertex");
  ends->add_option("--R", o.R, "ball radius");
  ends->add_option("--ladder", o.ladder, "comma-separated inner radii <= R/2");
  commands.emplace_back(ends, cmd_ends);

  auto* approx = app.add_subcommand("tree-approx", "approximating tree of a bottleneck graph");
  add_graph(approx, o);
  approx->add_option("--x0", o.x0, "root vertex");
  approx->add_option("--C", o.C, "bottleneck constant");
  approx->add_option("--samples", o.samples, "sampled pairs (0: default pair set)");
  commands.emplace_back(approx, cmd_tree_approx);

  auto* orbit = app.add_subcommand("orbit", "quasi-orbit diagnosis");
  add_action(orbit, o);
  orbit->add_option("--word-radius", o.word_radius, "largest word radius");
  commands.emplace_back(orbit, cmd_orbit);

  auto* qa = app.add_subcommand("verify-qa", "fit quasi-action constants");
  add_action(qa, o);
  qa->add_option("--word-radius", o.qa_radius, "word radius");
  qa->add_option("--points", o.points, "sampled points");
  commands.emplace_back(qa, cmd_verify_qa);

  auto* et = app.add_subcommand("element-type", "elliptic or loxodromic");
  add_action(et, o);
  et->add_option("--element", o.element, "word");
  et->add_option("--N", o.N, "powers sampled");
  commands.emplace_back(et, cmd_element_type);

  auto* classify = app.add_subcommand("classify", "trichotomy and hyperbolic type");
  add_action(classify, o);
  classify->add_option("--word-radius", o.word_radius, "word radius");
  classify->add_option("--R", o.R, "end-profile radius");
  classify->add_option("--ladder", o.ladder, "comma-separated inner radii");
  commands.emplace_back(classify, cmd_classify);

  auto* qm = app.add_subcommand("qm", "defect, homogenisation and Bavard sup");
  qm->add_option("--qm", o.qm, "brooks or hom");
  qm->add_option("--word", o.word, "Brooks word");
  qm->add_option("--values", o.values, "homomorphism generator values");
  qm->add_option("--element", o.element, "element to homogenise");
  qm->add_option("--radius", o.radius, "word radius");
  commands.emplace_back(qm, cmd_qm);

  auto* busemann = app.add_subcommand("busemann", "Busemann values, symmetry and reduction");
  add_action(busemann, o);
  busemann->add_option("--l", o.l, "loxodromic element");
  busemann->add_option("--t", o.t, "end-swapping element (lineal- actions)");
  busemann->add_option("--radius", o.radius, "word radius");
  busemann->add_option("--N", o.ray_steps, "ray steps");
  commands.emplace_back(busemann, cmd_busemann);

  auto* reduce = app.add_subcommand("reduce-line", "reduce a line quasi-action to an isometric one");
  add_action(reduce, o);
  reduce->add_option("--radius", o.radius, "word radius");
  commands.emplace_back(reduce, cmd_reduce_line);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (const char* env = std::getenv("QTREEKIT_SEED")) {
      try {
        seed = std::stoll(env);
      } catch (const std::exception&) {
        throw Error(std::string("QTREEKIT_SEED is not an integer: ") + env);
      }
    }
    if (seed < 0) throw Error("seed must be non-negative");
    o.seed = static_cast<std::uint64_t>(seed);
    for (const auto& [cmd, handler] : commands) {
      if (!cmd->parsed()) continue;
      Report rep;
      rep.add("command", cmd->get_name());
      const int status = handler(o, rep);
      rep.add("status", status == kExitOk ? "ok" : "inconclusive");
      rep.print(std::cout, o.kv);
      return status;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
