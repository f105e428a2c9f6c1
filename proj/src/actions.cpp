#include "qtreekit/actions.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "qtreekit/rips.hpp"

namespace qtreekit {

std::string to_string(ActionKind kind) {
  return kind == ActionKind::genuine ? "genuine-action" : "quasi-action";
}

int QuasiActionSpec::generators_for(std::size_t radius) const {
  return generators_at_radius ? std::min(rank, generators_at_radius(radius)) : rank;
}

QuasiActionSpec make_genuine_action(std::string name, int rank,
                                    std::shared_ptr<const Space> target, GeneratorMap generator,
                                    Point basepoint) {
  QuasiActionSpec spec;
  spec.name = std::move(name);
  spec.rank = rank;
  spec.target = std::move(target);
  spec.kind = ActionKind::genuine;
  spec.declared = QieConstants{1.0, 0.0, 0.0};
  spec.basepoint = std::move(basepoint);
  spec.evaluator = [generator = std::move(generator)](const Word& g, const Point& x) {
    Point y = x;
    const auto& letters = g.letters();
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) y = generator(*it, y);
    return y;
  };
  return spec;
}

QuasiActionSpec make_quasi_action(std::string name, int rank, std::shared_ptr<const Space> target,
                                  Evaluator evaluator, Point basepoint,
                                  std::optional<QieConstants> declared) {
  QuasiActionSpec spec;
  spec.name = std::move(name);
  spec.rank = rank;
  spec.target = std::move(target);
  spec.kind = ActionKind::quasi;
  spec.evaluator = std::move(evaluator);
  spec.basepoint = std::move(basepoint);
  spec.declared = declared;
  return spec;
}

Point apply(const QuasiActionSpec& spec, const Word& g, const Point& x) {
  if (!spec.target->contains(x)) {
    throw Error("point " + format_point(x) + " is not in " + spec.target->name());
  }
  for (int l : g.letters()) {
    if (std::abs(l) > spec.rank) {
      throw Error("word " + g.to_string() + " uses a generator outside rank " +
                  std::to_string(spec.rank));
    }
  }
  return spec.evaluator(g, x);
}

QuasiActionSpec conjugate_quasi_action(const QuasiActionSpec& alpha, const QuasiInversePair& pair) {
  if (!pair.q || !pair.r || !pair.target) throw Error("quasi-inverse pair is incomplete");
  if (pair.x_sample.empty() || pair.y_sample.empty()) {
    throw Error("quasi-inverse pair must be verified on non-empty samples");
  }
  for (const Point& x : pair.x_sample) {
    const double d = alpha.target->distance(pair.r(pair.q(x)), x);
    if (d > pair.bound + kTolerance) {
      throw Error("r(q(x)) is " + std::to_string(d) + " from x at " + format_point(x) +
                  "; pair is not verified");
    }
  }
  for (const Point& y : pair.y_sample) {
    const double d = pair.target->distance(pair.q(pair.r(y)), y);
    if (d > pair.bound + kTolerance) {
      throw Error("q(r(y)) is " + std::to_string(d) + " from y at " + format_point(y) +
                  "; pair is not verified");
    }
  }
  QuasiActionSpec beta;
  beta.name = alpha.name + "^conj";
  beta.rank = alpha.rank;
  beta.target = pair.target;
  beta.kind = ActionKind::quasi;
  beta.basepoint = pair.q(alpha.basepoint);
  beta.generators_at_radius = alpha.generators_at_radius;
  beta.evaluator = [alpha, q = pair.q, r = pair.r](const Word& g, const Point& y) {
    return q(alpha.evaluator(g, r(y)));
  };
  return beta;
}

QuasiActionFit verify_quasi_action(const QuasiActionSpec& spec, std::size_t word_radius,
                                   const std::vector<Point>& point_sample) {
  if (point_sample.empty()) throw Error("verify_quasi_action needs sample points");
  const Space& X = *spec.target;
  const std::vector<Word> words = word_ball(spec.generators_for(word_radius), word_radius);
  QuasiActionFit fit;
  fit.words = words.size();
  fit.points = point_sample.size();

  for (const Point& x : point_sample) {
    fit.identity_deviation = std::max(fit.identity_deviation, X.distance(apply(spec, Word(), x), x));
  }

  double K = 1.0;
  double eps = 0.0;
  std::vector<std::vector<Point>> images(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (const Point& x : point_sample) images[i].push_back(apply(spec, words[i], x));
    const QieCheck check = check_qie(
        point_sample.size(),
        [&](PointId a, PointId b) { return X.distance(point_sample[a], point_sample[b]); },
        [&](PointId a, PointId b) { return X.distance(images[i][a], images[i][b]); });
    K = std::max(K, check.constants->K);
    eps = std::max(eps, check.constants->eps);
  }

  for (std::size_t i = 0; i < words.size(); ++i) {
    for (std::size_t j = 0; j < words.size(); ++j) {
      const Word gh = words[i] * words[j];
      for (std::size_t k = 0; k < point_sample.size(); ++k) {
        const Point lhs = apply(spec, words[i], images[j][k]);
        const Point rhs = apply(spec, gh, point_sample[k]);
        const double d = X.distance(lhs, rhs);
        if (d > fit.composition_deviation) {
          fit.composition_deviation = d;
          fit.composition_witness = words[i].to_string() + " " + words[j].to_string() + " " +
                                    format_point(point_sample[k]);
        }
      }
    }
  }
  fit.fitted = QieConstants{K, eps, std::max(fit.identity_deviation, fit.composition_deviation)};
  return fit;
}

OrbitBall quasi_orbit(const QuasiActionSpec& spec, const Point& x0, std::size_t word_radius,
                      std::size_t cap) {
  const int gens = spec.generators_for(word_radius);
  const std::vector<Word> words = word_ball(gens, word_radius);
  if (words.size() > 50 * cap) {
    throw Error("orbit enumeration would visit " + std::to_string(words.size()) +
                " words; raise the cap or lower the word radius");
  }
  OrbitBall orbit;
  orbit.x0 = x0;
  orbit.radius = word_radius;
  const bool exact = spec.target->exact();
  std::map<Point, PointId> exact_index;
  std::map<double, PointId> line_index;
  bool new_in_last_layer = false;

  auto find_or_add = [&](const Point& p) -> std::pair<PointId, bool> {
    if (exact) {
      auto [it, inserted] = exact_index.emplace(p, orbit.points.size());
      if (inserted) orbit.points.push_back(p);
      return {it->second, inserted};
    }
    const double x = coordinate_of(p);
    auto it = line_index.lower_bound(x - kTolerance);
    if (it != line_index.end() && std::abs(it->first - x) <= kTolerance) return {it->second, false};
    const PointId id = orbit.points.size();
    line_index.emplace(x, id);
    orbit.points.push_back(p);
    return {id, true};
  };

  for (const Word& g : words) {
    const auto [id, inserted] = find_or_add(apply(spec, g, x0));
    if (inserted && g.length() == word_radius) new_in_last_layer = true;
    orbit.words.emplace_back(g, id);
    if (orbit.points.size() > cap) {
      throw Error("orbit exceeds the cap of " + std::to_string(cap) + " points");
    }
  }
  orbit.saturated = spec.kind == ActionKind::genuine && word_radius >= 1 && !new_in_last_layer &&
                    spec.generators_for(word_radius - 1) == gens;
  orbit.metric = FiniteMetricSpace::from_function(
      orbit.points.size(), [&](PointId a, PointId b) {
        return spec.target->distance(orbit.points[a], orbit.points[b]);
      });
  return orbit;
}

namespace {

double diameter(const FiniteMetricSpace& space) {
  double out = 0.0;
  for (PointId i = 0; i < space.size(); ++i) {
    for (PointId j = i + 1; j < space.size(); ++j) out = std::max(out, space.distance(i, j));
  }
  return out;
}

}  // namespace

OrbitDiagnosis orbit_diagnosis(const QuasiActionSpec& spec, const Point& x0,
                               std::vector<std::size_t> radii) {
  if (radii.empty()) throw Error("orbit diagnosis needs a non-empty radius ladder");
  std::sort(radii.begin(), radii.end());
  OrbitDiagnosis out;
  for (std::size_t r : radii) {
    const OrbitBall orbit = quasi_orbit(spec, x0, r);
    out.levels.push_back(OrbitLevel{r, orbit.points.size(),
                                    coarse_connectivity_constant(orbit.metric),
                                    diameter(orbit.metric), orbit.saturated});
  }
  const OrbitBall largest = quasi_orbit(spec, x0, radii.back());
  for (std::size_t r : radii) {
    const double R = static_cast<double>(r);
    std::size_t count = 0;
    for (const auto& [g, id] : largest.words) {
      if (spec.target->distance(largest.points[id], x0) <= R + kTolerance) ++count;
    }
    out.properness.emplace_back(R, count);
  }
  const OrbitLevel& last = out.levels.back();
  const OrbitLevel& mid = out.levels[(out.levels.size() - 1) / 2];
  // Single-point levels carry no scale; c(r) growth is judged on the rest.
  std::vector<double> scales;
  for (const OrbitLevel& level : out.levels) {
    if (level.points > 1) scales.push_back(level.c);
  }
  out.good = scales.empty() || scales.back() <= scales[(scales.size() - 1) / 2] + kTolerance;
  out.bounded = last.saturated ||
                (out.levels.size() >= 2 && last.diameter <= mid.diameter + kTolerance);
  return out;
}

std::string to_string(ElementType type) {
  switch (type) {
    case ElementType::elliptic: return "elliptic";
    case ElementType::loxodromic: return "loxodromic";
    case ElementType::indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

double min_displacement(const QuasiActionSpec& spec, const Word& g, const Point& x0) {
  const auto* tree = dynamic_cast<const LazyTree*>(spec.target.get());
  if (!tree || spec.kind != ActionKind::genuine) {
    throw Error("min-displacement oracle needs a genuine action on a tree");
  }
  // The midpoint of [x, gx] lies in the characteristic set of g.
  const double d = tree->distance(x0, apply(spec, g, x0));
  const auto radius = static_cast<std::size_t>(std::ceil(d / 2.0)) + 1;
  const MaterialisedBall ball = materialise_ball(*tree, x0, radius);
  double best = std::numeric_limits<double>::infinity();
  for (const Point& v : ball.points) best = std::min(best, tree->distance(v, apply(spec, g, v)));
  return best;
}

ElementTypeReport element_type(const QuasiActionSpec& spec, const Word& g, const Point& x0,
                               std::size_t N) {
  if (N < 8) throw Error("element_type needs N >= 8");
  ElementTypeReport report;
  report.element = g;
  Word power;
  for (std::size_t n = 0; n <= N; ++n) {
    report.samples.push_back(spec.target->distance(apply(spec, power, x0), x0));
    power = power * g;
  }
  const std::size_t half = N / 2;
  const auto& d = report.samples;
  const double first_max = *std::max_element(d.begin(), d.begin() + static_cast<long>(half));
  const double last_max = *std::max_element(d.begin() + static_cast<long>(half), d.end());

  // Least-squares slope over n = half..N.
  double mean_n = 0.0;
  double mean_d = 0.0;
  const double count = static_cast<double>(N - half + 1);
  for (std::size_t n = half; n <= N; ++n) {
    mean_n += static_cast<double>(n);
    mean_d += d[n];
  }
  mean_n /= count;
  mean_d /= count;
  double cov = 0.0;
  double var = 0.0;
  for (std::size_t n = half; n <= N; ++n) {
    cov += (static_cast<double>(n) - mean_n) * (d[n] - mean_d);
    var += (static_cast<double>(n) - mean_n) * (static_cast<double>(n) - mean_n);
  }
  report.slope = cov / var;
  bool monotone = true;
  for (std::size_t n = half + 1; n <= N; ++n) monotone = monotone && d[n] >= d[n - 1] - kTolerance;

  if (last_max <= first_max + kTolerance) {
    report.verdict = ElementType::elliptic;
  } else if (report.slope >= 0.25 && monotone) {
    report.verdict = ElementType::loxodromic;
    report.K_fit = std::max(1.0, 1.0 / report.slope);
    for (std::size_t n = 0; n <= N; ++n) {
      report.eps_fit = std::max(report.eps_fit, static_cast<double>(n) / report.K_fit - d[n]);
    }
  }

  if (spec.kind == ActionKind::genuine && spec.target->is_tree()) {
    report.min_displacement = min_displacement(spec, g, x0);
    report.oracle = *report.min_displacement <= kTolerance ? ElementType::elliptic
                                                          : ElementType::loxodromic;
  }
  return report;
}

CosetTreeAction coset_tree(const std::vector<int>& chain, bool progressive) {
  auto tree = std::make_shared<const CosetTree>(chain);
  std::string name = tree->name();
  if (!progressive) name += "-finite";
  QuasiActionSpec spec = make_genuine_action(
      name, static_cast<int>(chain.size()), tree,
      [tree](int letter, const Point& x) {
        return tree->act(std::abs(letter), letter > 0 ? 1 : -1, x);
      },
      tree->basepoint());
  if (progressive) {
    spec.generators_at_radius = [](std::size_t r) { return static_cast<int>(r); };
  }
  return CosetTreeAction{tree, std::move(spec)};
}

EquivarianceReport verify_coarse_equivariance(const std::function<Point(const Point&)>& F,
                                              const QuasiActionSpec& alpha,
                                              const QuasiActionSpec& beta,
                                              const std::vector<Word>& words,
                                              const std::vector<Point>& points) {
  EquivarianceReport report;
  for (const Word& g : words) {
    for (const Point& x : points) {
      const double d = beta.target->distance(F(apply(alpha, g, x)), apply(beta, g, F(x)));
      if (d > report.M) {
        report.M = d;
        report.witness = g.to_string() + " " + format_point(x);
      }
    }
  }
  return report;
}

MinimalSubtreeBall minimal_subtree_ball(const QuasiActionSpec& spec, const Point& x0,
                                        std::size_t word_radius) {
  const auto* tree = dynamic_cast<const LazyTree*>(spec.target.get());
  if (!tree || spec.kind != ActionKind::genuine) {
    throw Error("minimal subtree needs a genuine action on a tree");
  }
  const OrbitBall orbit = quasi_orbit(spec, x0, word_radius);
  double reach = 0.0;
  for (const Point& p : orbit.points) reach = std::max(reach, tree->distance(x0, p));
  MinimalSubtreeBall out{tree->ball(x0, static_cast<std::size_t>(reach)), {}, {}, 0.0};
  for (const Point& p : orbit.points) out.orbit.push_back(out.host.data.index.at(p));
  out.subtree = convex_closure(out.host.tree, out.orbit);

  std::vector<PointId> local;
  for (PointId h : out.orbit) {
    local.push_back(static_cast<PointId>(
        std::lower_bound(out.subtree.vertices.begin(), out.subtree.vertices.end(), h) -
        out.subtree.vertices.begin()));
  }
  const FiniteMetricSpace subtree_metric = FiniteMetricSpace::from_graph(out.subtree.tree.graph());
  out.orbit_density = is_coarse_dense(local, subtree_metric, 0.0).farthest_distance;
  return out;
}

std::string to_string(Trichotomy verdict) {
  switch (verdict) {
    case Trichotomy::point: return "point";
    case Trichotomy::line: return "line";
    case Trichotomy::bushy: return "bushy";
    case Trichotomy::not_coarse_connected: return "not-coarse-connected";
    case Trichotomy::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

TrichotomyReport classify_trichotomy(const QuasiActionSpec& spec, const Point& x0,
                                     std::size_t word_radius, double R,
                                     std::vector<double> ladder) {
  if (!(R > 0.0)) throw Error("trichotomy radius R must be positive");
  TrichotomyReport report;
  std::vector<std::size_t> radii;
  for (std::size_t r = 1; r <= std::max<std::size_t>(word_radius, 1); ++r) radii.push_back(r);
  report.diagnosis = orbit_diagnosis(spec, x0, radii);
  if (!report.diagnosis.good) {
    report.verdict = Trichotomy::not_coarse_connected;
    return report;
  }

  const OrbitBall orbit = quasi_orbit(spec, x0, word_radius);
  report.orbit_points = orbit.points.size();
  report.saturated = orbit.saturated || report.diagnosis.bounded;
  report.rips_scale = coarse_connectivity_constant(orbit.metric);
  if (orbit.points.size() == 1) {
    report.verdict = Trichotomy::point;
    return report;
  }
  const RipsGraph rips = build_rips_graph(orbit.metric, report.rips_scale);
  const PointId base = orbit.words.front().second;  // image of the identity
  const auto dist = rips.graph.distances_from(base);
  const double eccentricity = static_cast<double>(*std::max_element(dist.begin(), dist.end()));
  // A saturated orbit is materialised at every radius, so its sphere beyond
  // the eccentricity is empty.
  report.effective_radius = report.saturated ? std::max(R, eccentricity + 1.0)
                                             : std::min(R, eccentricity);
  std::vector<double> kept;
  for (double b : ladder) {
    if (b >= 0.0 && b <= report.effective_radius / 2.0 + kTolerance) kept.push_back(b);
  }
  if (kept.empty()) {
    for (double b = 0.0; b <= report.effective_radius / 2.0 + kTolerance; b += 1.0) kept.push_back(b);
  }
  report.ends = end_profile(rips.graph, base, report.effective_radius, kept);
  switch (report.ends->verdict) {
    case EndVerdict::zero: report.verdict = Trichotomy::point; break;
    case EndVerdict::two: report.verdict = Trichotomy::line; break;
    case EndVerdict::three_or_more: report.verdict = Trichotomy::bushy; break;
    default: report.verdict = Trichotomy::inconclusive; break;
  }
  return report;
}

std::string to_string(HyperbolicType type) {
  switch (type) {
    case HyperbolicType::bounded: return "bounded";
    case HyperbolicType::parabolic_suspect: return "parabolic-suspect";
    case HyperbolicType::lineal_plus: return "lineal+";
    case HyperbolicType::lineal_minus: return "lineal-";
    case HyperbolicType::quasi_parabolic: return "quasi-parabolic";
    case HyperbolicType::general: return "general";
  }
  return "general";
}

EndKey end_toward(const QuasiActionSpec& spec, const Word& g, const Word& l, int sign,
                  const Point& x0) {
  const Space& X = *spec.target;
  if (X.is_line()) {
    const double y = coordinate_of(apply(spec, g * l.pow(sign * 64L), x0));
    return {Point(y > coordinate_of(x0) ? 1.0 : -1.0)};
  }
  const auto* tree = dynamic_cast<const LazyTree*>(&X);
  if (!tree) throw Error("end directions need a tree or line target");
  const double offset = X.distance(x0, apply(spec, g, x0)) + X.distance(x0, apply(spec, l, x0));
  const long n = 2 * static_cast<long>(kEndDepth) + static_cast<long>(offset) + 2;
  const Point far = apply(spec, g * l.pow(sign * n), x0);
  EndKey key{x0};
  Point at = x0;
  while (key.size() <= kEndDepth && at != far) {
    at = tree->step_toward(at, far);
    key.push_back(at);
  }
  return key;
}

HyperbolicTypeReport classify_hyperbolic_type_tree(const QuasiActionSpec& spec,
                                                   const std::vector<Word>& sample,
                                                   const Point& x0, std::size_t word_radius) {
  if (spec.kind != ActionKind::genuine) throw Error("hyperbolic type needs a genuine action");
  if (!spec.target->is_tree() && !spec.target->is_line()) {
    throw Error("hyperbolic type is only classified on trees and the line");
  }
  if (sample.empty()) throw Error("hyperbolic type needs a non-empty sample");
  std::vector<Word> elements = sample;
  for (int g = 1; g <= spec.rank; ++g) elements.push_back(Word::generator(g));
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());

  HyperbolicTypeReport report;
  for (const Word& g : elements) {
    if (element_type(spec, g, x0, 32).verdict == ElementType::loxodromic) {
      report.loxodromics.push_back(g);
      report.end_pairs.emplace_back(end_toward(spec, Word(), g, 1, x0),
                                    end_toward(spec, Word(), g, -1, x0));
    }
  }
  if (report.loxodromics.empty()) {
    std::vector<std::size_t> radii;
    for (std::size_t r = 1; r <= std::max<std::size_t>(word_radius, 2); ++r) radii.push_back(r);
    report.type = orbit_diagnosis(spec, x0, radii).bounded ? HyperbolicType::bounded
                                                           : HyperbolicType::parabolic_suspect;
    return report;
  }

  const auto& [plus, minus] = report.end_pairs.front();
  const bool shared_pair = std::all_of(
      report.end_pairs.begin(), report.end_pairs.end(), [&](const auto& pair) {
        return (pair.first == plus && pair.second == minus) ||
               (pair.first == minus && pair.second == plus);
      });
  if (shared_pair) {
    const Word& l = report.loxodromics.front();
    bool lineal = true;
    for (const Word& s : elements) {
      const EndKey image = end_toward(spec, s, l, 1, x0);
      if (image == minus) {
        report.swapping.push_back(s);
      } else if (image != plus) {
        lineal = false;
      }
    }
    if (lineal) {
      report.type = report.swapping.empty() ? HyperbolicType::lineal_plus
                                            : HyperbolicType::lineal_minus;
      return report;
    }
  }

  auto disjoint = [](const std::pair<EndKey, EndKey>& a, const std::pair<EndKey, EndKey>& b) {
    return a.first != b.first && a.first != b.second && a.second != b.first &&
           a.second != b.second;
  };
  for (std::size_t i = 0; i < report.end_pairs.size(); ++i) {
    for (std::size_t j = i + 1; j < report.end_pairs.size(); ++j) {
      if (disjoint(report.end_pairs[i], report.end_pairs[j])) {
        report.type = HyperbolicType::general;
        return report;
      }
    }
  }
  for (const EndKey& candidate : {plus, minus}) {
    const bool common = std::all_of(report.end_pairs.begin(), report.end_pairs.end(),
                                    [&](const auto& pair) {
                                      return pair.first == candidate || pair.second == candidate;
                                    });
    if (common) {
      report.type = HyperbolicType::quasi_parabolic;
      return report;
    }
  }
  report.type = HyperbolicType::general;
  return report;
}

}  // namespace qtreekit
