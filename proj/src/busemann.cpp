#include "qtreekit/busemann.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace qtreekit {

namespace {

bool close(double a, double b) { return std::abs(a - b) <= kTolerance * (1.0 + std::abs(a)); }

template <typename Value>
struct WordCache {
  std::mutex mutex;
  std::map<std::vector<int>, Value> values;

  template <typename Fn>
  Value get(const Word& g, Fn&& compute) {
    {
      std::lock_guard lock(mutex);
      if (auto it = values.find(g.letters()); it != values.end()) return it->second;
    }
    Value v = compute(g);
    std::lock_guard lock(mutex);
    values[g.letters()] = v;
    return v;
  }
};

Point perturbed_basepoint(const Space& X, const Point& x0) {
  if (X.is_line()) return Point(coordinate_of(x0) + 0.5);
  std::vector<Point> nbrs = X.neighbors(x0);
  if (nbrs.empty()) throw Error("basepoint has no neighbour to perturb to");
  std::sort(nbrs.begin(), nbrs.end());
  return nbrs.front();
}

}  // namespace

RaySequence::RaySequence(QuasiActionSpec spec, Word l, Point x0, std::size_t N)
    : spec_(std::move(spec)), l_(std::move(l)), x0_(std::move(x0)) {
  const ElementTypeReport type = element_type(spec_, l_, x0_, 32);
  if (type.verdict != ElementType::loxodromic) {
    throw Error("ray element " + l_.to_string() + " is " + to_string(type.verdict) +
                ", not loxodromic");
  }
  slope_ = type.slope;
  points_.push_back(x0_);
  at(N);
}

const Point& RaySequence::at(std::size_t n) const {
  while (points_.size() <= n) {
    if (spec_.kind == ActionKind::genuine) {
      points_.push_back(apply(spec_, l_, points_.back()));
    } else {
      points_.push_back(apply(spec_, l_.pow(static_cast<long>(points_.size())), x0_));
    }
  }
  return points_[n];
}

Horofunction quasi_horofunction(const RaySequence& seq, const Point& z, std::size_t N) {
  if (N < 2) throw Error("quasi-horofunction needs N >= 2");
  const Space& X = *seq.spec().target;
  Horofunction out;
  out.N = N;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t n = N / 2; n <= N; ++n) {
    const Point& xn = seq.at(n);
    const double a = X.distance(xn, seq.x0()) - X.distance(xn, z);
    lo = std::min(lo, a);
    hi = std::max(hi, a);
  }
  out.value = lo;
  out.stabilised = close(lo, hi);
  return out;
}

Horofunction quasi_horofunction_adaptive(const RaySequence& seq, const Point& z, std::size_t N) {
  const Space& X = *seq.spec().target;
  const double reach = X.distance(seq.x0(), z) + 2.0 * X.distance(seq.x0(), seq.at(1)) + 1.0;
  const auto needed = static_cast<std::size_t>(std::ceil(reach / seq.slope()));
  std::size_t steps = std::max(N, 2 * needed + 2);
  Horofunction h = quasi_horofunction(seq, z, steps);
  for (int attempt = 0; attempt < 3 && !h.stabilised; ++attempt) {
    steps *= 2;
    h = quasi_horofunction(seq, z, steps);
  }
  return h;
}

BusemannValue busemann_value(const RaySequence& seq, const Word& g, long M) {
  if (M < 4) throw Error("Busemann homogenisation budget must be >= 4");
  const Word gM = g.pow(M);
  const Point z1 = apply(seq.spec(), gM, seq.x0());
  const Point z2 = apply(seq.spec(), gM * gM, seq.x0());
  const Horofunction h1 = quasi_horofunction_adaptive(seq, z1);
  const Horofunction h2 = quasi_horofunction_adaptive(seq, z2);
  return BusemannValue{(h2.value - h1.value) / static_cast<double>(M),
                       h1.stabilised && h2.stabilised, std::max(h1.N, h2.N), M};
}

HyperbolicType require_lineal(const QuasiActionSpec& spec, const Word& l, const Point& x0) {
  const HyperbolicTypeReport report = classify_hyperbolic_type_tree(spec, {l}, x0);
  if (report.type != HyperbolicType::lineal_plus && report.type != HyperbolicType::lineal_minus) {
    throw Error("action " + spec.name + " is " + to_string(report.type) + ", not lineal");
  }
  return report.type;
}

BusemannValue busemann_value(const QuasiActionSpec& spec, const Word& l, const Word& g,
                             const Point& x0, long M) {
  if (require_lineal(spec, l, x0) == HyperbolicType::lineal_minus &&
      end_toward(spec, g, l, 1, x0) != end_toward(spec, Word(), l, 1, x0)) {
    throw Error(g.to_string() + " swaps the ends; Busemann values need the orientation-preserving part");
  }
  return busemann_value(RaySequence(spec, l, x0), g, M);
}

MorseFit verify_morse_inequality(const RaySequence& seq, std::size_t steps) {
  if (steps < 2) throw Error("Morse fit needs at least 3 ray points");
  const Space& X = *seq.spec().target;
  std::vector<std::vector<double>> d(steps + 1, std::vector<double>(steps + 1, 0.0));
  for (std::size_t a = 0; a <= steps; ++a) {
    for (std::size_t b = a + 1; b <= steps; ++b) d[a][b] = d[b][a] = X.distance(seq.at(a), seq.at(b));
  }
  MorseFit fit;
  for (std::size_t m = 0; m <= steps; ++m) {
    for (std::size_t i = m + 1; i <= steps; ++i) {
      for (std::size_t n = i + 1; n <= steps; ++n) {
        ++fit.triples;
        fit.L = std::max(fit.L, (d[i][m] - d[n][m] + d[n][i]) / 2.0);
      }
    }
  }
  return fit;
}

SymmetryReport verify_busemann_symmetry(const QuasiActionSpec& spec, const Word& l,
                                        const std::vector<Word>& sample, const Point& x0,
                                        std::size_t N) {
  const HyperbolicType type = require_lineal(spec, l, x0);
  const RaySequence plus(spec, l, x0, N);
  const RaySequence minus(spec, l.inverse(), x0, N);
  const EndKey plus_end = end_toward(spec, Word(), l, 1, x0);
  SymmetryReport report;
  report.ray_steps = N;
  report.L = std::max(verify_morse_inequality(plus).L, verify_morse_inequality(minus).L);
  for (const Word& g : sample) {
    if (type == HyperbolicType::lineal_minus && end_toward(spec, g, l, 1, x0) != plus_end) {
      throw Error(g.to_string() + " swaps the ends; symmetry is checked on the orientation-preserving part");
    }
    ++report.sampled;
    const BusemannValue bp = busemann_value(plus, g);
    const BusemannValue bm = busemann_value(minus, g);
    report.homogenised_max = std::max(report.homogenised_max, std::abs(bp.value + bm.value));
    const Point z = apply(spec, g, x0);
    const Horofunction hp = quasi_horofunction_adaptive(plus, z, N);
    const Horofunction hm = quasi_horofunction_adaptive(minus, z, N);
    report.raw_max = std::max(report.raw_max, std::abs(hp.value + hm.value));
    report.stabilised = report.stabilised && bp.stabilised && bm.stabilised && hp.stabilised &&
                        hm.stabilised;
  }
  report.raw_within_6L = report.raw_max <= 6.0 * report.L + kTolerance;
  return report;
}

LineReductionMap line_reduction_map(const QuasiActionSpec& spec, const Word& l, const Point& x0,
                                    std::size_t word_radius, std::size_t N) {
  if (require_lineal(spec, l, x0) != HyperbolicType::lineal_plus) {
    throw Error("line reduction map needs a lineal+ action; use dihedral_reduction");
  }
  const Space& X = *spec.target;
  auto seq = std::make_shared<const RaySequence>(spec, l, x0, N);
  LineReductionMap out;
  out.word_radius = word_radius;
  out.ray_steps = N;
  out.L = verify_morse_inequality(*seq).L;
  out.words = word_ball(spec.generators_for(word_radius), word_radius);

  std::vector<Point> orbit;
  for (const Word& g : out.words) {
    orbit.push_back(apply(spec, g, x0));
    const Horofunction h = quasi_horofunction_adaptive(*seq, orbit.back(), N);
    out.values.push_back(h.value);
    out.stabilised = out.stabilised && h.stabilised;
  }
  for (std::size_t i = 0; i < orbit.size(); ++i) {
    for (std::size_t j = i + 1; j < orbit.size(); ++j) {
      ++out.pairs;
      const double d = X.distance(orbit[i], orbit[j]);
      const double dF = std::abs(out.values[i] - out.values[j]);
      out.upper_excess = std::max(out.upper_excess, dF - d);
      out.lower_slack = std::max(out.lower_slack, d - dF);
      if (dF > d + kTolerance || d - dF > 6.0 * out.L + kTolerance) {
        throw Error("reduction inequality fails at " + out.words[i].to_string() + ", " +
                    out.words[j].to_string() + " (|dF| = " + std::to_string(dF) +
                    ", d = " + std::to_string(d) + "); raise the ray budget N");
      }
    }
  }

  auto cache = std::make_shared<WordCache<double>>();
  out.busemann = custom_quasimorphism("busemann(" + l.to_string() + ")", spec.rank,
                                      [seq, cache](const Word& g) {
                                        return cache->get(g, [&](const Word& w) {
                                          return busemann_value(*seq, w).value;
                                        });
                                      });
  const QuasiActionSpec beta = translation_action(out.busemann);
  auto F = [seq, N](const Point& z) { return Point(quasi_horofunction_adaptive(*seq, z, N).value); };
  std::vector<Point> points;
  for (const Word& g : word_ball(spec.generators_for(2), 2)) points.push_back(apply(spec, g, x0));
  out.equivariance = verify_coarse_equivariance(
      F, spec, beta, word_ball(spec.generators_for(std::min<std::size_t>(word_radius, 3)),
                               std::min<std::size_t>(word_radius, 3)),
      points);

  std::vector<double> sorted = out.values;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    out.onto = std::max(out.onto, (sorted[i] - sorted[i - 1]) / 2.0);
  }

  const Point x1 = perturbed_basepoint(X, x0);
  const RaySequence shifted(spec, l, x1, N);
  for (std::size_t i = 0; i < out.words.size(); ++i) {
    const double v = quasi_horofunction_adaptive(shifted, apply(spec, out.words[i], x1), N).value;
    out.perturbed = std::max(out.perturbed, std::abs(v - out.values[i]));
  }
  return out;
}

DihedralReduction dihedral_reduction(const QuasiActionSpec& spec, const Word& t, const Word& l,
                                     const Point& x0, std::size_t word_radius) {
  if (require_lineal(spec, l, x0) != HyperbolicType::lineal_minus) {
    throw Error("dihedral reduction needs a lineal- action");
  }
  const EndKey plus = end_toward(spec, Word(), l, 1, x0);
  const EndKey minus = end_toward(spec, Word(), l, -1, x0);
  if (end_toward(spec, t, l, 1, x0) != minus) {
    throw Error(t.to_string() + " does not swap the ends of " + l.to_string());
  }
  auto seq = std::make_shared<const RaySequence>(spec, l, x0);
  auto membership = std::make_shared<WordCache<bool>>();
  auto values = std::make_shared<WordCache<double>>();

  DihedralReduction out;
  out.word_radius = word_radius;
  out.spec.rank = spec.rank;
  out.spec.t = t;
  out.spec.in_H = [spec, l, x0, plus, membership](const Word& g) {
    return membership->get(g, [&](const Word& w) { return end_toward(spec, w, l, 1, x0) == plus; });
  };
  out.spec.q = custom_quasimorphism("busemann(" + l.to_string() + ")", spec.rank,
                                    [seq, values](const Word& g) {
                                      return values->get(g, [&](const Word& w) {
                                        return busemann_value(*seq, w).value;
                                      });
                                    });
  out.antisymmetry = check_antisymmetry(out.spec, std::min<std::size_t>(word_radius, 3));

  const QuasiActionSpec beta = dihedral_action(out.spec);
  auto F = [seq](const Point& z) { return Point(quasi_horofunction_adaptive(*seq, z).value); };
  std::vector<Point> points;
  for (const Word& g : word_ball(spec.generators_for(2), 2)) {
    const Point p = apply(spec, g, x0);
    points.push_back(p);
    for (const Point& n : spec.target->neighbors(p)) points.push_back(n);
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  const std::vector<Word> words = word_ball(spec.generators_for(word_radius), word_radius);
  out.equivariance = verify_coarse_equivariance(F, spec, beta, words, points);

  for (const Word& g : words) {
    if (out.spec.in_H(g)) continue;
    ++out.coset_sampled;
    if (element_type(spec, g, x0, 32).verdict == ElementType::elliptic) ++out.coset_elliptic;
  }
  return out;
}

ScalingFit scaling_comparison(const std::vector<double>& b1, const std::vector<double>& b2) {
  if (b1.size() != b2.size()) throw Error("scaling comparison needs samples on the same words");
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < b1.size(); ++i) {
    num += b1[i] * b2[i];
    den += b1[i] * b1[i];
  }
  if (den == 0.0) throw Error("first sample is identically zero");
  ScalingFit fit{num / den, 0.0};
  for (std::size_t i = 0; i < b1.size(); ++i) {
    fit.residual = std::max(fit.residual, std::abs(b2[i] - fit.lambda * b1[i]));
  }
  return fit;
}

}  // namespace qtreekit
