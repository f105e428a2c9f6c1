#pragma once

// Actions and quasi-actions of groups given by reduced words, their
// quasi-orbits, element types, and the trichotomy for quasi-actions whose
// quasi-orbits look like trees.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qtreekit/metric.hpp"
#include "qtreekit/space.hpp"
#include "qtreekit/trees.hpp"
#include "qtreekit/word.hpp"

namespace qtreekit {

enum class ActionKind { genuine, quasi };

std::string to_string(ActionKind kind);

using GeneratorMap = std::function<Point(int letter, const Point&)>;
using Evaluator = std::function<Point(const Word&, const Point&)>;

struct QuasiActionSpec {
  std::string name;
  int rank = 0;
  std::shared_ptr<const Space> target;
  ActionKind kind = ActionKind::quasi;
  Evaluator evaluator;
  std::optional<QieConstants> declared;  // (K, eps, C) when known
  Point basepoint;
  // Generators available at a given word radius; null means all `rank`.
  // Models an infinitely generated group by an exhaustion.
  std::function<int(std::size_t)> generators_at_radius;

  int generators_for(std::size_t radius) const;
};

// Genuine action: g = s1 s2 ... sk acts by s1(s2(...sk(x))).
QuasiActionSpec make_genuine_action(std::string name, int rank,
                                    std::shared_ptr<const Space> target, GeneratorMap generator,
                                    Point basepoint);

QuasiActionSpec make_quasi_action(std::string name, int rank, std::shared_ptr<const Space> target,
                                  Evaluator evaluator, Point basepoint,
                                  std::optional<QieConstants> declared = std::nullopt);

Point apply(const QuasiActionSpec& spec, const Word& g, const Point& x);

// Maps q: X -> Y and r: Y -> X, checked on samples to be mutually
// `bound`-close inverses before use.
struct QuasiInversePair {
  std::shared_ptr<const Space> target;
  std::function<Point(const Point&)> q;
  std::function<Point(const Point&)> r;
  std::vector<Point> x_sample;
  std::vector<Point> y_sample;
  double bound = 1.0;
};

// beta(g, y) = q(alpha(g, r(y))).
QuasiActionSpec conjugate_quasi_action(const QuasiActionSpec& alpha, const QuasiInversePair& pair);

struct QuasiActionFit {
  QieConstants fitted;      // (K, eps, C)
  double identity_deviation = 0.0;     // max d(alpha(e, x), x)
  double composition_deviation = 0.0;  // max d(alpha(g, alpha(h, x)), alpha(gh, x))
  std::string composition_witness;     // "g h x" at the maximum
  std::size_t words = 0;
  std::size_t points = 0;
};

QuasiActionFit verify_quasi_action(const QuasiActionSpec& spec, std::size_t word_radius,
                                   const std::vector<Point>& point_sample);

struct OrbitBall {
  Point x0;
  std::size_t radius = 0;
  std::vector<Point> points;                       // first-appearance order
  std::vector<std::pair<Word, PointId>> words;     // every enumerated word
  FiniteMetricSpace metric;
  // Genuine action whose last word layer produced no new point with the
  // generator set unchanged: the full orbit has been enumerated.
  bool saturated = false;
};

inline constexpr std::size_t kDefaultOrbitCap = 6000;

OrbitBall quasi_orbit(const QuasiActionSpec& spec, const Point& x0, std::size_t word_radius,
                      std::size_t cap = kDefaultOrbitCap);

struct OrbitLevel {
  std::size_t radius = 0;
  std::size_t points = 0;
  double c = 0.0;  // coarse connectivity constant
  double diameter = 0.0;
  bool saturated = false;
};

struct OrbitDiagnosis {
  std::vector<OrbitLevel> levels;
  // (R, number of words g with d(alpha(g, x0), x0) <= R) over the largest ball.
  std::vector<std::pair<double, std::size_t>> properness;
  bool good = true;
  bool bounded = false;  // diameter constant over the upper half of the ladder
};

OrbitDiagnosis orbit_diagnosis(const QuasiActionSpec& spec, const Point& x0,
                               std::vector<std::size_t> radii);

enum class ElementType { elliptic, loxodromic, indeterminate };

std::string to_string(ElementType type);

struct ElementTypeReport {
  Word element;
  std::vector<double> samples;  // d(alpha(g^n, x0), x0), n = 0..N
  ElementType verdict = ElementType::indeterminate;
  double slope = 0.0;           // least squares over the last half-window
  double K_fit = 0.0;
  double eps_fit = 0.0;
  // Genuine tree actions only: min over materialised vertices of d(v, g v).
  std::optional<double> min_displacement;
  std::optional<ElementType> oracle;
};

ElementTypeReport element_type(const QuasiActionSpec& spec, const Word& g, const Point& x0,
                               std::size_t N);

// Min-displacement oracle: zero means elliptic, positive loxodromic.
double min_displacement(const QuasiActionSpec& spec, const Word& g, const Point& x0);

struct CosetTreeAction {
  std::shared_ptr<const CosetTree> tree;
  QuasiActionSpec spec;
};

// Coset construction for C_{p1} x ... x C_{pm}; generator k is the unit of
// the k-th factor. With `progressive`, word radius r only uses the first r
// generators (the restricted product is infinitely generated).
CosetTreeAction coset_tree(const std::vector<int>& chain, bool progressive = true);

struct EquivarianceReport {
  double M = 0.0;
  std::string witness;
};

EquivarianceReport verify_coarse_equivariance(const std::function<Point(const Point&)>& F,
                                              const QuasiActionSpec& alpha,
                                              const QuasiActionSpec& beta,
                                              const std::vector<Word>& words,
                                              const std::vector<Point>& points);

struct MinimalSubtreeBall {
  LazyTree::Ball host;               // ball of the target tree
  Subtree subtree;                   // convex closure of the orbit, host ids
  std::vector<PointId> orbit;        // host ids of the orbit points
  double orbit_density = 0.0;        // farthest subtree vertex from the orbit
};

MinimalSubtreeBall minimal_subtree_ball(const QuasiActionSpec& spec, const Point& x0,
                                        std::size_t word_radius);

enum class Trichotomy { point, line, bushy, not_coarse_connected, inconclusive };

std::string to_string(Trichotomy verdict);

struct TrichotomyReport {
  Trichotomy verdict = Trichotomy::inconclusive;
  OrbitDiagnosis diagnosis;
  std::optional<EndProfile> ends;
  double rips_scale = 0.0;
  double effective_radius = 0.0;
  std::size_t orbit_points = 0;
  bool saturated = false;
};

// `ladder` values above half the effective radius are dropped; when none
// survive the ladder is 0, 1, ..., floor(radius / 2).
TrichotomyReport classify_trichotomy(const QuasiActionSpec& spec, const Point& x0,
                                     std::size_t word_radius, double R,
                                     std::vector<double> ladder = {});

enum class HyperbolicType { bounded, parabolic_suspect, lineal_plus, lineal_minus, quasi_parabolic,
                            general };

std::string to_string(HyperbolicType type);

// An end is identified by the first steps of the geodesic from x0 towards
// it (a sign on the line).
using EndKey = std::vector<Point>;

struct HyperbolicTypeReport {
  HyperbolicType type = HyperbolicType::bounded;
  std::vector<Word> loxodromics;
  std::vector<std::pair<EndKey, EndKey>> end_pairs;  // (attracting, repelling)
  std::vector<Word> swapping;  // sampled elements exchanging the ends (lineal)
};

inline constexpr std::size_t kEndDepth = 24;

EndKey end_toward(const QuasiActionSpec& spec, const Word& g, const Word& l, int sign,
                  const Point& x0);

HyperbolicTypeReport classify_hyperbolic_type_tree(const QuasiActionSpec& spec,
                                                   const std::vector<Word>& sample,
                                                   const Point& x0, std::size_t word_radius = 4);

}  // namespace qtreekit
