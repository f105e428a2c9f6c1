#pragma once

// Quasi-morphisms on free groups, homogenisation, the Bavard sup over
// commutators, and the translation and dihedral quasi-actions on the line.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qtreekit/actions.hpp"
#include "qtreekit/word.hpp"

namespace qtreekit {

enum class QmKind { homomorphism, brooks, homogenised, custom };

std::string to_string(QmKind kind);

struct QuasiMorphism {
  std::string name;
  QmKind kind = QmKind::custom;
  int rank = 2;
  std::function<double(const Word&)> eval;
  std::optional<double> declared_defect;
  std::vector<double> generator_values;  // homomorphisms only

  double operator()(const Word& g) const { return eval(g); }
};

inline constexpr long kHomogenisationBudget = 64;
inline constexpr double kLineTolerance = 1e-6;

QuasiMorphism homomorphism(std::vector<double> values);
// Signed count of w minus count of w^-1, overlapping occurrences.
QuasiMorphism brooks(const Word& w, int rank = 2);
QuasiMorphism custom_quasimorphism(std::string name, int rank,
                                   std::function<double(const Word&)> eval,
                                   std::optional<double> declared_defect = std::nullopt);
// Evaluator (f(g^2N) - f(g^N)) / N, memoised per element.
QuasiMorphism homogenised(const QuasiMorphism& f, long N = kHomogenisationBudget);

// Overlapping occurrences of w as a subword of g.
std::size_t count_occurrences(const Word& g, const Word& w);

struct DefectFit {
  double defect = 0.0;
  Word g;
  Word h;
};

// Max of |f(gh) - f(g) - f(h)| over reduced words of length <= radius;
// values within kTolerance * (1 + |f(g)| + |f(h)|) count as zero.
DefectFit fit_defect(const QuasiMorphism& f, std::size_t radius);

// f(g^N) / N.
double homogenise(const QuasiMorphism& f, const Word& g, long N = kHomogenisationBudget);

struct BavardFit {
  double sup = 0.0;
  Word g;
  Word h;  // commutator [g, h] attaining the sup
};

// Rejects f unless |f(g^2) - 2 f(g)| <= tolerance on the radius-2 ball.
// Rounding-sized commutator values are treated as zero, as in fit_defect.
BavardFit fit_bavard(const QuasiMorphism& B, std::size_t radius, double tolerance = kLineTolerance);

// alpha(g, x) = x + f(g) on the real line; a genuine action for homomorphisms.
QuasiActionSpec translation_action(const QuasiMorphism& f);

struct DihedralSpec {
  int rank = 2;
  std::function<bool(const Word&)> in_H;
  QuasiMorphism q;  // on H
  Word t;           // outside H
  // Test hook: the evaluator lets t itself act as the identity, which breaks
  // the composition axiom by an amount growing with |x|.
  bool t_acts_trivially = false;
};

// Words with an even total number of letters from `designated`.
std::function<bool(const Word&)> parity_membership(std::vector<int> designated);

// beta(h, x) = x + q(h) for h in H and beta(th, x) = -x - q(h).
QuasiActionSpec dihedral_action(const DihedralSpec& spec);

struct AntisymmetryReport {
  double antisymmetry = 0.0;  // max |q(t h t^-1) + q(h)|
  Word witness;
  double square_max = 0.0;    // max |q(s^2)| over sampled s outside H
  std::size_t sampled = 0;
};

AntisymmetryReport check_antisymmetry(const DihedralSpec& spec, std::size_t radius);

enum class LineReductionVerdict { reducible, obstructed, undecided };

std::string to_string(LineReductionVerdict verdict);

struct LineReduction {
  LineReductionVerdict verdict = LineReductionVerdict::undecided;
  std::vector<double> theta;  // fitted generator values
  double residual = 0.0;      // additivity residual on the radius-4 ball
  std::vector<Word> elliptic;  // sampled elements with zero displacement
  bool kernel_matches = false;
  std::optional<BavardFit> bavard;  // commutator with nonzero displacement
  bool simplicial = false;          // theta integral: reduction to Z
  long budget = kHomogenisationBudget;
};

// Homogenised signed displacement of g on the line, basepoint x0.
double homogenised_displacement(const QuasiActionSpec& spec, const Word& g, double x0,
                                long N = kHomogenisationBudget);

// Requires classify_trichotomy to return line.
LineReduction classify_line_reduction(const QuasiActionSpec& spec, std::size_t radius);

}  // namespace qtreekit
