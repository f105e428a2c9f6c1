#pragma once

// Quasi-horofunctions along loxodromic rays, Busemann quasi-morphisms of
// lineal actions on trees and the line, and the reduction maps to the line.

#include <optional>
#include <string>
#include <vector>

#include "qtreekit/actions.hpp"
#include "qtreekit/quasimorphisms.hpp"

namespace qtreekit {

inline constexpr std::size_t kRaySteps = 64;
inline constexpr long kBusemannPowers = 32;

// x_n = l^n(x0), extended on demand. Construction checks l is loxodromic.
class RaySequence {
 public:
  RaySequence(QuasiActionSpec spec, Word l, Point x0, std::size_t N = kRaySteps);

  const QuasiActionSpec& spec() const { return spec_; }
  const Word& element() const { return l_; }
  const Point& x0() const { return x0_; }
  double slope() const { return slope_; }
  const Point& at(std::size_t n) const;
  std::size_t cached() const { return points_.size(); }

 private:
  QuasiActionSpec spec_;
  Word l_;
  Point x0_;
  double slope_ = 0.0;
  mutable std::vector<Point> points_;
};

struct Horofunction {
  double value = 0.0;
  bool stabilised = false;
  std::size_t N = 0;  // ray steps used
};

// min over n in [N/2, N] of d(x_n, x0) - d(x_n, z).
Horofunction quasi_horofunction(const RaySequence& seq, const Point& z, std::size_t N);
// Same, with N raised until the window lies beyond z.
Horofunction quasi_horofunction_adaptive(const RaySequence& seq, const Point& z,
                                         std::size_t N = kRaySteps);

struct BusemannValue {
  double value = 0.0;
  bool stabilised = false;
  std::size_t ray_steps = 0;
  long powers = 0;
};

// (h(g^2M x0) - h(g^M x0)) / M with h the quasi-horofunction of the ray.
BusemannValue busemann_value(const RaySequence& seq, const Word& g, long M = kBusemannPowers);

// Requires a lineal verdict from classify_hyperbolic_type_tree; with
// lineal-, g must preserve the ends of l.
BusemannValue busemann_value(const QuasiActionSpec& spec, const Word& l, const Word& g,
                             const Point& x0, long M = kBusemannPowers);

HyperbolicType require_lineal(const QuasiActionSpec& spec, const Word& l, const Point& x0);

struct MorseFit {
  double L = 0.0;
  std::size_t triples = 0;
};

// Smallest L with d(x_N, x_M) - d(x_N, x_i) >= d(x_i, x_M) - 2L over all
// 0 <= M < i < N <= steps.
MorseFit verify_morse_inequality(const RaySequence& seq, std::size_t steps = 16);

struct SymmetryReport {
  double homogenised_max = 0.0;  // max |B+(g) + B-(g)|
  double raw_max = 0.0;          // max |h+(g x0) + h-(g x0)|
  double L = 0.0;
  bool raw_within_6L = true;
  bool stabilised = true;
  std::size_t sampled = 0;
  std::size_t ray_steps = kRaySteps;
  long powers = kBusemannPowers;
};

SymmetryReport verify_busemann_symmetry(const QuasiActionSpec& spec, const Word& l,
                                        const std::vector<Word>& sample, const Point& x0,
                                        std::size_t N = kRaySteps);

struct LineReductionMap {
  std::vector<Word> words;
  std::vector<double> values;  // F(g x0)
  QuasiMorphism busemann;      // g -> B(g)
  double L = 0.0;
  double upper_excess = 0.0;   // max |dF| - d; must be <= 0
  double lower_slack = 0.0;    // max d - |dF|; must be <= 6L
  std::size_t pairs = 0;
  EquivarianceReport equivariance;
  double onto = 0.0;           // half the largest gap of F on its spanned interval
  double perturbed = 0.0;      // max |F'(g x0') - F(g x0)| from a neighbouring basepoint
  bool stabilised = true;
  std::size_t word_radius = 0;
  std::size_t ray_steps = kRaySteps;
  long powers = kBusemannPowers;
};

LineReductionMap line_reduction_map(const QuasiActionSpec& spec, const Word& l, const Point& x0,
                                    std::size_t word_radius = 5, std::size_t N = kRaySteps);

struct DihedralReduction {
  DihedralSpec spec;
  AntisymmetryReport antisymmetry;
  EquivarianceReport equivariance;
  std::size_t coset_sampled = 0;
  std::size_t coset_elliptic = 0;
  std::size_t word_radius = 0;
};

DihedralReduction dihedral_reduction(const QuasiActionSpec& spec, const Word& t, const Word& l,
                                     const Point& x0, std::size_t word_radius = 4);

struct ScalingFit {
  double lambda = 0.0;
  double residual = 0.0;
};

ScalingFit scaling_comparison(const std::vector<double>& b1, const std::vector<double>& b2);

}  // namespace qtreekit
