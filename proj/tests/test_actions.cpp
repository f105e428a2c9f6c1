#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "qtreekit/actions.hpp"
#include "qtreekit/corpus.hpp"

using namespace qtreekit;

namespace {

Word w(const char* s) { return Word::parse(s); }

std::vector<Point> line_points(double lo, double hi, double step) {
  std::vector<Point> out;
  for (double x = lo; x <= hi + 1e-12; x += step) out.emplace_back(x);
  return out;
}

}  // namespace

TEST_CASE("apply on the Cayley tree and the line") {
  const QuasiActionSpec f2 = f2_on_t4();
  const Point ab = apply(f2, w("ab"), f2.basepoint);
  CHECK(ab == CayleyTree::point_of(w("ab")));
  CHECK(f2.target->distance(ab, f2.basepoint) == 2.0);
  CHECK(apply(f2, Word(), f2.basepoint) == f2.basepoint);
  CHECK_THROWS_AS(apply(f2, w("c"), f2.basepoint), Error);
  CHECK_THROWS_AS(apply(f2, w("a"), Point(0.5)), Error);

  const QuasiMorphism f = brooks(w("ab"));
  const QuasiActionSpec t = translation_action(f);
  for (const Word& g : word_ball(2, 3)) {
    CHECK(coordinate_of(apply(t, g, 1.5)) == doctest::Approx(1.5 + f(g)));
  }
}

TEST_CASE("genuine actions compose generator maps") {
  const QuasiActionSpec d = dihedral_line();
  // a(n) = n + 2, b(n) = -n; ab acts by a(b(n))
  CHECK(apply(d, w("ab"), Label{3}) == Point(Label{-1}));
  CHECK(apply(d, w("ba"), Label{3}) == Point(Label{-5}));
  CHECK(apply(d, w("bb"), Label{3}) == Point(Label{3}));
}

TEST_CASE("conjugating by the identity pair changes nothing") {
  const QuasiActionSpec base = zn_line(1.0);
  QuasiInversePair id;
  id.target = base.target;
  id.q = [](const Point& x) { return x; };
  id.r = [](const Point& y) { return y; };
  id.x_sample = line_points(-3, 3, 0.5);
  id.y_sample = id.x_sample;
  const QuasiActionSpec c = conjugate_quasi_action(base, id);
  CHECK(c.kind == ActionKind::quasi);
  for (const Word& g : word_ball(1, 4)) {
    for (const Point& x : id.x_sample) CHECK(apply(c, g, x) == apply(base, g, x));
  }
  QuasiInversePair bad = id;
  bad.r = [](const Point& y) { return Point(coordinate_of(y) + 5.0); };
  CHECK_THROWS_AS(conjugate_quasi_action(base, bad), Error);
}

TEST_CASE("F2 conjugated onto the tree with extra edges") {
  const QuasiActionSpec c = conjugated(f2_on_t4(), "hair");
  const auto hairy = std::dynamic_pointer_cast<const HairyTree>(c.target);
  REQUIRE(hairy);
  std::vector<Point> sample = materialise_ball(*hairy, c.basepoint, 2).points;
  const QuasiActionFit fit = verify_quasi_action(c, 2, sample);
  // tips of neighbouring hairs are 3 apart and may land 1 apart
  CHECK(fit.fitted.K <= 3.0 + 1e-9);
  CHECK(fit.fitted.eps <= 2.0 + 1e-9);
  CHECK(fit.composition_deviation <= 2.0 + 1e-9);
  // cobounded: every point of the radius-3 ball is within 1 of the orbit
  const OrbitBall orbit = quasi_orbit(c, c.basepoint, 4);
  for (const Point& y : materialise_ball(*hairy, c.basepoint, 3).points) {
    double best = 1e9;
    for (const Point& p : orbit.points) best = std::min(best, hairy->distance(y, p));
    CHECK(best <= 1.0);
  }
}

TEST_CASE("folding the line breaks additivity of the orbit map") {
  const QuasiActionSpec c = conjugated(zn_line(1.0), "fold");
  auto f = [&](long n) { return coordinate_of(apply(c, Word::generator(1).pow(n), 0.0)); };
  // f(n) + f(-n) - f(0) grows linearly
  const double d10 = std::abs(f(10) + f(-10) - f(0));
  const double d100 = std::abs(f(100) + f(-100) - f(0));
  CHECK(d10 == doctest::Approx(10));
  CHECK(d100 == doctest::Approx(100));
  const QuasiActionFit fit = verify_quasi_action(c, 2, line_points(-5, 5, 0.5));
  CHECK(fit.fitted.K == doctest::Approx(2.0));
}

TEST_CASE("verify quasi-action on genuine tree actions") {
  for (const QuasiActionSpec& spec : {f2_on_t4(), dihedral_line(), finite_star(5)}) {
    const auto tree = std::dynamic_pointer_cast<const LazyTree>(spec.target);
    REQUIRE(tree);
    const auto sample = materialise_ball(*tree, spec.basepoint, 2).points;
    const QuasiActionFit fit = verify_quasi_action(spec, 2, sample);
    CHECK(fit.fitted.C == 0.0);
    CHECK(fit.fitted.K == 1.0);
    CHECK(fit.fitted.eps == 0.0);
    CHECK(fit.identity_deviation == 0.0);
  }
  CHECK_THROWS_AS(verify_quasi_action(f2_on_t4(), 2, {}), Error);
}

TEST_CASE("translation by a quasi-morphism has C at most the defect") {
  for (const char* word : {"ab", "aab", "abAB"}) {
    const QuasiMorphism f = brooks(w(word));
    const double D = fit_defect(f, 3).defect;
    const QuasiActionFit fit = verify_quasi_action(translation_action(f), 3, line_points(-2, 2, 1));
    CHECK(fit.fitted.C <= D + 1e-9);
    CHECK(fit.fitted.K == 1.0);
  }
}

TEST_CASE("non-antisymmetric dihedral data has unbounded composition deviation") {
  DihedralSpec spec;
  spec.rank = 2;
  spec.in_H = parity_membership({2});
  spec.q = homomorphism({1.0, 0.0});
  spec.t = w("b");
  spec.t_acts_trivially = true;
  const QuasiActionSpec beta = dihedral_action(spec);
  std::vector<double> deviations;
  for (double x : {10.0, 100.0, 1000.0}) {
    const QuasiActionFit fit = verify_quasi_action(beta, 2, {Point(x), Point(-x)});
    deviations.push_back(fit.composition_deviation);
    CHECK_FALSE(fit.composition_witness.empty());
  }
  CHECK(deviations[1] > 5 * deviations[0]);
  CHECK(deviations[2] > 5 * deviations[1]);
  CHECK(deviations[2] >= 1000.0);
}

TEST_CASE("quasi-orbits") {
  const QuasiActionSpec trivial = make_genuine_action(
      "trivial", 2, std::make_shared<SimplicialLine>(), [](int, const Point& x) { return x; },
      Label{0});
  CHECK(quasi_orbit(trivial, Label{0}, 3).points.size() == 1);

  const QuasiActionSpec f2 = f2_on_t4();
  for (std::size_t r = 0; r <= 4; ++r) {
    const OrbitBall o = quasi_orbit(f2, f2.basepoint, r);
    const auto ball = materialise_ball(*f2.target, f2.basepoint, r);
    CHECK(o.points.size() == ball.points.size());
    std::set<Point> a(o.points.begin(), o.points.end());
    std::set<Point> b(ball.points.begin(), ball.points.end());
    CHECK(a == b);
  }
  CHECK_THROWS_AS(quasi_orbit(f2, f2.basepoint, 8, 100), Error);
}

TEST_CASE("coset orbits grow along the prime chain") {
  std::vector<double> diameters;
  for (const auto& chain : std::vector<std::vector<int>>{{2}, {2, 3}, {2, 3, 5}}) {
    const CosetTreeAction c = coset_tree(chain);
    const OrbitBall o = quasi_orbit(c.spec, c.spec.basepoint, chain.size() + 1);
    double diam = 0.0;
    for (PointId i = 0; i < o.metric.size(); ++i) {
      for (PointId j = 0; j < o.metric.size(); ++j) diam = std::max(diam, o.metric.distance(i, j));
    }
    diameters.push_back(diam);
  }
  CHECK(diameters[0] < diameters[1]);
  CHECK(diameters[1] < diameters[2]);
}

TEST_CASE("orbit diagnosis") {
  const QuasiActionSpec f2 = f2_on_t4();
  const OrbitDiagnosis d = orbit_diagnosis(f2, f2.basepoint, {1, 2, 3, 4});
  CHECK(d.good);
  CHECK_FALSE(d.bounded);
  for (const auto& level : d.levels) CHECK(level.c == 1.0);
  for (std::size_t i = 1; i < d.properness.size(); ++i) {
    CHECK(d.properness[i].second >= d.properness[i - 1].second);
  }

  const CosetTreeAction c = coset_tree({2, 3, 5});
  const OrbitDiagnosis bad = orbit_diagnosis(c.spec, c.spec.basepoint, {1, 2, 3});
  CHECK_FALSE(bad.good);
  CHECK(bad.levels[0].c < bad.levels[1].c);
  CHECK(bad.levels[1].c < bad.levels[2].c);

  const QuasiActionSpec star = finite_star(4);
  const OrbitDiagnosis bounded = orbit_diagnosis(star, star.basepoint, {1, 2, 3, 4});
  CHECK(bounded.good);
  CHECK(bounded.bounded);
}

TEST_CASE("element types") {
  const QuasiActionSpec f2 = f2_on_t4();
  const ElementTypeReport id = element_type(f2, Word(), f2.basepoint, 16);
  CHECK(id.verdict == ElementType::elliptic);
  const ElementTypeReport a = element_type(f2, w("a"), f2.basepoint, 16);
  CHECK(a.verdict == ElementType::loxodromic);
  CHECK(a.slope == doctest::Approx(1.0));
  for (std::size_t n = 0; n < a.samples.size(); ++n) CHECK(a.samples[n] == static_cast<double>(n));
  REQUIRE(a.oracle);
  CHECK(*a.oracle == ElementType::loxodromic);
  CHECK(*a.min_displacement == 1.0);
  CHECK_THROWS_AS(element_type(f2, w("a"), f2.basepoint, 4), Error);
}

TEST_CASE("element types are conjugation and power invariant") {
  for (const QuasiActionSpec& spec : {f2_on_t4(), dihedral_line(), zn_tree(1)}) {
    const auto sample = word_ball(spec.rank, 2);
    for (const Word& g : sample) {
      const ElementType v = element_type(spec, g, spec.basepoint, 32).verdict;
      CHECK(v != ElementType::indeterminate);
      for (const Word& h : word_ball(spec.rank, 1)) {
        CHECK(element_type(spec, h * g * h.inverse(), spec.basepoint, 32).verdict == v);
      }
      CHECK(element_type(spec, g.pow(2), spec.basepoint, 32).verdict == v);
      CHECK(element_type(spec, g.pow(-3), spec.basepoint, 32).verdict == v);
    }
  }
}

TEST_CASE("element types agree with the min-displacement oracle") {
  for (const QuasiActionSpec& spec : {f2_on_t4(), dihedral_line(), dihedral_hairy(), finite_star(3)}) {
    for (const Word& g : word_ball(spec.rank, 2)) {
      ElementTypeReport r = element_type(spec, g, spec.basepoint, 16);
      if (r.verdict == ElementType::indeterminate) r = element_type(spec, g, spec.basepoint, 32);
      CHECK(r.verdict != ElementType::indeterminate);
      REQUIRE(r.oracle);
      CHECK(*r.oracle == r.verdict);
    }
  }
}

TEST_CASE("coset tree action") {
  const CosetTreeAction c = coset_tree({2, 3, 5}, false);
  const OrbitBall o = quasi_orbit(c.spec, c.spec.basepoint, 4);
  CHECK(o.points.size() == 30);
  for (const Point& p : o.points) CHECK(c.tree->level_of(p) == 0);
  for (const Word& g : word_ball(3, 2)) {
    const ElementTypeReport r = element_type(c.spec, g, c.spec.basepoint, 16);
    CHECK(r.verdict == ElementType::elliptic);
    REQUIRE(r.min_displacement);
    CHECK(*r.min_displacement == 0.0);
  }
  CHECK_THROWS_AS(coset_tree({2, 1}), Error);
}

TEST_CASE("every element of the truncated coset action is elliptic") {
  for (const auto& chain : std::vector<std::vector<int>>{{2}, {2, 3}, {2, 3, 5}}) {
    const CosetTreeAction c = coset_tree(chain);
    for (const Word& g : word_ball(static_cast<int>(chain.size()), 2)) {
      CHECK(element_type(c.spec, g, c.spec.basepoint, 16).verdict == ElementType::elliptic);
    }
  }
}

TEST_CASE("coarse equivariance") {
  const QuasiActionSpec f2 = f2_on_t4();
  const auto words = word_ball(2, 2);
  const auto points = materialise_ball(*f2.target, f2.basepoint, 2).points;
  const EquivarianceReport same =
      verify_coarse_equivariance([](const Point& x) { return x; }, f2, f2, words, points);
  CHECK(same.M == 0.0);

  // nearest vertex from the real line to the simplicial line
  const QuasiActionSpec real = zn_line(1.0);
  const QuasiActionSpec simplicial = zn_tree(1);
  const EquivarianceReport nearest = verify_coarse_equivariance(
      [](const Point& x) { return Point(Label{std::lround(std::floor(coordinate_of(x) + 0.5))}); },
      real, simplicial, word_ball(1, 4), line_points(-3, 3, 0.25));
  CHECK(nearest.M <= 1.0);
}

TEST_CASE("minimal subtree balls") {
  const QuasiActionSpec z2 = zn_tree(2);
  const MinimalSubtreeBall axis = minimal_subtree_ball(z2, z2.basepoint, 4);
  CHECK(axis.subtree.vertices.size() == 17);
  CHECK(axis.orbit_density == 1.0);

  const QuasiActionSpec star = finite_star(3);
  const MinimalSubtreeBall bounded = minimal_subtree_ball(star, star.basepoint, 3);
  CHECK(bounded.subtree.vertices.size() == 4);
  CHECK(bounded.orbit_density == 1.0);

  const QuasiActionSpec f2 = f2_on_t4();
  const MinimalSubtreeBall whole = minimal_subtree_ball(f2, f2.basepoint, 3);
  CHECK(whole.subtree.vertices.size() == whole.host.data.points.size());
  CHECK(whole.orbit_density == 0.0);

  CHECK_THROWS_AS(minimal_subtree_ball(brooks_line(w("ab")), 0.0, 2), Error);
}

TEST_CASE("coarse connected orbits are dense in their minimal subtree") {
  for (const QuasiActionSpec& spec : {f2_on_t4(), dihedral_line(), zn_tree(3), dihedral_hairy()}) {
    const MinimalSubtreeBall m = minimal_subtree_ball(spec, spec.basepoint, 3);
    const OrbitBall o = quasi_orbit(spec, spec.basepoint, 3);
    const double c = coarse_connectivity_constant(o.metric);
    CHECK(m.orbit_density <= std::ceil(c / 2));
  }
}

TEST_CASE("trichotomy on the corpus") {
  const QuasiActionSpec star = finite_star(5);
  CHECK(classify_trichotomy(star, star.basepoint, 4, 8).verdict == Trichotomy::point);
  const QuasiActionSpec line = zn_tree(1);
  CHECK(classify_trichotomy(line, line.basepoint, 10, 8).verdict == Trichotomy::line);
  const QuasiActionSpec f2 = f2_on_t4();
  const TrichotomyReport bushy = classify_trichotomy(f2, f2.basepoint, 5, 12);
  CHECK(bushy.verdict == Trichotomy::bushy);
  REQUIRE(bushy.ends);
  for (std::size_t count : bushy.ends->counts) CHECK(count >= 3);
  const CosetTreeAction c = coset_tree({2, 3, 5});
  CHECK(classify_trichotomy(c.spec, c.spec.basepoint, 4, 12).verdict ==
        Trichotomy::not_coarse_connected);
}

TEST_CASE("trichotomy agrees with the ends of the tree for cobounded actions") {
  const QuasiActionSpec f2 = f2_on_t4();
  const auto t4 = materialise_ball(*f2.target, f2.basepoint, 8);
  CHECK(end_profile(t4.graph, 0, 8, {0, 1, 2, 3}).verdict == EndVerdict::three_or_more);
  CHECK(classify_trichotomy(f2, f2.basepoint, 5, 12).verdict == Trichotomy::bushy);
  const QuasiActionSpec line = zn_tree(1);
  const auto l = materialise_ball(*line.target, line.basepoint, 8);
  CHECK(end_profile(l.graph, 0, 8, {0, 1, 2, 3}).verdict == EndVerdict::two);
  CHECK(classify_trichotomy(line, line.basepoint, 10, 8).verdict == Trichotomy::line);
}

TEST_CASE("hyperbolic types") {
  auto type = [](const QuasiActionSpec& spec) {
    return classify_hyperbolic_type_tree(spec, word_ball(spec.rank, 2), spec.basepoint).type;
  };
  CHECK(type(zn_tree(1)) == HyperbolicType::lineal_plus);
  CHECK(type(dihedral_line()) == HyperbolicType::lineal_minus);
  CHECK(type(f2_on_t4()) == HyperbolicType::general);
  CHECK(type(finite_star(4)) == HyperbolicType::bounded);
  CHECK(type(coset_tree({2, 3, 5}).spec) == HyperbolicType::parabolic_suspect);
  CHECK_THROWS_AS(classify_hyperbolic_type_tree(f2_on_t4(), {}, CayleyTree::point_of(Word())),
                  Error);
}

TEST_CASE("trichotomy of conjugated actions matches the original") {
  const QuasiActionSpec c = conjugated(f2_on_t4(), "hair");
  CHECK(classify_trichotomy(c, c.basepoint, 4, 12).verdict == Trichotomy::bushy);
  const QuasiActionSpec fold = conjugated(zn_line(1.0), "fold");
  // the fold halves the hop count on the negative side, so R stays below it
  CHECK(classify_trichotomy(fold, fold.basepoint, 10, 4).verdict == Trichotomy::line);
}
