#include "qtreekit/quasimorphisms.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace qtreekit {

std::string to_string(QmKind kind) {
  switch (kind) {
    case QmKind::homomorphism: return "homomorphism";
    case QmKind::brooks: return "brooks";
    case QmKind::homogenised: return "homogenised";
    case QmKind::custom: return "custom";
  }
  return "custom";
}

QuasiMorphism homomorphism(std::vector<double> values) {
  if (values.empty()) throw Error("homomorphism needs at least one generator value");
  QuasiMorphism f;
  f.name = "hom";
  f.kind = QmKind::homomorphism;
  f.rank = static_cast<int>(values.size());
  f.declared_defect = 0.0;
  f.generator_values = values;
  f.eval = [values = std::move(values)](const Word& g) {
    double total = 0.0;
    for (int l : g.letters()) {
      const auto i = static_cast<std::size_t>(std::abs(l) - 1);
      if (i >= values.size()) throw Error("generator outside the homomorphism's rank");
      total += l > 0 ? values[i] : -values[i];
    }
    return total;
  };
  return f;
}

std::size_t count_occurrences(const Word& g, const Word& w) {
  const auto& hay = g.letters();
  const auto& needle = w.letters();
  if (needle.empty() || needle.size() > hay.size()) return 0;
  std::size_t count = 0;
  for (std::size_t i = 0; i + needle.size() <= hay.size(); ++i) {
    if (std::equal(needle.begin(), needle.end(), hay.begin() + static_cast<long>(i))) ++count;
  }
  return count;
}

QuasiMorphism brooks(const Word& w, int rank) {
  if (w.empty()) throw Error("brooks quasi-morphism needs a non-empty word");
  QuasiMorphism f;
  f.name = "brooks(" + w.to_string() + ")";
  f.kind = QmKind::brooks;
  f.rank = rank;
  f.eval = [w, winv = w.inverse()](const Word& g) {
    return static_cast<double>(count_occurrences(g, w)) -
           static_cast<double>(count_occurrences(g, winv));
  };
  return f;
}

QuasiMorphism custom_quasimorphism(std::string name, int rank,
                                   std::function<double(const Word&)> eval,
                                   std::optional<double> declared_defect) {
  QuasiMorphism f;
  f.name = std::move(name);
  f.kind = QmKind::custom;
  f.rank = rank;
  f.eval = std::move(eval);
  f.declared_defect = declared_defect;
  return f;
}

QuasiMorphism homogenised(const QuasiMorphism& f, long N) {
  if (N < 4) throw Error("homogenisation budget must be >= 4");
  if (f.kind == QmKind::homomorphism || f.kind == QmKind::homogenised) return f;
  struct Memo {
    std::mutex mutex;
    std::map<std::vector<int>, double> values;
  };
  auto memo = std::make_shared<Memo>();
  QuasiMorphism out;
  out.name = "homogenised(" + f.name + ")";
  out.kind = QmKind::homogenised;
  out.rank = f.rank;
  if (f.declared_defect) out.declared_defect = 2.0 * *f.declared_defect;
  out.eval = [base = f.eval, memo, N](const Word& g) {
    {
      std::lock_guard lock(memo->mutex);
      if (auto it = memo->values.find(g.letters()); it != memo->values.end()) return it->second;
    }
    const Word gN = g.pow(N);
    const double value = (base(gN * gN) - base(gN)) / static_cast<double>(N);
    std::lock_guard lock(memo->mutex);
    memo->values[g.letters()] = value;
    return value;
  };
  return out;
}

DefectFit fit_defect(const QuasiMorphism& f, std::size_t radius) {
  if (radius < 1) throw Error("fit_defect needs radius >= 1");
  const std::vector<Word> words = word_ball(f.rank, radius);
  std::vector<double> values;
  values.reserve(words.size());
  for (const Word& g : words) values.push_back(f(g));
  DefectFit fit;
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (std::size_t j = 0; j < words.size(); ++j) {
      const double d = std::abs(f(words[i] * words[j]) - values[i] - values[j]);
      // rounding noise from irrational generator values is not defect
      const double noise = kTolerance * (1.0 + std::abs(values[i]) + std::abs(values[j]));
      if (d > noise && d > fit.defect) fit = DefectFit{d, words[i], words[j]};
    }
  }
  return fit;
}

double homogenise(const QuasiMorphism& f, const Word& g, long N) {
  if (N < 4) throw Error("homogenisation budget must be >= 4");
  return f(g.pow(N)) / static_cast<double>(N);
}

BavardFit fit_bavard(const QuasiMorphism& B, std::size_t radius, double tolerance) {
  for (const Word& g : word_ball(B.rank, 2)) {
    const double gap = std::abs(B(g * g) - 2.0 * B(g));
    if (gap > tolerance) {
      throw Error(B.name + " is not homogenised: |B(g^2) - 2B(g)| = " + std::to_string(gap) +
                  " at g = " + g.to_string());
    }
  }
  const std::vector<Word> words = word_ball(B.rank, radius);
  BavardFit fit;
  for (const Word& g : words) {
    const double bg = std::abs(B(g));
    for (const Word& h : words) {
      const double v = std::abs(B(commutator(g, h)));
      const double noise = kTolerance * (1.0 + 2.0 * bg + 2.0 * std::abs(B(h)));
      if (v > noise && v > fit.sup) fit = BavardFit{v, g, h};
    }
  }
  return fit;
}

QuasiActionSpec translation_action(const QuasiMorphism& f) {
  auto line = std::make_shared<const RealLine>();
  const std::string name = "translation[" + f.name + "]";
  if (f.kind == QmKind::homomorphism) {
    return make_genuine_action(
        name, f.rank, line,
        [values = f.generator_values](int letter, const Point& x) {
          const double v = values.at(static_cast<std::size_t>(std::abs(letter) - 1));
          return Point(coordinate_of(x) + (letter > 0 ? v : -v));
        },
        0.0);
  }
  std::optional<QieConstants> declared;
  if (f.declared_defect) declared = QieConstants{1.0, 0.0, *f.declared_defect};
  return make_quasi_action(
      name, f.rank, line,
      [eval = f.eval](const Word& g, const Point& x) { return Point(coordinate_of(x) + eval(g)); },
      0.0, declared);
}

std::function<bool(const Word&)> parity_membership(std::vector<int> designated) {
  return [designated = std::move(designated)](const Word& g) {
    std::size_t count = 0;
    for (int d : designated) count += g.letter_count(d);
    return count % 2 == 0;
  };
}

QuasiActionSpec dihedral_action(const DihedralSpec& spec) {
  if (!spec.in_H) throw Error("dihedral spec needs a membership predicate");
  if (spec.in_H(spec.t)) throw Error("t = " + spec.t.to_string() + " lies in H");
  if (!spec.in_H(Word())) throw Error("membership predicate excludes the identity");
  const Word t_inv = spec.t.inverse();
  auto evaluator = [spec, t_inv](const Word& g, const Point& x) -> Point {
    const double y = coordinate_of(x);
    if (spec.in_H(g)) return y + spec.q(g);
    if (spec.t_acts_trivially && g == spec.t) return y;
    const Word h = t_inv * g;
    if (!spec.in_H(h)) {
      throw Error("word " + g.to_string() + " is in neither H nor tH; membership is inconsistent");
    }
    return -y - spec.q(h);
  };
  return make_quasi_action("dihedral[" + spec.q.name + "," + spec.t.to_string() + "]", spec.rank,
                           std::make_shared<const RealLine>(), evaluator, 0.0);
}

AntisymmetryReport check_antisymmetry(const DihedralSpec& spec, std::size_t radius) {
  const Word t_inv = spec.t.inverse();
  AntisymmetryReport report;
  for (const Word& g : word_ball(spec.rank, radius)) {
    ++report.sampled;
    if (spec.in_H(g)) {
      const Word conj = spec.t * g * t_inv;
      if (!spec.in_H(conj)) throw Error("t h t^-1 left H at h = " + g.to_string());
      const double v = std::abs(spec.q(conj) + spec.q(g));
      if (v > report.antisymmetry) {
        report.antisymmetry = v;
        report.witness = g;
      }
    } else {
      report.square_max = std::max(report.square_max, std::abs(spec.q(g * g)));
    }
  }
  return report;
}

std::string to_string(LineReductionVerdict verdict) {
  switch (verdict) {
    case LineReductionVerdict::reducible: return "reducible-to-isometric-line";
    case LineReductionVerdict::obstructed: return "obstructed";
    case LineReductionVerdict::undecided: return "undecided";
  }
  return "undecided";
}

double homogenised_displacement(const QuasiActionSpec& spec, const Word& g, double x0, long N) {
  if (!spec.target->is_line()) throw Error("homogenised displacement needs a line target");
  const Word gN = g.pow(N);
  const double a = coordinate_of(apply(spec, gN, x0));
  const double b = coordinate_of(apply(spec, gN * gN, x0));
  return (b - a) / static_cast<double>(N);
}

LineReduction classify_line_reduction(const QuasiActionSpec& spec, std::size_t radius) {
  if (!spec.target->is_line()) throw Error("line reduction needs a quasi-action on the line");
  const TrichotomyReport tri = classify_trichotomy(spec, spec.basepoint, radius, 12.0);
  if (tri.verdict != Trichotomy::line) {
    throw Error("line reduction needs a line verdict, got " + to_string(tri.verdict));
  }
  const double x0 = coordinate_of(spec.basepoint);
  auto disp = [&](const Word& g) { return homogenised_displacement(spec, g, x0); };

  LineReduction out;
  double scale = 0.0;
  for (int i = 1; i <= spec.rank; ++i) {
    out.theta.push_back(disp(Word::generator(i)));
    scale = std::max(scale, std::abs(out.theta.back()));
  }
  const double tol = kLineTolerance * (1.0 + scale);
  auto predicted = [&](const Word& g) {
    double v = 0.0;
    for (int i = 1; i <= spec.rank; ++i) {
      v += out.theta[static_cast<std::size_t>(i - 1)] * static_cast<double>(g.exponent_sum(i));
    }
    return v;
  };

  for (const Word& g : word_ball(spec.rank, 4)) {
    out.residual = std::max(out.residual, std::abs(disp(g) - predicted(g)));
  }
  const std::vector<Word> ball = word_ball(spec.rank, radius);
  out.kernel_matches = true;
  for (const Word& g : ball) {
    const bool elliptic = std::abs(disp(g)) <= tol;
    if (elliptic) out.elliptic.push_back(g);
    if (elliptic != (std::abs(predicted(g)) <= tol)) out.kernel_matches = false;
  }
  out.simplicial = std::all_of(out.theta.begin(), out.theta.end(), [](double v) {
    return std::abs(v - std::round(v)) <= 1e-9;
  });

  if (out.residual <= tol && out.kernel_matches) {
    out.verdict = LineReductionVerdict::reducible;
    return out;
  }
  BavardFit witness;
  for (const Word& g : ball) {
    for (const Word& h : ball) {
      const double v = std::abs(disp(commutator(g, h)));
      if (v > witness.sup) witness = BavardFit{v, g, h};
    }
  }
  if (witness.sup > tol) {
    out.verdict = LineReductionVerdict::obstructed;
    out.bavard = witness;
  }
  out.simplicial = false;
  return out;
}

}  // namespace qtreekit
