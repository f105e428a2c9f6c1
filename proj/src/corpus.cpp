#include "qtreekit/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace qtreekit {

namespace {

std::shared_ptr<const SimplicialLine> simplicial_line() {
  static const auto line = std::make_shared<const SimplicialLine>();
  return line;
}

std::int64_t dihedral_map(int letter, std::int64_t n) {
  switch (letter) {
    case 1: return n + 2;
    case -1: return n - 2;
    default: return -n;  // t is an involution
  }
}

}  // namespace

QuasiActionSpec f2_on_t4() {
  auto tree = std::make_shared<const CayleyTree>(2);
  return make_genuine_action(
      "f2-on-t4", 2, tree,
      [](int letter, const Point& x) {
        return CayleyTree::point_of(Word::generator(letter) * CayleyTree::word_of(x));
      },
      tree->basepoint());
}

QuasiActionSpec zn_line(double k) {
  return make_genuine_action(
      "zn-line", 1, std::make_shared<const RealLine>(),
      [k](int letter, const Point& x) { return Point(coordinate_of(x) + (letter > 0 ? k : -k)); },
      0.0);
}

QuasiActionSpec zn_tree(long k) {
  return make_genuine_action(
      "zn-tree", 1, simplicial_line(),
      [k](int letter, const Point& x) {
        return Point(Label{label_of(x)[0] + (letter > 0 ? k : -k)});
      },
      Label{0});
}

QuasiActionSpec z2_theta() {
  QuasiActionSpec spec = translation_action(homomorphism({1.0, std::sqrt(2.0)}));
  spec.name = "z2-theta";
  return spec;
}

QuasiActionSpec dihedral_line() {
  return make_genuine_action(
      "dihedral-line", 2, simplicial_line(),
      [](int letter, const Point& x) { return Point(Label{dihedral_map(letter, label_of(x)[0])}); },
      Label{0});
}

QuasiActionSpec dihedral_hairy() {
  auto tree = std::make_shared<const HairyTree>(simplicial_line(), 1);
  return make_genuine_action(
      "dihedral-hairy", 2, tree,
      [tree](int letter, const Point& x) {
        const std::int64_t n = label_of(tree->foot(x))[0];
        return tree->attach(Label{dihedral_map(letter, n)}, tree->depth(x));
      },
      tree->basepoint());
}

QuasiActionSpec z_hairy_offaxis() {
  auto tree = std::make_shared<const HairyTree>(simplicial_line(), 1);
  return make_genuine_action(
      "z-hairy-offaxis", 1, tree,
      [tree](int letter, const Point& x) {
        const std::int64_t n = label_of(tree->foot(x))[0];
        return tree->attach(Label{n + (letter > 0 ? 1 : -1)}, tree->depth(x));
      },
      tree->attach(Label{0}, 1));
}

QuasiActionSpec finite_star(int arms) {
  auto star = std::make_shared<const StarTree>(arms, 2);
  return make_genuine_action(
      "finite-star", 1, star,
      [arms](int letter, const Point& x) {
        const Label& v = label_of(x);
        if (v[1] == 0) return x;
        const std::int64_t step = letter > 0 ? 1 : arms - 1;
        return Point(Label{(v[0] + step) % arms, v[1]});
      },
      Label{0, 1});
}

QuasiActionSpec finite_coset(const std::vector<int>& orders) {
  return coset_tree(orders, false).spec;
}

QuasiActionSpec brooks_line(const Word& w) {
  QuasiActionSpec spec = translation_action(brooks(w));
  spec.name = "brooks-line";
  return spec;
}

Word rewrite_in_subgroup(const Word& h, int t) {
  // Schreier transversal {e, t}; free basis x = o, y = t o t^-1, z = t^2.
  Word out;
  bool odd = false;
  for (int l : h.letters()) {
    const bool is_t = std::abs(l) == t;
    int letter = 0;
    if (is_t) {
      if (odd && l > 0) letter = 3;
      if (!odd && l < 0) letter = -3;
      odd = !odd;
    } else {
      letter = (odd ? 2 : 1) * (l > 0 ? 1 : -1);
    }
    if (letter != 0) out = out * Word({letter});
  }
  if (odd) throw Error("word " + h.to_string() + " is not in the subgroup");
  return out;
}

DihedralSpec dihedral_qm_spec(const Word& w, const Word& t) {
  if (t.length() != 1) throw Error("dihedral-qm needs t to be a single generator letter");
  const int s = std::abs(t.letters()[0]);
  if (s > 2) throw Error("dihedral-qm acts through F2; t must be a or b");
  DihedralSpec spec;
  spec.rank = 2;
  spec.t = t;
  spec.in_H = parity_membership({s});
  // p is homogeneous on H but not invariant under conjugation by t, so
  // q = (p - p(t . t^-1)) / 2 is antisymmetric and non-zero.
  const QuasiMorphism p = homogenised(brooks(w, 3));
  const Word t_inv = t.inverse();
  spec.q = custom_quasimorphism("anti(" + p.name + ")", 2, [p, s, t, t_inv](const Word& h) {
    return (p(rewrite_in_subgroup(h, s)) - p(rewrite_in_subgroup(t * h * t_inv, s))) / 2.0;
  });
  return spec;
}

QuasiActionSpec dihedral_qm(const Word& w, const Word& t) {
  return dihedral_action(dihedral_qm_spec(w, t));
}

QuasiActionSpec conjugated(const QuasiActionSpec& base, const std::string& qi) {
  QuasiInversePair pair;
  if (qi == "fold") {
    if (!base.target->is_line()) throw Error("qi 'fold' needs an action on the real line");
    pair.target = base.target;
    pair.q = [](const Point& x) {
      const double v = coordinate_of(x);
      return Point(v >= 0 ? 2.0 * v : v);
    };
    pair.r = [](const Point& y) {
      const double v = coordinate_of(y);
      return Point(v >= 0 ? v / 2.0 : v);
    };
    for (int i = -20; i <= 20; ++i) {
      pair.x_sample.emplace_back(i / 2.0);
      pair.y_sample.emplace_back(i / 2.0);
    }
  } else if (qi == "hair") {
    auto tree = std::dynamic_pointer_cast<const LazyTree>(base.target);
    if (!tree) throw Error("qi 'hair' needs an action on a tree");
    auto hairy = std::make_shared<const HairyTree>(tree, 1);
    pair.target = hairy;
    pair.q = [hairy](const Point& x) { return hairy->attach(x, 0); };
    pair.r = [hairy](const Point& y) { return hairy->foot(y); };
    pair.x_sample = materialise_ball(*tree, base.basepoint, 3).points;
    pair.y_sample = materialise_ball(*hairy, hairy->attach(base.basepoint, 0), 3).points;
  } else {
    throw Error("unknown quasi-isometry '" + qi + "' (expected fold or hair)");
  }
  QuasiActionSpec spec = conjugate_quasi_action(base, pair);
  spec.name = "conjugated[" + base.name + "," + qi + "]";
  return spec;
}

QuasiActionSpec graph_action(const Graph& graph, const GeneratorMaps& maps) {
  std::vector<std::vector<PointId>> inverses;
  for (const auto& perm : maps) {
    std::vector<PointId> inv(perm.size());
    for (PointId v = 0; v < perm.size(); ++v) inv[perm[v]] = v;
    inverses.push_back(std::move(inv));
  }
  auto space = make_graph_space(graph);
  return make_genuine_action(
      "graph-action", static_cast<int>(maps.size()), space,
      [maps, inverses](int letter, const Point& x) {
        const auto v = static_cast<PointId>(label_of(x).at(0));
        const auto g = static_cast<std::size_t>(std::abs(letter) - 1);
        const PointId w = letter > 0 ? maps[g].at(v) : inverses[g].at(v);
        return Point(Label{static_cast<std::int64_t>(w)});
      },
      Label{0});
}

std::vector<std::string> named_actions() {
  return {"f2-on-t4",      "zn-line",     "zn-tree",        "z2-theta",      "dihedral-line",
          "dihedral-hairy", "z-hairy-offaxis", "finite-star", "coset-tree",    "finite-coset",
          "brooks-line",   "dihedral-qm", "conjugated",     "graph-action"};
}

QuasiActionSpec make_named_action(const ActionArgs& args) {
  const std::string& n = args.name;
  if (n == "f2-on-t4") return f2_on_t4();
  if (n == "zn-line") return zn_line(args.k);
  if (n == "zn-tree") {
    if (args.k != std::round(args.k) || args.k == 0) throw Error("zn-tree needs a non-zero integer k");
    return zn_tree(static_cast<long>(args.k));
  }
  if (n == "z2-theta") return z2_theta();
  if (n == "dihedral-line") return dihedral_line();
  if (n == "dihedral-hairy") return dihedral_hairy();
  if (n == "z-hairy-offaxis") return z_hairy_offaxis();
  if (n == "finite-star") {
    if (args.arms < 1) throw Error("finite-star needs at least one arm");
    return finite_star(args.arms);
  }
  if (n == "coset-tree") return coset_tree(args.primes, true).spec;
  if (n == "finite-coset") return finite_coset(args.primes);
  if (n == "brooks-line") return brooks_line(Word::parse(args.word));
  if (n == "dihedral-qm") return dihedral_qm(Word::parse(args.word), Word::parse(args.t));
  if (n == "conjugated") {
    if (args.base == "conjugated") throw Error("conjugated needs a non-conjugated base");
    ActionArgs base = args;
    base.name = args.base;
    return conjugated(make_named_action(base), args.qi);
  }
  if (n == "graph-action") {
    if (args.graph_path.empty() || args.gens_path.empty()) {
      throw Error("graph-action needs --graph and --gens files");
    }
    const Graph graph = ingest_graph(args.graph_path);
    return graph_action(graph, ingest_generator_maps(args.gens_path, graph));
  }
  throw Error("unknown action '" + n + "'");
}

}  // namespace qtreekit
