#pragma once

// Named actions used by the tests and the command line.

#include <optional>
#include <string>
#include <vector>

#include "qtreekit/actions.hpp"
#include "qtreekit/io.hpp"
#include "qtreekit/quasimorphisms.hpp"

namespace qtreekit {

// F2 on its Cayley tree by left multiplication.
QuasiActionSpec f2_on_t4();
// Z translating the real line by k.
QuasiActionSpec zn_line(double k);
// Z translating the simplicial line by k.
QuasiActionSpec zn_tree(long k);
// F2 -> Z^2 -> R with a -> 1, b -> sqrt(2).
QuasiActionSpec z2_theta();
// Infinite dihedral <a, t> on the simplicial line: a(n) = n + 2, t(n) = -n.
QuasiActionSpec dihedral_line();
// The same on the line with a hair of length 1 at every vertex.
QuasiActionSpec dihedral_hairy();
// Z translating the hairy line; basepoint at the tip of a hair.
QuasiActionSpec z_hairy_offaxis();
// Z/arms rotating a star with arms of length 2; basepoint on an arm.
QuasiActionSpec finite_star(int arms);
// Coset tree action of a finite product of cyclic groups (all generators
// available at every radius).
QuasiActionSpec finite_coset(const std::vector<int>& orders);
QuasiActionSpec brooks_line(const Word& w);
// Word of the even-t-parity subgroup H of F2 over its free basis
// x = o, y = t o t^-1, z = t^2 (generators 1, 2, 3); t is generator `t`.
Word rewrite_in_subgroup(const Word& h, int t);
// Dihedral quasi-action on the line with H the words of even t-parity and
// q(h) = (p(h) - p(t h t^-1)) / 2, p the homogenised Brooks quasi-morphism of
// w read over the basis of H (a = x, b = y, c = z).
DihedralSpec dihedral_qm_spec(const Word& w, const Word& t);
QuasiActionSpec dihedral_qm(const Word& w, const Word& t);
// Conjugate by "fold" (line: x -> 2x on x >= 0) or "hair" (tree -> tree with
// pendant edges).
QuasiActionSpec conjugated(const QuasiActionSpec& base, const std::string& qi);
QuasiActionSpec graph_action(const Graph& graph, const GeneratorMaps& maps);

struct ActionArgs {
  std::string name;
  double k = 1.0;
  std::vector<int> primes{2, 3, 5};
  int arms = 3;
  std::string word = "ab";
  std::string t = "b";
  std::string base = "f2-on-t4";
  std::string qi = "hair";
  std::string graph_path;
  std::string gens_path;
};

std::vector<std::string> named_actions();
QuasiActionSpec make_named_action(const ActionArgs& args);

}  // namespace qtreekit
