#pragma once

// Doubling and the abelianization bound for Roever-Nekrashevych groups.
//
// Given generators a_1..a_r of a self-similar group G over d letters and the
// classes in G_ab of their level-one states, the i-th column of A is the sum
// of the classes of the d states of a_i. After doubling to m*d letters the
// column sums are multiplied by m, and V_{md}(G)_ab is a quotient of
// Z^r / Im(I - mA) (with an extra Z/2 when m*d is odd).

#include <string>
#include <utility>
#include <vector>

#include "rover/affine.hpp"
#include "rover/numeric.hpp"
#include "rover/smith.hpp"
#include "rover/tree.hpp"

namespace rover::abel {

// Same states as g; the root permutation of each state becomes
// rho^{(+)m} and letter k*d + i follows the transition at i.
tree::Automaton doubling(tree::Automaton const& g, int m);

// The action on the subtree spanned by letters 1..d, for an automaton over
// a larger alphabet that preserves {1..d} at every state.
tree::Automaton restrict_letters(tree::Automaton const& g, int d);

struct WreathGenerator {
  std::string name;
  tree::Permutation perm;
  std::vector<std::vector<Integer>> state_classes;  // one r-vector per letter
};

struct WreathPresentation {
  int d = 2;
  std::vector<WreathGenerator> generators;

  std::size_t r() const noexcept { return generators.size(); }
  // Checks permutation degrees and class vector lengths.
  void validate() const;
};

// Level-one classes of automaton generators: a state equal to the identity
// has class 0, a state equal to generator j (or its inverse) has class
// e_j (or -e_j). Any other state is a DomainError.
WreathPresentation presentation_of(std::vector<std::pair<std::string, tree::Automaton>> const& gens);

// Level-one classes of the generators of an affine spec. The state (L, b')
// of g = (L, b) equals tau_{b' - b} g, and tau_{c / N^k} = t^-k tau_c t^k,
// so its class is e_g plus c credited to the unit translation generators.
WreathPresentation presentation_of(affine::AffineGroupSpec const& spec);

IntegerMatrix class_sum_matrix(WreathPresentation const& presentation);

IntegerMatrix relation_matrix(IntegerMatrix const& A, int m);  // I - mA

struct VAbBound {
  int m = 1;
  int alphabet = 0;       // m * d
  bool odd_case = false;  // extra order-two generator z
  IntegerMatrix relations;  // columns are relations
  AbelianGroup group;
};

VAbBound v_ab_presentation(WreathPresentation const& presentation, int m);

struct MinimalM {
  int m = 2;
  Integer det;
  VAbBound bound;
};

// Smallest even m >= 2 with det(I - mA) != 0.
MinimalM find_minimal_m(WreathPresentation const& presentation);

}  // namespace rover::abel
