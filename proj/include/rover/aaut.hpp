#pragma once

// Almost automorphisms of the d-ary tree as tree pair triples.
//
// A triple [F-, sigma(f_1, ..., f_n), F+] maps the cone below the i-th leaf
// v_i of F+ onto the cone below the sigma(i)-th leaf u_sigma(i) of F-,
// twisted by f_i: v_i w -> u_sigma(i) f_i(w). Leaves are numbered
// tree by tree, left to right. Elements act on the left, so multiply(x, y)
// is "y, then x".

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "rover/affine.hpp"
#include "rover/tree.hpp"

namespace rover::aaut {

struct LeafAddress {
  std::size_t root = 0;
  tree::Word path;
  friend auto operator<=>(LeafAddress const&, LeafAddress const&) = default;
};

// Ordered sequence of complete d-ary trees, each stored as a preorder
// string over C (caret) and L (leaf).
class Forest {
 public:
  Forest() = default;
  Forest(int d, std::vector<std::string> trees);

  static Forest trivial(int d, std::size_t roots);
  static Forest caret(int d);
  // "CLL+L" style text.
  static Forest parse(int d, std::string const& text);

  int degree() const noexcept { return d_; }
  std::size_t roots() const noexcept { return trees_.size(); }
  std::size_t leaves() const;
  std::size_t carets() const;
  bool is_tree() const noexcept { return trees_.size() == 1; }
  std::vector<std::string> const& trees() const noexcept { return trees_; }
  std::vector<LeafAddress> leaf_addresses() const;
  std::vector<LeafAddress> internal_addresses() const;
  std::size_t depth() const;

  // Attaches a caret to leaf i (1-indexed).
  Forest expanded(std::size_t i) const;

  friend bool operator==(Forest const&, Forest const&) = default;

 private:
  int d_ = 2;
  std::vector<std::string> trees_;
};

std::string to_string(Forest const& f);

struct AffineLabel {
  affine::AffineMap map;
  affine::TreeShape shape;
};

// An element of Aut(T_d) used as a twist: the identity, a finite-state
// automaton, or an affine map acting on the p^n-letter tree. Mixed
// arithmetic converts affine labels to automata via their state closure.
class Label {
 public:
  explicit Label(int d = 2);
  explicit Label(tree::Automaton automaton);
  Label(affine::AffineMap map, affine::TreeShape shape);

  int degree() const noexcept { return d_; }
  bool is_trivial() const noexcept { return std::holds_alternative<std::monostate>(value_); }
  bool is_affine() const noexcept { return std::holds_alternative<AffineLabel>(value_); }
  bool is_automaton() const noexcept { return std::holds_alternative<tree::Automaton>(value_); }
  AffineLabel const& affine() const;

  bool is_identity() const;
  // this after other.
  Label compose(Label const& other) const;
  Label inverse() const;
  std::pair<tree::Permutation, std::vector<Label>> wreath() const;
  tree::Word act(tree::Word const& w) const;
  tree::Automaton to_automaton() const;

 private:
  int d_;
  std::variant<std::monostate, tree::Automaton, AffineLabel> value_;
};

std::string to_string(Label const& f);

struct Triple {
  Forest minus;
  tree::Permutation sigma;
  std::vector<Label> labels;
  Forest plus;

  int degree() const noexcept { return plus.degree(); }
  std::size_t size() const noexcept { return labels.size(); }
  // Leaf counts, permutation degree and label alphabets agree.
  void validate() const;
};

std::string to_string(Triple const& x);

Triple identity_triple(int d, std::size_t roots = 1);
// [minus, sigma(1, ..., 1), plus]: an element of the Higman-Thompson groupoid.
Triple plain_triple(Forest minus, tree::Permutation sigma, Forest plus);
// [C, id(g, 1, ..., 1), C].
Triple iota1(Label const& g);

Triple simple_expand(Triple const& x, std::size_t i);

// Expansions x', y' of x and y with plus(x') == minus(y').
std::pair<Triple, Triple> expand_to_common(Triple x, Triple y);

Triple multiply(Triple const& x, Triple const& y);
Triple invert_triple(Triple const& x);

// Structural test: equal trees, trivial permutation, trivial labels. Any
// representative of the identity has this shape, because the cones of F+
// and F- it matches must have equal depth.
bool is_identity_triple(Triple const& x);
bool equals_triple(Triple const& x, Triple const& y);

// Image of a boundary word (truncated to |w| letters) under a tree pair.
// Throws DomainError if no leaf of the plus tree is a prefix of w.
tree::Word act_boundary(Triple const& x, tree::Word const& w);

// Trees with at most two carets: L, the caret C, and C with a second caret
// at leaf j.
std::vector<Forest> small_trees(int d);

// [T, sigma(1, ..., 1), T'] over trees with at most two carets. All
// permutations are used while the family has at most `limit` members,
// otherwise only the transposition (1 2) and the full cycle.
std::vector<Triple> v_generator_family(int d, std::size_t limit = 4096);

// --- quasi-retraction -------------------------------------------------------

// rho(x) = r(f_1), projected from H = <Q, diag(N)> to Q. Trivial labels
// retract to the identity; automaton labels are a DomainError.
RationalMatrix rho_quasiretract(Triple const& x, affine::QuotientProjection const& projection,
                                int n);

struct RhoCheckOptions {
  std::size_t samples = 200;       // per algebraic property
  std::size_t chains = 50;         // expansion chains
  std::size_t chain_length = 50;   // simple expansions per chain
  std::size_t word_length = 4;     // factors per random element
  std::uint64_t seed = 1;
};

struct RhoCheckReport {
  std::size_t expansion_checks = 0;
  std::size_t property1_checks = 0;
  std::size_t property2_checks = 0;
  std::vector<std::string> failures;
  bool passed() const noexcept { return failures.empty(); }
};

// Randomised checks of invariance under expansion, of
//   rho(iota1(g) x) in {rho(x), r(g) rho(x)}
// for generators g and their inverses, and of rho(y x) = rho(x) for y with
// trivial labels.
RhoCheckReport rho_property_check(affine::AffineGroupSpec const& spec,
                                  RhoCheckOptions const& options);

// Random element of V_d(G): a product of up to `length` factors drawn from
// iota1(generators)^{+-1} and the cone swap, the d-cycle and the caret
// shift of V_d.
Triple random_element(std::vector<Label> const& generators, int d, std::size_t length,
                      std::mt19937_64& rng);

}  // namespace rover::aaut
