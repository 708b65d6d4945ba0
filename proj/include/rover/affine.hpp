#pragma once

// Self-similar affine actions over Z[1/N].
//
// With p a prime not dividing N, Z[1/N] sits inside the p-adic integers and
// the affine group Z[1/N]^n x| GL_n(Z[1/N]) acts on the tree whose letters
// are the digit vectors {0, ..., p-1}^n: an infinite word x_0 x_1 ... is the
// p-adic vector sum p^i x_i. The state of v -> Av + b at the letter x is
// v -> Av + b', where Ax + b = x' + p b' and x' is the residue of Ax + b
// modulo p. Dividing by p stays inside Z[1/N] because p does not divide N.

#include <cstddef>
#include <string>
#include <vector>

#include "rover/numeric.hpp"
#include "rover/tree.hpp"

namespace rover::affine {

// num / N^k, normalised so that k == 0 or N does not divide num.
struct RationalN {
  Integer num;
  unsigned k = 0;
  friend bool operator==(RationalN const&, RationalN const&) = default;
};

// The ring Z[1/N].
class RingZN {
 public:
  explicit RingZN(Integer N);

  Integer const& N() const noexcept { return N_; }
  std::vector<Integer> const& primes() const noexcept { return primes_; }

  bool contains(Rational const& r) const;
  // Units are +-(products of primes dividing N).
  bool is_unit(Rational const& r) const;
  // Throws DomainError when r is not in the ring.
  RationalN decompose(Rational const& r) const;
  Rational value(RationalN const& r) const;

  // A vector v written as c / N^k with integer c and minimal common k.
  struct ScaledVector {
    std::vector<Integer> numerators;
    unsigned k = 0;
  };
  ScaledVector decompose(std::vector<Rational> const& v) const;

 private:
  Integer N_;
  std::vector<Integer> primes_;
};

// Residue of r in Z_p modulo p. Throws DomainError when p divides the
// denominator of r.
int reduce_mod_p(Rational const& r, int p);
// num * (N^{-1} mod p)^k mod p. Throws DomainError when p divides N.
int reduce_mod_p(RationalN const& r, Integer const& N, int p);

// The alphabet {0, ..., p-1}^n, identified with 1..p^n by lexicographic
// order: index = 1 + sum_i tuple[i] * p^(n-1-i).
struct TreeShape {
  int p = 2;
  int n = 1;
  int degree() const;
  friend bool operator==(TreeShape, TreeShape) = default;
};

using Digits = std::vector<int>;

tree::Letter letter_index(TreeShape shape, Digits const& tuple);
Digits letter_tuple(TreeShape shape, tree::Letter index);
std::string to_string(Digits const& tuple);

// v -> A v + b.
struct AffineMap {
  RationalMatrix A;
  std::vector<Rational> b;

  static AffineMap identity(std::size_t n);
  static AffineMap translation(std::vector<Rational> b);
  static AffineMap linear(RationalMatrix A);

  std::size_t dimension() const noexcept { return b.size(); }
  std::vector<Rational> apply(std::vector<Rational> const& v) const;
  // (*this)(other(v)).
  AffineMap operator*(AffineMap const& other) const;
  AffineMap inverse() const;
  bool is_identity() const;

  friend bool operator==(AffineMap const&, AffineMap const&) = default;
};

std::string to_string(AffineMap const& g);
// Deterministic text key, used to intern maps in ordered containers.
std::string key(AffineMap const& g);

struct AffineState {
  Digits image;     // x'
  AffineMap state;  // g^x = (A, b')
};

AffineState affine_state(AffineMap const& g, Digits const& x, int p);

std::vector<Digits> affine_act(AffineMap const& g, std::vector<Digits> const& word, int p);

inline constexpr std::size_t kDefaultStateCap = 1'000'000;

// Closure of {g} under taking states, in breadth-first order starting with g.
// Throws CapExceeded when more than `cap` distinct states appear.
std::vector<AffineMap> state_closure(AffineMap const& g, TreeShape shape,
                                     std::size_t cap = kDefaultStateCap);

// The canonical retraction Z[1/N]^n x| H -> H: the linear part.
RationalMatrix persistent_retract(AffineMap const& g);

struct NamedMap {
  std::string name;
  AffineMap map;
};

struct AffineGroupSpec {
  int n = 1;
  Integer N = 1;
  int p = 2;
  std::vector<NamedMap> generators;
  std::vector<std::string> retraction_target;

  TreeShape shape() const { return TreeShape{p, n}; }
  int degree() const { return shape().degree(); }
  RingZN ring() const { return RingZN(N); }
  AffineMap const& generator(std::string const& name) const;
  std::size_t generator_index(std::string const& name) const;

  // p prime, p does not divide N, every entry in Z[1/N], linear parts
  // invertible over Z[1/N], retraction targets name generators.
  void validate() const;
};

struct NamedMatrix {
  std::string name;
  RationalMatrix matrix;
};

struct Embedding {
  std::size_t dimension = 0;
  std::vector<RationalMatrix> matrices;
};

// A -> diag(A, det(A)^-1), applied once when n + 1 is odd and twice
// otherwise, so that the output dimension is odd and every output has
// determinant 1. `n` is the input dimension (needed for an empty list).
Embedding j_embed_odd(std::vector<RationalMatrix> const& generators, std::size_t n);

struct RingChoice {
  Integer N;
  int p = 2;
};

// N is the product of the distinct primes dividing an entry denominator of
// a generator or of its inverse, or dividing a determinant; p is the
// smallest prime not dividing N.
RingChoice choose_N_p(std::vector<RationalMatrix> const& generators);

// Generators tau1..taun (unit translations), t = (diag(N), 0) and (M, 0)
// for every matrix M of Q. The Q generators are the retraction target.
AffineGroupSpec build_gamma(std::vector<NamedMatrix> const& q_generators, int n,
                            Integer const& N, int p);

// Projection H = <Q, diag(N)> -> Q for a spec whose retraction target has
// determinant +-1: L = N^k q with |det L| = N^(kn), so q = L / N^k.
class QuotientProjection {
 public:
  explicit QuotientProjection(AffineGroupSpec const& spec);
  RationalMatrix operator()(RationalMatrix const& linear) const;

 private:
  int n_;
  Integer N_;
};

// The finite-state automaton of g: states are state_closure(g), the root
// permutation of a state maps letter x to x', transitions follow g^x.
struct AffineAutomaton {
  tree::Automaton automaton;
  std::vector<AffineMap> state_maps;  // indexed like automaton.states()
};

// Throws DomainError when A is not invertible over Z_p.
AffineAutomaton to_automaton(AffineMap const& g, TreeShape shape,
                             std::size_t cap = kDefaultStateCap);

}  // namespace rover::affine
