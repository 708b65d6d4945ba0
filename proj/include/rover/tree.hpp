#pragma once

// Finite words over X_d = {1, ..., d} and finite-state automorphisms of the
// d-ary rooted tree.
//
// An automorphism is stored as an automaton: each state carries the
// permutation it induces on the first level and, for every input letter x,
// the state reached after reading x. Reading the word x v from state s
// outputs perm(s)(x) followed by the output of next(s, x) on v, which is
// the wreath recursion f = rho(f)(f_1, ..., f_d) unrolled.
//
// Automata are values. Every operation returns a new automaton pruned to
// the states reachable from its initial state.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "rover/errors.hpp"

namespace rover::tree {

using Letter = int;               // 1..d
using Word = std::vector<Letter>;  // the empty word is the root

struct Alphabet {
  int d = 2;
  bool contains(Letter x) const noexcept { return x >= 1 && x <= d; }
  friend bool operator==(Alphabet, Alphabet) = default;
};

void check_word(Alphabet alphabet, Word const& w);

// Permutation of {1, ..., n} in one-line notation: images[i - 1] = sigma(i).
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int n);
  // Cycle (c_1 c_2 ... c_k) on n points.
  static Permutation cycle(int n, std::vector<int> const& points);

  int size() const noexcept { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[static_cast<std::size_t>(i - 1)]; }
  std::vector<int> const& images() const noexcept { return images_; }

  // (this * other)(i) = this(other(i)).
  Permutation operator*(Permutation const& other) const;
  Permutation inverse() const;
  bool is_identity() const noexcept;
  // +1 for even permutations, -1 for odd ones.
  int sign() const;

  // sigma^{(+)m} on m * size() points: k*d + i -> k*d + sigma(i).
  Permutation repeated(int m) const;

  friend bool operator==(Permutation const&, Permutation const&) = default;
  friend auto operator<=>(Permutation const&, Permutation const&) = default;

 private:
  std::vector<int> images_;
};

std::string to_string(Permutation const& p);
std::string to_string(Word const& w);

struct State {
  std::string name;
  Permutation perm;
  std::vector<std::size_t> next;  // next[x - 1] = state after reading x
};

class Automaton {
 public:
  // Validates the table and prunes it to the states reachable from
  // `initial`. Throws DomainError on malformed input.
  Automaton(int d, std::vector<State> states, std::size_t initial);

  static Automaton identity(int d);
  // rho(f)(xv) = f(x) v: the root permutation sigma, trivial states.
  static Automaton rooted(Permutation const& sigma);
  // The binary odometer generalised to d letters: adds 1 to the d-adic
  // integer whose least significant digit is read first (letter x encodes
  // digit x - 1).
  static Automaton adding_machine(int d);

  int degree() const noexcept { return d_; }
  Alphabet alphabet() const noexcept { return Alphabet{d_}; }
  std::size_t size() const noexcept { return states_.size(); }
  std::vector<State> const& states() const noexcept { return states_; }
  State const& initial_state() const { return states_[initial_]; }
  // Always 0: construction renumbers the states in breadth-first order.
  std::size_t initial() const noexcept { return initial_; }

  // Same transition table, different initial state.
  Automaton with_initial(std::size_t state) const;
  Automaton renamed(std::vector<std::string> names) const;

 private:
  int d_;
  std::vector<State> states_;
  std::size_t initial_;
};

// rho(f) together with the level-one states f_1, ..., f_d.
std::pair<Permutation, std::vector<Automaton>> wreath_decompose(Automaton const& f);

// f^u, defined by f(uv) = f(u) f^u(v).
Automaton state_at(Automaton const& f, Word const& u);

Word act(Automaton const& f, Word const& w);

// compose(f, g) acts as f after g: act(compose(f, g), w) = act(f, act(g, w)).
Automaton compose(Automaton const& f, Automaton const& g);

Automaton invert(Automaton const& f);

// Decided by scanning the reachable states: f is trivial iff every one of
// them has the identity root permutation.
bool is_identity(Automaton const& f);

bool equals(Automaton const& f, Automaton const& g);

Automaton rooted(Permutation const& sigma);

// iota_u(f): acts as f below u and trivially off the cone at u.
Automaton iota(Word const& u, Automaton const& f);

}  // namespace rover::tree
