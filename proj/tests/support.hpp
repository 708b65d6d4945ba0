#pragma once

// Independent oracles and random generators shared by the test suites.
// Nothing here calls the code under test except to build inputs.

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include "rover/numeric.hpp"
#include "rover/tree.hpp"

namespace support {

using rover::Integer;
using rover::Rational;

inline rover::tree::Permutation random_permutation(int n, std::mt19937_64& rng) {
  std::vector<int> images(static_cast<std::size_t>(n));
  std::iota(images.begin(), images.end(), 1);
  std::shuffle(images.begin(), images.end(), rng);
  return rover::tree::Permutation(images);
}

// Random table with up to `max_states` states; state 0 is initial.
inline rover::tree::Automaton random_automaton(int d, int max_states, std::mt19937_64& rng) {
  int const k = std::uniform_int_distribution<int>(1, max_states)(rng);
  std::vector<rover::tree::State> states;
  for (int s = 0; s < k; ++s) {
    rover::tree::State state{"q" + std::to_string(s), random_permutation(d, rng), {}};
    for (int x = 0; x < d; ++x) {
      state.next.push_back(std::uniform_int_distribution<std::size_t>(0, static_cast<std::size_t>(k - 1))(rng));
    }
    states.push_back(std::move(state));
  }
  return rover::tree::Automaton(d, std::move(states), 0);
}

// Direct evaluation of the table, one letter at a time.
inline rover::tree::Word run_table(rover::tree::Automaton const& f, rover::tree::Word const& w) {
  rover::tree::Word out;
  std::size_t s = f.initial();
  for (int x : w) {
    auto const& state = f.states()[s];
    out.push_back(state.perm(x));
    s = state.next[static_cast<std::size_t>(x - 1)];
  }
  return out;
}

inline std::vector<rover::tree::Word> all_words(int d, int length) {
  std::vector<rover::tree::Word> out{{}};
  for (int k = 0; k < length; ++k) {
    std::vector<rover::tree::Word> next;
    for (auto const& w : out) {
      for (int x = 1; x <= d; ++x) {
        auto v = w;
        v.push_back(x);
        next.push_back(std::move(v));
      }
    }
    out = std::move(next);
  }
  return out;
}

inline rover::tree::Word random_word(int d, std::size_t length, std::mt19937_64& rng) {
  rover::tree::Word w(length);
  for (auto& x : w) {
    x = std::uniform_int_distribution<int>(1, d)(rng);
  }
  return w;
}

// Word over {1..d}, least significant digit first, letter x encoding x - 1.
inline Integer word_value(rover::tree::Word const& w, int d) {
  Integer v = 0, scale = 1;
  for (int x : w) {
    v += scale * (x - 1);
    scale *= d;
  }
  return v;
}

inline rover::tree::Word value_word(Integer v, int d, std::size_t length) {
  Integer modulus = 1;
  for (std::size_t i = 0; i < length; ++i) {
    modulus *= d;
  }
  v %= modulus;
  if (v < 0) {
    v += modulus;
  }
  rover::tree::Word w;
  for (std::size_t i = 0; i < length; ++i) {
    Integer digit = v % d;
    w.push_back(static_cast<int>(digit.get_si()) + 1);
    v /= d;
  }
  return w;
}

// r as an element of Z / modulus, for r with denominator prime to modulus.
inline Integer residue(Rational const& r, Integer const& modulus) {
  Integer inv;
  Integer den = r.get_den();
  if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), modulus.get_mpz_t()) == 0) {
    throw std::domain_error("denominator not invertible");
  }
  Integer out = (r.get_num() * inv) % modulus;
  if (out < 0) {
    out += modulus;
  }
  return out;
}

// Base-p digits of A v + b truncated to `length` digits, where v is the
// p-adic vector sum p^i x_i of the word. Digits are vectors in {0..p-1}^n.
inline std::vector<std::vector<int>> affine_digits(rover::RationalMatrix const& A,
                                                   std::vector<Rational> const& b,
                                                   std::vector<std::vector<int>> const& word, int p) {
  std::size_t const n = b.size();
  Integer modulus = 1;
  for (std::size_t i = 0; i < word.size(); ++i) {
    modulus *= p;
  }
  std::vector<Rational> v(n, Rational(0));
  Integer scale = 1;
  for (auto const& x : word) {
    for (std::size_t i = 0; i < n; ++i) {
      v[i] += Rational(scale * x[i]);
    }
    scale *= p;
  }
  std::vector<Integer> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rational s = b[i];
    for (std::size_t j = 0; j < n; ++j) {
      s += A(i, j) * v[j];
    }
    y[i] = residue(s, modulus);
  }
  std::vector<std::vector<int>> out(word.size(), std::vector<int>(n));
  for (std::size_t k = 0; k < word.size(); ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      Integer digit = y[i] % p;
      out[k][i] = static_cast<int>(digit.get_si());
      y[i] /= p;
    }
  }
  return out;
}

// Lexicographic digits of a letter of the p^n-letter alphabet, most
// significant coordinate first.
inline std::vector<int> lex_digits(int letter, int p, int n) {
  std::vector<int> out(static_cast<std::size_t>(n));
  int v = letter - 1;
  for (int i = n - 1; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = v % p;
    v /= p;
  }
  return out;
}

inline int lex_letter(std::vector<int> const& digits, int p) {
  int v = 0;
  for (int x : digits) {
    v = v * p + x;
  }
  return v + 1;
}

// Image of a letter word under v -> A v + b, through affine_digits.
inline rover::tree::Word affine_word_oracle(rover::RationalMatrix const& A,
                                            std::vector<Rational> const& b,
                                            rover::tree::Word const& w, int p) {
  int const n = static_cast<int>(b.size());
  std::vector<std::vector<int>> digits;
  for (int x : w) {
    digits.push_back(lex_digits(x, p, n));
  }
  rover::tree::Word out;
  for (auto const& y : affine_digits(A, b, digits, p)) {
    out.push_back(lex_letter(y, p));
  }
  return out;
}

struct RandomAffine {
  rover::Integer N;
  int p = 2;
  rover::RationalMatrix A;
  std::vector<Rational> b;
};

// Entries num / N^k with |num| <= 10 and k <= 1; p is a random prime below
// 12 not dividing N.
inline RandomAffine random_affine(std::size_t n, std::mt19937_64& rng) {
  static int const primes[] = {2, 3, 5, 7, 11};
  RandomAffine out;
  int N = std::uniform_int_distribution<int>(1, 30)(rng);
  std::vector<int> admissible;
  for (int q : primes) {
    if (N % q != 0) {
      admissible.push_back(q);
    }
  }
  out.N = N;
  out.p = admissible[std::uniform_int_distribution<std::size_t>(0, admissible.size() - 1)(rng)];
  std::uniform_int_distribution<int> num(-10, 10);
  std::uniform_int_distribution<int> exponent(0, N > 1 ? 1 : 0);
  auto entry = [&] {
    Rational r(num(rng));
    if (exponent(rng) == 1) {
      r /= N;
    }
    return r;
  };
  out.A = rover::RationalMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out.A(i, j) = entry();
    }
    out.b.push_back(entry());
  }
  return out;
}

// gcd of all k x k minors, by cofactor expansion.
inline Integer minor_gcd(rover::IntegerMatrix const& M, std::size_t k) {
  std::function<Integer(std::vector<std::size_t> const&, std::vector<std::size_t> const&)> det =
      [&](std::vector<std::size_t> const& rows, std::vector<std::size_t> const& cols) -> Integer {
    if (rows.empty()) {
      return 1;
    }
    Integer out = 0;
    std::vector<std::size_t> rest(rows.begin() + 1, rows.end());
    for (std::size_t c = 0; c < cols.size(); ++c) {
      std::vector<std::size_t> other = cols;
      other.erase(other.begin() + static_cast<std::ptrdiff_t>(c));
      Integer term = M(rows[0], cols[c]) * det(rest, other);
      out += c % 2 == 0 ? term : Integer(-term);
    }
    return out;
  };
  std::function<void(std::size_t, std::size_t, std::vector<std::size_t>&,
                     std::vector<std::vector<std::size_t>>&)>
      choose = [&](std::size_t from, std::size_t total, std::vector<std::size_t>& cur,
                   std::vector<std::vector<std::size_t>>& out) {
        if (cur.size() == k) {
          out.push_back(cur);
          return;
        }
        for (std::size_t i = from; i < total; ++i) {
          cur.push_back(i);
          choose(i + 1, total, cur, out);
          cur.pop_back();
        }
      };
  std::vector<std::vector<std::size_t>> row_sets, col_sets;
  std::vector<std::size_t> cur;
  choose(0, M.rows(), cur, row_sets);
  choose(0, M.cols(), cur, col_sets);
  Integer g = 0;
  for (auto const& r : row_sets) {
    for (auto const& c : col_sets) {
      Integer x = det(r, c);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    }
  }
  return g;
}

inline rover::IntegerMatrix random_integer_matrix(std::size_t rows, std::size_t cols, int bound,
                                                  std::mt19937_64& rng) {
  rover::IntegerMatrix M(rows, cols);
  std::uniform_int_distribution<int> dist(-bound, bound);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      M(i, j) = dist(rng);
    }
  }
  return M;
}

}  // namespace support
