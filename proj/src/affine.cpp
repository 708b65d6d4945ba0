#include "rover/affine.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace rover::affine {

using rover::to_string;

// --- Z[1/N] ---------------------------------------------------------------

RingZN::RingZN(Integer N) : N_(std::move(N)) {
  if (N_ < 1) {
    throw DomainError("N must be a positive integer, got " + to_string(N_));
  }
  if (N_ > 1) {
    primes_ = prime_divisors(N_);
  }
}

namespace {

// Strips every prime of `primes` from |x|; returns what is left.
Integer strip(Integer x, std::vector<Integer> const& primes) {
  x = abs(x);
  for (Integer const& q : primes) {
    while (x != 0 && x % q == 0) {
      x /= q;
    }
  }
  return x;
}

}  // namespace

bool RingZN::contains(Rational const& r) const { return strip(r.get_den(), primes_) == 1; }

bool RingZN::is_unit(Rational const& r) const {
  return r != 0 && contains(r) && strip(r.get_num(), primes_) == 1;
}

RationalN RingZN::decompose(Rational const& r) const {
  if (!contains(r)) {
    throw DomainError(to_string(r) + " is not in Z[1/" + to_string(N_) + "]");
  }
  RationalN out{r.get_num(), 0};
  Integer den = r.get_den();
  Integer scale = 1;
  while (den != 1) {
    // den divides a power of N, so multiplying by N eventually clears it.
    Rational scaled = r * Rational(N_ * scale);
    scale *= N_;
    ++out.k;
    den = scaled.get_den();
    out.num = scaled.get_num();
  }
  return out;
}

Rational RingZN::value(RationalN const& r) const {
  Integer power;
  mpz_pow_ui(power.get_mpz_t(), N_.get_mpz_t(), r.k);
  Rational out(r.num, power);
  out.canonicalize();
  return out;
}

RingZN::ScaledVector RingZN::decompose(std::vector<Rational> const& v) const {
  std::vector<RationalN> parts;
  parts.reserve(v.size());
  ScaledVector out;
  for (Rational const& x : v) {
    parts.push_back(decompose(x));
    out.k = std::max(out.k, parts.back().k);
  }
  for (RationalN const& part : parts) {
    Integer power;
    mpz_pow_ui(power.get_mpz_t(), N_.get_mpz_t(), out.k - part.k);
    out.numerators.push_back(part.num * power);
  }
  return out;
}

int reduce_mod_p(Rational const& r, int p) {
  Integer const P = p;
  if (r.get_den() % P == 0) {
    throw DomainError("p = " + std::to_string(p) + " divides the denominator of " + to_string(r));
  }
  Integer residue = mod_floor(r.get_num() * mod_inverse(r.get_den(), P), P);
  return static_cast<int>(residue.get_si());
}

int reduce_mod_p(RationalN const& r, Integer const& N, int p) {
  Integer const P = p;
  if (N % P == 0) {
    throw DomainError("p = " + std::to_string(p) + " divides N = " + to_string(N));
  }
  Integer inv = mod_inverse(N, P);
  Integer power;
  mpz_powm_ui(power.get_mpz_t(), inv.get_mpz_t(), r.k, P.get_mpz_t());
  return static_cast<int>(Integer(mod_floor(r.num * power, P)).get_si());
}

// --- the tree {0..p-1}^n ----------------------------------------------------

int TreeShape::degree() const {
  long long d = 1;
  for (int i = 0; i < n; ++i) {
    d *= p;
    if (d > (1LL << 30)) {
      throw DomainError("alphabet p^n too large");
    }
  }
  return static_cast<int>(d);
}

tree::Letter letter_index(TreeShape shape, Digits const& tuple) {
  if (tuple.size() != static_cast<std::size_t>(shape.n)) {
    throw DomainError("digit vector has the wrong length");
  }
  int index = 0;
  for (int digit : tuple) {
    if (digit < 0 || digit >= shape.p) {
      throw DomainError("digit " + std::to_string(digit) + " out of range");
    }
    index = index * shape.p + digit;
  }
  return index + 1;
}

Digits letter_tuple(TreeShape shape, tree::Letter index) {
  if (index < 1 || index > shape.degree()) {
    throw DomainError("letter " + std::to_string(index) + " out of range");
  }
  Digits tuple(static_cast<std::size_t>(shape.n));
  int rest = index - 1;
  for (int i = shape.n - 1; i >= 0; --i) {
    tuple[static_cast<std::size_t>(i)] = rest % shape.p;
    rest /= shape.p;
  }
  return tuple;
}

std::string to_string(Digits const& tuple) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    out << (i ? "," : "") << tuple[i];
  }
  out << ')';
  return out.str();
}

// --- affine maps ------------------------------------------------------------

AffineMap AffineMap::identity(std::size_t n) {
  return AffineMap{RationalMatrix::identity(n), std::vector<Rational>(n)};
}

AffineMap AffineMap::translation(std::vector<Rational> b) {
  std::size_t n = b.size();
  return AffineMap{RationalMatrix::identity(n), std::move(b)};
}

AffineMap AffineMap::linear(RationalMatrix A) {
  if (!A.is_square()) {
    throw DomainError("linear part must be square");
  }
  std::size_t n = A.rows();
  return AffineMap{std::move(A), std::vector<Rational>(n)};
}

std::vector<Rational> AffineMap::apply(std::vector<Rational> const& v) const {
  std::vector<Rational> out = A * v;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] += b[i];
  }
  return out;
}

AffineMap AffineMap::operator*(AffineMap const& other) const {
  if (dimension() != other.dimension()) {
    throw DomainError("composing affine maps of different dimensions");
  }
  return AffineMap{A * other.A, apply(other.b)};
}

AffineMap AffineMap::inverse() const {
  RationalMatrix inv = rover::inverse(A);
  std::vector<Rational> c = inv * b;
  for (auto& x : c) {
    x = -x;
  }
  return AffineMap{std::move(inv), std::move(c)};
}

bool AffineMap::is_identity() const {
  return A.is_identity() && std::all_of(b.begin(), b.end(), [](Rational const& x) { return x == 0; });
}

std::string to_string(AffineMap const& g) {
  std::ostringstream out;
  out << "A=[";
  for (std::size_t i = 0; i < g.A.rows(); ++i) {
    out << (i ? "; " : "");
    for (std::size_t j = 0; j < g.A.cols(); ++j) {
      out << (j ? " " : "") << to_string(g.A(i, j));
    }
  }
  out << "] b=(";
  for (std::size_t i = 0; i < g.b.size(); ++i) {
    out << (i ? " " : "") << to_string(g.b[i]);
  }
  out << ')';
  return out.str();
}

std::string key(AffineMap const& g) { return to_string(g); }

AffineState affine_state(AffineMap const& g, Digits const& x, int p) {
  if (x.size() != g.dimension()) {
    throw DomainError("digit vector has the wrong length");
  }
  std::vector<Rational> v(x.begin(), x.end());
  std::vector<Rational> y = g.apply(v);
  AffineState out{Digits(x.size()), AffineMap{g.A, std::vector<Rational>(x.size())}};
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i].get_den() % p == 0) {
      throw DomainError("inexact division by p = " + std::to_string(p) + " in " + to_string(g));
    }
    int residue = reduce_mod_p(y[i], p);
    out.image[i] = residue;
    out.state.b[i] = (y[i] - residue) / p;
  }
  return out;
}

std::vector<Digits> affine_act(AffineMap const& g, std::vector<Digits> const& word, int p) {
  std::vector<Digits> out;
  out.reserve(word.size());
  AffineMap current = g;
  for (Digits const& x : word) {
    for (int digit : x) {
      if (digit < 0 || digit >= p) {
        throw DomainError("digit " + std::to_string(digit) + " out of range");
      }
    }
    AffineState s = affine_state(current, x, p);
    out.push_back(std::move(s.image));
    current = std::move(s.state);
  }
  return out;
}

namespace {

struct Closure {
  std::vector<AffineMap> maps;
  std::vector<std::vector<std::size_t>> next;  // next[s][letter - 1]
  std::vector<std::vector<int>> perms;
};

struct TranslationLess {
  bool operator()(std::vector<Rational> const& a, std::vector<Rational> const& b) const {
    for (std::size_t i = 0; i < a.size(); ++i) {
      int const c = cmp(a[i], b[i]);
      if (c != 0) {
        return c < 0;
      }
    }
    return false;
  }
};

// Every state shares the linear part of g, so states are interned by their
// translation alone.
Closure closure(AffineMap const& g, TreeShape shape, std::size_t cap) {
  int const d = shape.degree();
  std::size_t const n = g.dimension();
  std::vector<std::vector<Rational>> shifted;  // A x for every letter x
  shifted.reserve(static_cast<std::size_t>(d));
  for (int x = 1; x <= d; ++x) {
    Digits const t = letter_tuple(shape, x);
    shifted.push_back(g.A * std::vector<Rational>(t.begin(), t.end()));
  }
  std::vector<std::vector<Rational>> translations{g.b};
  std::map<std::vector<Rational>, std::size_t, TranslationLess> index;
  index.emplace(g.b, 0);
  Closure c;
  Digits image(n);
  for (std::size_t head = 0; head < translations.size(); ++head) {
    std::vector<std::size_t> next(static_cast<std::size_t>(d));
    std::vector<int> perm(static_cast<std::size_t>(d));
    for (int x = 1; x <= d; ++x) {
      std::vector<Rational> b = shifted[static_cast<std::size_t>(x - 1)];
      for (std::size_t i = 0; i < n; ++i) {
        b[i] += translations[head][i];
        if (b[i].get_den() % shape.p == 0) {
          throw DomainError("inexact division by p = " + std::to_string(shape.p) + " in " +
                            to_string(AffineMap{g.A, translations[head]}));
        }
        image[i] = reduce_mod_p(b[i], shape.p);
        b[i] = (b[i] - image[i]) / shape.p;
      }
      perm[static_cast<std::size_t>(x - 1)] = letter_index(shape, image);
      auto [it, inserted] = index.try_emplace(b, translations.size());
      if (inserted) {
        if (translations.size() >= cap) {
          throw CapExceeded("state closure exceeded " + std::to_string(cap) + " states");
        }
        translations.push_back(std::move(b));
      }
      next[static_cast<std::size_t>(x - 1)] = it->second;
    }
    c.next.push_back(std::move(next));
    c.perms.push_back(std::move(perm));
  }
  c.maps.reserve(translations.size());
  for (auto& b : translations) {
    c.maps.push_back(AffineMap{g.A, std::move(b)});
  }
  return c;
}

}  // namespace

std::vector<AffineMap> state_closure(AffineMap const& g, TreeShape shape, std::size_t cap) {
  return closure(g, shape, cap).maps;
}

RationalMatrix persistent_retract(AffineMap const& g) { return g.A; }

AffineAutomaton to_automaton(AffineMap const& g, TreeShape shape, std::size_t cap) {
  if (reduce_mod_p(determinant(g.A), shape.p) == 0) {
    throw DomainError("linear part is singular modulo " + std::to_string(shape.p) +
                      ", so the map does not permute the tree");
  }
  Closure c = closure(g, shape, cap);
  std::vector<tree::State> states;
  states.reserve(c.maps.size());
  for (std::size_t i = 0; i < c.maps.size(); ++i) {
    states.push_back(
        tree::State{"s" + std::to_string(i), tree::Permutation(c.perms[i]), std::move(c.next[i])});
  }
  // Closure order is already breadth-first from g, so no state is renumbered.
  return AffineAutomaton{tree::Automaton(shape.degree(), std::move(states), 0), std::move(c.maps)};
}

// --- groups -----------------------------------------------------------------

AffineMap const& AffineGroupSpec::generator(std::string const& name) const {
  return generators[generator_index(name)].map;
}

std::size_t AffineGroupSpec::generator_index(std::string const& name) const {
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (generators[i].name == name) {
      return i;
    }
  }
  throw DomainError("unknown generator '" + name + "'");
}

void AffineGroupSpec::validate() const {
  if (n < 1) {
    throw DomainError("dimension must be positive");
  }
  if (!is_prime(Integer(p))) {
    throw DomainError("p = " + std::to_string(p) + " is not prime");
  }
  if (N < 1) {
    throw DomainError("N must be positive");
  }
  if (N % p == 0) {
    throw DomainError("p = " + std::to_string(p) + " divides N = " + to_string(N));
  }
  RingZN const R = ring();
  for (NamedMap const& g : generators) {
    if (g.map.dimension() != static_cast<std::size_t>(n) || g.map.A.rows() != g.map.dimension() ||
        !g.map.A.is_square()) {
      throw DomainError("generator '" + g.name + "' has the wrong dimension");
    }
    for (Rational const& x : g.map.A.data()) {
      if (!R.contains(x)) {
        throw DomainError("generator '" + g.name + "' has entry " + to_string(x) +
                          " outside Z[1/" + to_string(N) + "]");
      }
    }
    for (Rational const& x : g.map.b) {
      if (!R.contains(x)) {
        throw DomainError("generator '" + g.name + "' has entry " + to_string(x) +
                          " outside Z[1/" + to_string(N) + "]");
      }
    }
    if (!R.is_unit(determinant(g.map.A))) {
      throw DomainError("generator '" + g.name + "' is not invertible over Z[1/" + to_string(N) +
                        "]");
    }
  }
  std::vector<std::string> names;
  for (NamedMap const& g : generators) {
    if (std::find(names.begin(), names.end(), g.name) != names.end()) {
      throw DomainError("duplicate generator '" + g.name + "'");
    }
    names.push_back(g.name);
  }
  for (std::string const& name : retraction_target) {
    generator_index(name);
  }
}

Embedding j_embed_odd(std::vector<RationalMatrix> const& generators, std::size_t n) {
  int const rounds = (n + 1) % 2 == 1 ? 1 : 2;
  Embedding out{n, generators};
  for (int round = 0; round < rounds; ++round) {
    for (auto& A : out.matrices) {
      if (A.rows() != out.dimension || !A.is_square()) {
        throw DomainError("generator has the wrong dimension");
      }
      Rational det = determinant(A);
      if (det == 0) {
        throw DomainError("singular generator");
      }
      A = block_diagonal(A, RationalMatrix{{Rational(1) / det}});
    }
    ++out.dimension;
  }
  return out;
}

RingChoice choose_N_p(std::vector<RationalMatrix> const& generators) {
  std::vector<Integer> primes;
  auto add = [&primes](Integer const& x) {
    if (x != 0 && abs(x) != 1) {
      for (Integer const& q : prime_divisors(x)) {
        if (std::find(primes.begin(), primes.end(), q) == primes.end()) {
          primes.push_back(q);
        }
      }
    }
  };
  for (RationalMatrix const& A : generators) {
    Rational det = determinant(A);
    if (det == 0) {
      throw DomainError("singular generator");
    }
    add(det.get_num());
    add(det.get_den());
    for (Rational const& x : A.data()) {
      add(x.get_den());
    }
    RationalMatrix const A_inverse = inverse(A);
    for (Rational const& x : A_inverse.data()) {
      add(x.get_den());
    }
  }
  RingChoice out{1, 2};
  for (Integer const& q : primes) {
    out.N *= q;
  }
  while (out.N % out.p == 0) {
    do {
      ++out.p;
    } while (!is_prime(Integer(out.p)));
  }
  return out;
}

AffineGroupSpec build_gamma(std::vector<NamedMatrix> const& q_generators, int n,
                            Integer const& N, int p) {
  if (N < 2) {
    throw DomainError("N must be at least 2");
  }
  AffineGroupSpec spec;
  spec.n = n;
  spec.N = N;
  spec.p = p;
  auto const dim = static_cast<std::size_t>(n);
  for (std::size_t i = 0; i < dim; ++i) {
    std::vector<Rational> e(dim);
    e[i] = 1;
    spec.generators.push_back({"tau" + std::to_string(i + 1), AffineMap::translation(e)});
  }
  spec.generators.push_back(
      {"t", AffineMap::linear(RationalMatrix::identity(dim).scaled(Rational(N)))});
  for (NamedMatrix const& q : q_generators) {
    spec.generators.push_back({q.name, AffineMap::linear(q.matrix)});
    spec.retraction_target.push_back(q.name);
  }
  spec.validate();
  return spec;
}

QuotientProjection::QuotientProjection(AffineGroupSpec const& spec) : n_(spec.n), N_(spec.N) {
  if (N_ < 2) {
    throw DomainError("projection needs N >= 2");
  }
  for (std::string const& name : spec.retraction_target) {
    Rational det = determinant(spec.generator(name).A);
    if (abs(det) != 1) {
      throw DomainError("retraction target '" + name + "' does not have determinant +-1");
    }
  }
}

RationalMatrix QuotientProjection::operator()(RationalMatrix const& linear) const {
  Rational det = abs(determinant(linear));
  int e = 0;
  Rational const base(N_);
  if (det == 0) {
    throw DomainError("singular linear part");
  }
  while (det > 1) {
    det /= base;
    ++e;
  }
  while (det < 1) {
    det *= base;
    --e;
  }
  if (det != 1 || e % n_ != 0) {
    throw DomainError("linear part is not in <Q, diag(N)>");
  }
  int k = e / n_;
  Rational scale = 1;
  for (int i = 0; i < (k < 0 ? -k : k); ++i) {
    scale *= base;
  }
  if (k > 0) {
    scale = Rational(1) / scale;
  }
  return linear.scaled(scale);
}

}  // namespace rover::affine
