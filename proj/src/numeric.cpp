#include "rover/numeric.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace rover {

Integer determinant(IntegerMatrix const& input) {
  if (!input.is_square()) {
    throw DomainError("determinant of a non-square matrix");
  }
  std::size_t const n = input.rows();
  if (n == 0) {
    return 1;
  }
  IntegerMatrix m = input;
  Integer sign = 1;
  Integer previous = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m(swap, k) == 0) {
        ++swap;
      }
      if (swap == n) {
        return 0;
      }
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m(k, j), m(swap, j));
      }
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer value = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(value.get_mpz_t(), value.get_mpz_t(), previous.get_mpz_t());
        m(i, j) = value;
      }
      m(i, k) = 0;
    }
    previous = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

Rational determinant(RationalMatrix const& input) {
  if (!input.is_square()) {
    throw DomainError("determinant of a non-square matrix");
  }
  std::size_t const n = input.rows();
  RationalMatrix m = input;
  Rational det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && m(pivot, k) == 0) {
      ++pivot;
    }
    if (pivot == n) {
      return 0;
    }
    if (pivot != k) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m(k, j), m(pivot, j));
      }
      det = -det;
    }
    det *= m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m(i, k) == 0) {
        continue;
      }
      Rational factor = m(i, k) / m(k, k);
      for (std::size_t j = k; j < n; ++j) {
        m(i, j) -= factor * m(k, j);
      }
    }
  }
  return det;
}

RationalMatrix inverse(RationalMatrix const& input) {
  if (!input.is_square()) {
    throw DomainError("inverse of a non-square matrix");
  }
  std::size_t const n = input.rows();
  RationalMatrix m = input;
  RationalMatrix inv = RationalMatrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && m(pivot, k) == 0) {
      ++pivot;
    }
    if (pivot == n) {
      throw DomainError("matrix is singular");
    }
    if (pivot != k) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m(k, j), m(pivot, j));
        std::swap(inv(k, j), inv(pivot, j));
      }
    }
    Rational scale = 1 / m(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      m(k, j) *= scale;
      inv(k, j) *= scale;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || m(i, k) == 0) {
        continue;
      }
      Rational factor = m(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) -= factor * m(k, j);
        inv(i, j) -= factor * inv(k, j);
      }
    }
  }
  return inv;
}

RationalMatrix to_rational(IntegerMatrix const& m) {
  RationalMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      out(i, j) = Rational(m(i, j));
    }
  }
  return out;
}

RationalMatrix block_diagonal(RationalMatrix const& a, RationalMatrix const& b) {
  RationalMatrix out(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      out(i, j) = a(i, j);
    }
  }
  for (std::size_t i = 0; i < b.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      out(a.rows() + i, a.cols() + j) = b(i, j);
    }
  }
  return out;
}

std::vector<Integer> prime_divisors(Integer n) {
  if (n == 0) {
    throw DomainError("prime divisors of zero");
  }
  n = abs(n);
  std::vector<Integer> primes;
  for (Integer q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      primes.push_back(q);
      while (n % q == 0) {
        n /= q;
      }
    }
  }
  if (n > 1) {
    primes.push_back(n);
  }
  return primes;
}

bool is_prime(Integer const& n) {
  if (n < 2) {
    return false;
  }
  for (Integer q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      return false;
    }
  }
  return true;
}

Integer mod_floor(Integer const& a, Integer const& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

Integer mod_inverse(Integer const& a, Integer const& m) {
  Integer inv;
  if (mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
    throw DomainError("no inverse of " + a.get_str() + " modulo " + m.get_str());
  }
  return mod_floor(inv, m);
}

Integer factorial(unsigned n) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

Integer binomial(unsigned n, unsigned k) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

namespace {

bool is_integer_text(std::string_view text) {
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    ++i;
  }
  if (i == text.size()) {
    return false;
  }
  return std::all_of(text.begin() + static_cast<std::ptrdiff_t>(i), text.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

Integer parse_integer(std::string_view text) {
  if (!is_integer_text(text)) {
    throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
  }
  std::string digits(text[0] == '+' ? text.substr(1) : text);
  return Integer(digits, 10);
}

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Rational(parse_integer(text));
  }
  Integer num = parse_integer(text.substr(0, slash));
  std::string_view den_text = text.substr(slash + 1);
  if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+')) {
    throw std::invalid_argument("signed denominator: '" + std::string(text) + "'");
  }
  Integer den = parse_integer(den_text);
  if (den == 0) {
    throw DomainError("zero denominator in '" + std::string(text) + "'");
  }
  Rational out(num, den);
  out.canonicalize();
  return out;
}

std::string to_string(Integer const& x) { return x.get_str(); }

std::string to_string(Rational const& x) { return x.get_str(); }

namespace {

template <typename T>
std::string matrix_text(Matrix<T> const& m) {
  std::ostringstream out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j > 0) {
        out << ' ';
      }
      out << to_string(m(i, j));
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace

std::string to_string(IntegerMatrix const& m) { return matrix_text(m); }
std::string to_string(RationalMatrix const& m) { return matrix_text(m); }

}  // namespace rover
