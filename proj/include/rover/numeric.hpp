#pragma once

// Exact arithmetic shared by every module: GMP integers and rationals, a
// small dense matrix template, and the handful of number-theoretic helpers
// (prime support, modular inverses) the constructions need.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "rover/errors.hpp"

namespace rover {

using Integer = mpz_class;
using Rational = mpq_class;

template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
      throw DomainError("matrix data size does not match shape");
    }
  }
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    for (auto const& row : rows) {
      if (row.size() != cols_) {
        throw DomainError("ragged matrix literal");
      }
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      m(i, i) = 1;
    }
    return m;
  }

  static Matrix diagonal(std::vector<T> const& entries) {
    Matrix m(entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
      m(i, i) = entries[i];
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  T const& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<T> const& data() const noexcept { return data_; }

  bool operator==(Matrix const& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
  }

  Matrix operator*(Matrix const& other) const {
    if (cols_ != other.rows_) {
      throw DomainError("matrix product shape mismatch");
    }
    Matrix out(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t k = 0; k < cols_; ++k) {
        T const& a = (*this)(i, k);
        if (a == 0) {
          continue;
        }
        for (std::size_t j = 0; j < other.cols_; ++j) {
          out(i, j) += a * other(k, j);
        }
      }
    }
    return out;
  }

  std::vector<T> operator*(std::vector<T> const& v) const {
    if (cols_ != v.size()) {
      throw DomainError("matrix-vector shape mismatch");
    }
    std::vector<T> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t k = 0; k < cols_; ++k) {
        out[i] += (*this)(i, k) * v[k];
      }
    }
    return out;
  }

  Matrix operator+(Matrix const& other) const {
    check_same_shape(other);
    Matrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) {
      out.data_[i] += other.data_[i];
    }
    return out;
  }

  Matrix operator-(Matrix const& other) const {
    check_same_shape(other);
    Matrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) {
      out.data_[i] -= other.data_[i];
    }
    return out;
  }

  Matrix scaled(T const& s) const {
    Matrix out = *this;
    for (auto& x : out.data_) {
      x *= s;
    }
    return out;
  }

  Matrix transposed() const {
    Matrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) {
        out(j, i) = (*this)(i, j);
      }
    }
    return out;
  }

  bool is_identity() const {
    if (!is_square()) {
      return false;
    }
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) {
        if ((*this)(i, j) != (i == j ? 1 : 0)) {
          return false;
        }
      }
    }
    return true;
  }

 private:
  void check_same_shape(Matrix const& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
      throw DomainError("matrix shape mismatch");
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntegerMatrix = Matrix<Integer>;
using RationalMatrix = Matrix<Rational>;

// Exact determinants (Bareiss for integers, Gauss-Jordan for rationals).
Integer determinant(IntegerMatrix const& m);
Rational determinant(RationalMatrix const& m);

// Throws DomainError when `m` is singular.
RationalMatrix inverse(RationalMatrix const& m);

RationalMatrix to_rational(IntegerMatrix const& m);

// Block diagonal matrix diag(a, b).
RationalMatrix block_diagonal(RationalMatrix const& a, RationalMatrix const& b);

// --- number theory --------------------------------------------------------

// Distinct prime divisors of |n| in increasing order (trial division; n != 0).
std::vector<Integer> prime_divisors(Integer n);

bool is_prime(Integer const& n);

// Inverse of a modulo m; throws DomainError when gcd(a, m) != 1.
Integer mod_inverse(Integer const& a, Integer const& m);

// Residue of a in [0, m).
Integer mod_floor(Integer const& a, Integer const& m);

Integer factorial(unsigned n);
Integer binomial(unsigned n, unsigned k);

// --- text -----------------------------------------------------------------

// Parses "a" or "a/b" (optional sign). Throws std::invalid_argument on
// malformed text and DomainError on a zero denominator.
Rational parse_rational(std::string_view text);
Integer parse_integer(std::string_view text);

std::string to_string(Integer const& x);
std::string to_string(Rational const& x);

// One row per line, entries separated by single spaces.
std::string to_string(IntegerMatrix const& m);
std::string to_string(RationalMatrix const& m);

}  // namespace rover
