#include "rover/smith.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <utility>

namespace rover {

namespace {

// Dense elimination. Row operations are mirrored on L (and inversely on
// Linv), column operations on R, when `transforms` is set.
class Eliminator {
 public:
  Eliminator(IntegerMatrix const& M, bool transforms)
      : D_(M), rows_(M.rows()), cols_(M.cols()), transforms_(transforms) {
    if (transforms_) {
      L_ = IntegerMatrix::identity(rows_);
      Linv_ = IntegerMatrix::identity(rows_);
      R_ = IntegerMatrix::identity(cols_);
    }
  }

  void run() {
    std::size_t const s = std::min(rows_, cols_);
    for (std::size_t t = 0; t < s; ++t) {
      if (!move_smallest_to(t)) {
        break;
      }
      while (true) {
        bool dirty = false;
        for (std::size_t i = t + 1; i < rows_; ++i) {
          if (D_(i, t) != 0) {
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), D_(i, t).get_mpz_t(), D_(t, t).get_mpz_t());
            row_subtract(i, t, q);
            dirty = dirty || D_(i, t) != 0;
          }
        }
        for (std::size_t j = t + 1; j < cols_; ++j) {
          if (D_(t, j) != 0) {
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), D_(t, j).get_mpz_t(), D_(t, t).get_mpz_t());
            col_subtract(j, t, q);
            dirty = dirty || D_(t, j) != 0;
          }
        }
        if (dirty) {
          move_smallest_to(t);
          continue;
        }
        // Pivot isolated; make sure it divides the rest of the block.
        bool fixed = false;
        for (std::size_t i = t + 1; i < rows_ && !fixed; ++i) {
          for (std::size_t j = t + 1; j < cols_; ++j) {
            if (D_(i, j) % D_(t, t) != 0) {
              row_add(t, i);
              fixed = true;
              break;
            }
          }
        }
        if (!fixed) {
          break;
        }
      }
      if (D_(t, t) < 0) {
        row_negate(t);
      }
    }
  }

  SNFResult result() const {
    SNFResult out;
    std::size_t const s = std::min(rows_, cols_);
    for (std::size_t i = 0; i < s; ++i) {
      out.factors.push_back(D_(i, i));
      if (D_(i, i) != 0) {
        ++out.rank;
      }
    }
    return out;
  }

  IntegerMatrix const& L() const { return L_; }
  IntegerMatrix const& Linv() const { return Linv_; }
  IntegerMatrix const& R() const { return R_; }

 private:
  // Brings a nonzero entry of least absolute value in the block (t.., t..)
  // to (t, t). Returns false if the block is zero.
  bool move_smallest_to(std::size_t t) {
    std::size_t bi = rows_;
    std::size_t bj = cols_;
    for (std::size_t i = t; i < rows_; ++i) {
      for (std::size_t j = t; j < cols_; ++j) {
        if (D_(i, j) != 0 && (bi == rows_ || abs(D_(i, j)) < abs(D_(bi, bj)))) {
          bi = i;
          bj = j;
          if (abs(D_(i, j)) == 1) {
            goto found;
          }
        }
      }
    }
    if (bi == rows_) {
      return false;
    }
  found:
    row_swap(t, bi);
    col_swap(t, bj);
    return true;
  }

  void row_swap(std::size_t a, std::size_t b) {
    if (a == b) {
      return;
    }
    for (std::size_t j = 0; j < cols_; ++j) {
      std::swap(D_(a, j), D_(b, j));
    }
    if (transforms_) {
      for (std::size_t j = 0; j < rows_; ++j) {
        std::swap(L_(a, j), L_(b, j));
        std::swap(Linv_(j, a), Linv_(j, b));
      }
    }
  }

  void col_swap(std::size_t a, std::size_t b) {
    if (a == b) {
      return;
    }
    for (std::size_t i = 0; i < rows_; ++i) {
      std::swap(D_(i, a), D_(i, b));
    }
    if (transforms_) {
      for (std::size_t i = 0; i < cols_; ++i) {
        std::swap(R_(i, a), R_(i, b));
      }
    }
  }

  // row_i -= q * row_t
  void row_subtract(std::size_t i, std::size_t t, Integer const& q) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (D_(t, j) != 0) {
        D_(i, j) -= q * D_(t, j);
      }
    }
    if (transforms_) {
      for (std::size_t j = 0; j < rows_; ++j) {
        L_(i, j) -= q * L_(t, j);
        Linv_(j, t) += q * Linv_(j, i);
      }
    }
  }

  // col_j -= q * col_t
  void col_subtract(std::size_t j, std::size_t t, Integer const& q) {
    for (std::size_t i = 0; i < rows_; ++i) {
      if (D_(i, t) != 0) {
        D_(i, j) -= q * D_(i, t);
      }
    }
    if (transforms_) {
      for (std::size_t i = 0; i < cols_; ++i) {
        R_(i, j) -= q * R_(i, t);
      }
    }
  }

  // row_t += row_i
  void row_add(std::size_t t, std::size_t i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      D_(t, j) += D_(i, j);
    }
    if (transforms_) {
      for (std::size_t j = 0; j < rows_; ++j) {
        L_(t, j) += L_(i, j);
        Linv_(j, i) -= Linv_(j, t);
      }
    }
  }

  void row_negate(std::size_t t) {
    for (std::size_t j = 0; j < cols_; ++j) {
      D_(t, j) = -D_(t, j);
    }
    if (transforms_) {
      for (std::size_t j = 0; j < rows_; ++j) {
        L_(t, j) = -L_(t, j);
        Linv_(j, t) = -Linv_(j, t);
      }
    }
  }

  IntegerMatrix D_;
  std::size_t rows_;
  std::size_t cols_;
  bool transforms_;
  IntegerMatrix L_;
  IntegerMatrix Linv_;
  IntegerMatrix R_;
};

using SparseRow = std::map<std::size_t, Integer>;

}  // namespace

SNFResult smith_normal_form(IntegerMatrix const& M) {
  Eliminator e(M, false);
  e.run();
  return e.result();
}

SNFDecomposition smith_decomposition(IntegerMatrix const& M) {
  Eliminator e(M, true);
  e.run();
  return SNFDecomposition{e.result(), e.L(), e.Linv(), e.R()};
}

SNFResult smith_normal_form_sparse(IntegerMatrix const& M) {
  std::size_t const rows = M.rows();
  std::size_t const cols = M.cols();
  std::vector<SparseRow> row(rows);
  std::vector<std::set<std::size_t>> col(cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      if (M(i, j) != 0) {
        row[i].emplace(j, M(i, j));
        col[j].insert(i);
      }
    }
  }
  std::vector<bool> row_alive(rows, true);
  std::vector<bool> col_alive(cols, true);
  std::size_t units = 0;
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t r = 0; r < rows; ++r) {
      if (!row_alive[r]) {
        continue;
      }
      auto pivot = std::find_if(row[r].begin(), row[r].end(),
                                [](auto const& entry) { return abs(entry.second) == 1; });
      if (pivot == row[r].end()) {
        continue;
      }
      std::size_t const c = pivot->first;
      Integer const unit = pivot->second;
      std::vector<std::size_t> others(col[c].begin(), col[c].end());
      for (std::size_t i : others) {
        if (i == r) {
          continue;
        }
        Integer const factor = row[i].at(c) * unit;
        for (auto const& [j, value] : row[r]) {
          Integer updated = row[i][j] - factor * value;
          if (updated == 0) {
            row[i].erase(j);
            col[j].erase(i);
          } else {
            row[i][j] = updated;
            col[j].insert(i);
          }
        }
      }
      for (auto const& entry : row[r]) {
        col[entry.first].erase(r);
      }
      row[r].clear();
      row_alive[r] = false;
      col_alive[c] = false;
      ++units;
      progress = true;
    }
  }
  std::vector<std::size_t> keep_rows;
  std::vector<std::size_t> keep_cols;
  std::vector<std::size_t> col_position(cols, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (row_alive[i]) {
      keep_rows.push_back(i);
    }
  }
  for (std::size_t j = 0; j < cols; ++j) {
    if (col_alive[j]) {
      col_position[j] = keep_cols.size();
      keep_cols.push_back(j);
    }
  }
  IntegerMatrix rest(keep_rows.size(), keep_cols.size());
  for (std::size_t i = 0; i < keep_rows.size(); ++i) {
    for (auto const& [j, value] : row[keep_rows[i]]) {
      rest(i, col_position[j]) = value;
    }
  }
  SNFResult inner = smith_normal_form(rest);
  SNFResult out;
  out.factors.assign(units, Integer(1));
  out.factors.insert(out.factors.end(), inner.factors.begin(), inner.factors.end());
  out.factors.resize(std::min(rows, cols), Integer(0));
  out.rank = units + inner.rank;
  return out;
}

Integer AbelianGroup::order() const {
  Integer out = 1;
  for (Integer const& d : torsion) {
    out *= d;
  }
  return out;
}

std::string to_string(AbelianGroup const& g) {
  std::vector<std::string> parts;
  if (g.free_rank == 1) {
    parts.push_back("Z");
  } else if (g.free_rank > 1) {
    parts.push_back("Z^" + std::to_string(g.free_rank));
  }
  for (Integer const& d : g.torsion) {
    parts.push_back("Z/" + d.get_str());
  }
  if (parts.empty()) {
    return "0";
  }
  std::string out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) {
    out += " + " + parts[i];
  }
  return out;
}

AbelianGroup abelian_group_from_factors(std::vector<Integer> const& factors, std::size_t rows) {
  AbelianGroup g;
  std::size_t rank = 0;
  for (Integer const& d : factors) {
    if (d != 0) {
      ++rank;
      if (d != 1) {
        g.torsion.push_back(abs(d));
      }
    }
  }
  g.free_rank = rows - rank;
  return g;
}

AbelianGroup cokernel(IntegerMatrix const& M) {
  return abelian_group_from_factors(smith_normal_form(M).factors, M.rows());
}

std::size_t rank_rational(IntegerMatrix const& M) {
  // Fraction-free row reduction on primitive integer rows.
  std::vector<std::vector<Integer>> rows;
  for (std::size_t i = 0; i < M.rows(); ++i) {
    rows.emplace_back(M.data().begin() + static_cast<std::ptrdiff_t>(i * M.cols()),
                      M.data().begin() + static_cast<std::ptrdiff_t>((i + 1) * M.cols()));
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < M.cols() && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c] == 0) {
      ++pivot;
    }
    if (pivot == rows.size()) {
      continue;
    }
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t i = rank + 1; i < rows.size(); ++i) {
      if (rows[i][c] == 0) {
        continue;
      }
      Integer const a = rows[rank][c];
      Integer const b = rows[i][c];
      Integer g = 0;
      for (std::size_t j = c; j < M.cols(); ++j) {
        rows[i][j] = a * rows[i][j] - b * rows[rank][j];
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), rows[i][j].get_mpz_t());
      }
      if (g > 1) {
        for (std::size_t j = c; j < M.cols(); ++j) {
          mpz_divexact(rows[i][j].get_mpz_t(), rows[i][j].get_mpz_t(), g.get_mpz_t());
        }
      }
    }
    ++rank;
  }
  return rank;
}

std::size_t rank_mod_p(IntegerMatrix const& M, unsigned long p) {
  if (p < 2) {
    throw DomainError("modulus must be at least 2");
  }
  using Word = unsigned long long;
  std::vector<std::vector<Word>> rows(M.rows(), std::vector<Word>(M.cols()));
  Integer const P = static_cast<unsigned long>(p);
  for (std::size_t i = 0; i < M.rows(); ++i) {
    for (std::size_t j = 0; j < M.cols(); ++j) {
      rows[i][j] = Integer(mod_floor(M(i, j), P)).get_ui();
    }
  }
  auto power = [p](Word base, Word exp) {
    Word out = 1;
    base %= p;
    while (exp > 0) {
      if (exp & 1) {
        out = out * base % p;
      }
      base = base * base % p;
      exp >>= 1;
    }
    return out;
  };
  std::size_t rank = 0;
  for (std::size_t c = 0; c < M.cols() && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c] == 0) {
      ++pivot;
    }
    if (pivot == rows.size()) {
      continue;
    }
    std::swap(rows[rank], rows[pivot]);
    Word const inv = power(rows[rank][c], p - 2);
    for (std::size_t i = rank + 1; i < rows.size(); ++i) {
      if (rows[i][c] == 0) {
        continue;
      }
      Word const factor = rows[i][c] * inv % p;
      for (std::size_t j = c; j < M.cols(); ++j) {
        rows[i][j] = (rows[i][j] + (p - factor) * rows[rank][j]) % p;
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace rover
