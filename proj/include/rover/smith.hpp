#pragma once

// Smith normal form and the finitely generated abelian groups it describes.

#include <cstddef>
#include <string>
#include <vector>

#include "rover/numeric.hpp"

namespace rover {

struct SNFResult {
  // d_1 | d_2 | ... | d_s with s = min(rows, cols); zeros trail.
  std::vector<Integer> factors;
  std::size_t rank = 0;
};

// L * M * R = diag(factors), with L, R unimodular and Linv = L^{-1}.
struct SNFDecomposition {
  SNFResult result;
  IntegerMatrix L;
  IntegerMatrix Linv;
  IntegerMatrix R;
};

SNFResult smith_normal_form(IntegerMatrix const& M);
SNFDecomposition smith_decomposition(IntegerMatrix const& M);

// Eliminates unit pivots sparsely before running the dense algorithm on what
// is left. Same result as smith_normal_form, much faster on boundary
// matrices, whose entries are mostly 0 and +-1.
SNFResult smith_normal_form_sparse(IntegerMatrix const& M);

// Z^k / Im(M) for a k-row matrix M, as invariant factors.
struct AbelianGroup {
  std::vector<Integer> torsion;  // invariant factors > 1, in divisibility order
  std::size_t free_rank = 0;

  bool finite() const noexcept { return free_rank == 0; }
  bool trivial() const noexcept { return free_rank == 0 && torsion.empty(); }
  // Product of the torsion factors; meaningful only for finite groups.
  Integer order() const;

  friend bool operator==(AbelianGroup const&, AbelianGroup const&) = default;
};

// "0", "Z/2", "Z^2 + Z/2 + Z/6", ...
std::string to_string(AbelianGroup const& g);

AbelianGroup cokernel(IntegerMatrix const& M);
AbelianGroup abelian_group_from_factors(std::vector<Integer> const& factors, std::size_t rows);

// Rank over Q and over Z/p (p prime), by elimination independent of the SNF.
std::size_t rank_rational(IntegerMatrix const& M);
std::size_t rank_mod_p(IntegerMatrix const& M, unsigned long p);

}  // namespace rover
