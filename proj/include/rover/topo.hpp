#pragma once

// Finite simplicial complexes and their reduced homology.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rover/aaut.hpp"
#include "rover/numeric.hpp"
#include "rover/smith.hpp"

namespace rover::topo {

struct Graph {
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;  // 0-indexed, stored with u < v

  // No loops, no duplicates, endpoints in range. Normalises edge order.
  void validate();
};

using Simplex = std::vector<int>;  // sorted vertex list

class SimplicialComplex {
 public:
  SimplicialComplex() = default;
  // Downward closure of the given simplices.
  static SimplicialComplex closure_of(std::vector<Simplex> simplices);

  // -1 for the empty complex.
  int dimension() const noexcept { return static_cast<int>(by_dim_.size()) - 1; }
  std::size_t count(int k) const;
  std::vector<Simplex> const& simplices(int k) const;
  std::size_t index_of(Simplex const& s) const;  // within its dimension
  bool contains(Simplex const& s) const;
  std::size_t total() const;
  std::vector<std::size_t> f_vector() const;

 private:
  std::vector<std::vector<Simplex>> by_dim_;
  std::vector<std::map<Simplex, std::size_t>> index_;
};

// Rows are (k-1)-simplices, columns k-simplices. For k = 0 this is the
// augmentation: one row (the empty simplex), all entries 1.
IntegerMatrix boundary_matrix(SimplicialComplex const& K, int k);

SimplicialComplex flag_complex(Graph const& g);

struct RingSpec {
  enum class Kind { Integers, Rationals, Modular };
  Kind kind = Kind::Integers;
  unsigned long m = 0;  // modulus for Modular

  static RingSpec integers() { return {Kind::Integers, 0}; }
  static RingSpec rationals() { return {Kind::Rationals, 0}; }
  static RingSpec modular(unsigned long m);
  // "Z", "Q" or "Z/m".
  static RingSpec parse(std::string const& text);
};

std::string to_string(RingSpec const& r);

// Over Z: an abelian group. Over a field: the dimension, stored as
// free_rank. Over Z/m: the cyclic summands Z/d (d | m), stored as torsion.
struct DegreeHomology {
  int degree = 0;
  AbelianGroup group;
  bool zero() const noexcept { return group.trivial(); }
};

struct HomologyProfile {
  RingSpec ring;
  std::vector<DegreeHomology> degrees;  // -1 .. top

  DegreeHomology const& at(int k) const;
  // Least degree with nonzero reduced homology, if any.
  std::optional<int> first_nonzero() const;
};

std::string to_string(RingSpec const& ring, AbelianGroup const& g);

// Reduced homology in degrees -1..max_degree (default: all degrees).
HomologyProfile reduced_homology(SimplicialComplex const& K, RingSpec const& ring,
                                 std::optional<int> max_degree = std::nullopt);

// Greedy elementary collapses. True certifies that K collapses to a point
// (hence is contractible); false proves nothing.
bool collapses_to_point(SimplicialComplex const& K);

struct RingVerdict {
  HomologyProfile profile;
  std::string verdict;  // "FP_1(Z), not FP_2(Z)", "FP_infinity(Q)", ...
};

struct FinitenessReport {
  std::size_t vertices = 0;
  std::vector<std::size_t> f_vector;
  std::vector<RingVerdict> rings;
  bool collapsible = false;
  std::string homotopy;  // "F_infinity (collapsible)" or "homotopy undetermined"
  bool degenerate = false;
};

FinitenessReport finiteness_profile(Graph const& g, std::vector<RingSpec> const& rings);
std::string to_string(FinitenessReport const& report);

// --- matching complexes -----------------------------------------------------

struct MatchingComplex {
  int d = 2;
  int n = 0;
  std::vector<std::vector<int>> subsets;  // vertex i is subsets[i] (1-indexed points)
  SimplicialComplex complex;
};

MatchingComplex matching_complex(int d, int n);

bool grounded_check(int d, int n);

struct ConnectivityReport {
  int bound = -1;  // floor((n - d) / d^2) - 1
  bool passed = false;
  HomologyProfile profile;
};

ConnectivityReport matching_connectivity_check(int d, int n);

struct LinkReport {
  int d = 2;
  int n = 0;
  int k = 0;
  std::vector<std::vector<int>> simplex;  // the k-simplex whose link is taken
  std::vector<std::size_t> link_f_vector;
  bool matches_vertex_count_convention = false;  // M_{d, n - d(k+1)}
  bool matches_dk_convention = false;            // M_{d, n - dk}
};

LinkReport link_check(int d, int n, int k);

// [S_n : {mu : mu(J) = J}].
Integer stabilizer_index(int n, std::vector<int> const& J);

// --- descending links -------------------------------------------------------

struct DescendingLinkReport {
  int d = 2;
  int n = 0;
  std::size_t group_order = 0;
  std::vector<std::size_t> simplex_counts;  // by dimension
  std::size_t min_fiber = 0;
  std::size_t max_fiber = 0;
  bool well_defined = false;     // pi constant on every class
  bool disjoint_images = false;  // pi(simplex) is a set of disjoint d-subsets
  bool injective_on_simplices = false;
  bool surjective = false;
  bool complete_join = false;
  std::vector<std::string> failures;
};

inline constexpr int kDescendingLinkMaxN = 6;
inline constexpr std::size_t kDescendingLinkMaxGroup = 4;

// `group` lists every element of a finite group of automorphisms over d
// letters (the identity included).
DescendingLinkReport descending_link(int d, int n, std::vector<aaut::Label> const& group);

}  // namespace rover::topo
