#include "rover/topo.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <sstream>

namespace rover::topo {

// --- graphs and complexes ---------------------------------------------------

void Graph::validate() {
  if (vertices < 0) {
    throw DomainError("negative vertex count");
  }
  std::set<std::pair<int, int>> seen;
  for (auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= vertices || v >= vertices) {
      throw DomainError("edge " + std::to_string(u) + " " + std::to_string(v) + " out of range");
    }
    if (u == v) {
      throw DomainError("loop at vertex " + std::to_string(u));
    }
    if (u > v) {
      std::swap(u, v);
    }
    if (!seen.insert({u, v}).second) {
      throw DomainError("duplicate edge " + std::to_string(u) + " " + std::to_string(v));
    }
  }
}

SimplicialComplex SimplicialComplex::closure_of(std::vector<Simplex> simplices) {
  std::vector<std::set<Simplex>> levels;
  for (Simplex& s : simplices) {
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
      throw DomainError("simplex with a repeated vertex");
    }
    if (s.empty()) {
      continue;
    }
    if (levels.size() < s.size()) {
      levels.resize(s.size());
    }
    levels[s.size() - 1].insert(std::move(s));
  }
  for (std::size_t k = levels.size(); k-- > 1;) {
    for (Simplex const& s : levels[k]) {
      for (std::size_t i = 0; i < s.size(); ++i) {
        Simplex face = s;
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
        levels[k - 1].insert(std::move(face));
      }
    }
  }
  SimplicialComplex K;
  for (auto& level : levels) {
    K.by_dim_.emplace_back(level.begin(), level.end());
    std::map<Simplex, std::size_t> index;
    for (std::size_t i = 0; i < K.by_dim_.back().size(); ++i) {
      index.emplace(K.by_dim_.back()[i], i);
    }
    K.index_.push_back(std::move(index));
  }
  return K;
}

std::size_t SimplicialComplex::count(int k) const {
  if (k == -1) {
    return 1;
  }
  if (k < -1 || k > dimension()) {
    return 0;
  }
  return by_dim_[static_cast<std::size_t>(k)].size();
}

std::vector<Simplex> const& SimplicialComplex::simplices(int k) const {
  static std::vector<Simplex> const empty;
  if (k < 0 || k > dimension()) {
    return empty;
  }
  return by_dim_[static_cast<std::size_t>(k)];
}

std::size_t SimplicialComplex::index_of(Simplex const& s) const {
  int const k = static_cast<int>(s.size()) - 1;
  if (k < 0 || k > dimension()) {
    throw DomainError("simplex not in complex");
  }
  auto it = index_[static_cast<std::size_t>(k)].find(s);
  if (it == index_[static_cast<std::size_t>(k)].end()) {
    throw DomainError("simplex not in complex");
  }
  return it->second;
}

bool SimplicialComplex::contains(Simplex const& s) const {
  int const k = static_cast<int>(s.size()) - 1;
  if (k < 0 || k > dimension()) {
    return false;
  }
  return index_[static_cast<std::size_t>(k)].count(s) > 0;
}

std::size_t SimplicialComplex::total() const {
  std::size_t out = 0;
  for (auto const& level : by_dim_) {
    out += level.size();
  }
  return out;
}

std::vector<std::size_t> SimplicialComplex::f_vector() const {
  std::vector<std::size_t> out;
  for (auto const& level : by_dim_) {
    out.push_back(level.size());
  }
  return out;
}

IntegerMatrix boundary_matrix(SimplicialComplex const& K, int k) {
  std::size_t const rows = K.count(k - 1);
  std::size_t const cols = K.count(k);
  IntegerMatrix B(rows, cols);
  if (k == 0) {
    for (std::size_t j = 0; j < cols; ++j) {
      B(0, j) = 1;
    }
    return B;
  }
  auto const& simplices = K.simplices(k);
  for (std::size_t j = 0; j < simplices.size(); ++j) {
    Simplex const& s = simplices[j];
    for (std::size_t i = 0; i < s.size(); ++i) {
      Simplex face = s;
      face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
      B(K.index_of(face), j) = i % 2 == 0 ? 1 : -1;
    }
  }
  return B;
}

namespace {

// Every clique of the graph given by `adjacent`, vertices 0..count-1.
std::vector<Simplex> cliques(int count, std::function<bool(int, int)> const& adjacent) {
  std::vector<std::vector<int>> later(static_cast<std::size_t>(count));
  for (int u = 0; u < count; ++u) {
    for (int v = u + 1; v < count; ++v) {
      if (adjacent(u, v)) {
        later[static_cast<std::size_t>(u)].push_back(v);
      }
    }
  }
  std::vector<Simplex> out;
  Simplex current;
  std::function<void(std::vector<int> const&)> extend = [&](std::vector<int> const& candidates) {
    for (std::size_t a = 0; a < candidates.size(); ++a) {
      int const v = candidates[a];
      current.push_back(v);
      out.push_back(current);
      std::vector<int> next;
      auto const& nv = later[static_cast<std::size_t>(v)];
      for (std::size_t b = a + 1; b < candidates.size(); ++b) {
        if (std::binary_search(nv.begin(), nv.end(), candidates[b])) {
          next.push_back(candidates[b]);
        }
      }
      extend(next);
      current.pop_back();
    }
  };
  std::vector<int> all(static_cast<std::size_t>(count));
  for (int v = 0; v < count; ++v) {
    all[static_cast<std::size_t>(v)] = v;
  }
  extend(all);
  return out;
}

}  // namespace

SimplicialComplex flag_complex(Graph const& g) {
  Graph graph = g;
  graph.validate();
  std::set<std::pair<int, int>> edges(graph.edges.begin(), graph.edges.end());
  return SimplicialComplex::closure_of(
      cliques(graph.vertices, [&](int u, int v) { return edges.count({u, v}) > 0; }));
}

// --- rings and homology -----------------------------------------------------

RingSpec RingSpec::modular(unsigned long m) {
  if (m < 2) {
    throw DomainError("modulus must be at least 2");
  }
  return {Kind::Modular, m};
}

RingSpec RingSpec::parse(std::string const& text) {
  if (text == "Z") {
    return integers();
  }
  if (text == "Q") {
    return rationals();
  }
  if (text.size() > 2 && text.compare(0, 2, "Z/") == 0) {
    Integer m;
    try {
      m = parse_integer(text.substr(2));
    } catch (std::invalid_argument const&) {
      throw DomainError("bad ring '" + text + "'");
    }
    if (m < 2 || !m.fits_ulong_p()) {
      throw DomainError("bad modulus in '" + text + "'");
    }
    return modular(m.get_ui());
  }
  throw DomainError("unknown ring '" + text + "' (expected Z, Q or Z/m)");
}

std::string to_string(RingSpec const& r) {
  switch (r.kind) {
    case RingSpec::Kind::Integers:
      return "Z";
    case RingSpec::Kind::Rationals:
      return "Q";
    case RingSpec::Kind::Modular:
      return "Z/" + std::to_string(r.m);
  }
  return "?";
}

std::string to_string(RingSpec const& ring, AbelianGroup const& g) {
  switch (ring.kind) {
    case RingSpec::Kind::Integers:
      return to_string(g);
    case RingSpec::Kind::Rationals:
      if (g.free_rank == 0) {
        return "0";
      }
      return g.free_rank == 1 ? "Q" : "Q^" + std::to_string(g.free_rank);
    case RingSpec::Kind::Modular: {
      if (g.trivial()) {
        return "0";
      }
      std::string out;
      for (std::size_t i = 0; i < g.torsion.size(); ++i) {
        out += (i ? " + " : "") + ("Z/" + g.torsion[i].get_str());
      }
      return out;
    }
  }
  return "?";
}

DegreeHomology const& HomologyProfile::at(int k) const {
  for (DegreeHomology const& h : degrees) {
    if (h.degree == k) {
      return h;
    }
  }
  throw DomainError("degree " + std::to_string(k) + " not computed");
}

std::optional<int> HomologyProfile::first_nonzero() const {
  for (DegreeHomology const& h : degrees) {
    if (!h.zero()) {
      return h.degree;
    }
  }
  return std::nullopt;
}

namespace {

bool is_prime_modulus(unsigned long m) { return is_prime(Integer(m)); }

// H_k(C tensor Z/m) for C_{k-1} <- C_k <- C_{k+1} with boundary matrices
// dk (n_{k-1} x n_k) and dk1 (n_k x n_{k+1}). Cycles mod m lift to the
// lattice K = {x : dk x in m Z^{n_{k-1}}}; with a basis P of K the group is
// the cokernel of P^{-1} [dk1 | m I].
AbelianGroup homology_mod_m(IntegerMatrix const& dk, IntegerMatrix const& dk1, std::size_t nk,
                            unsigned long m) {
  Integer const M = m;
  IntegerMatrix basis_inverse = IntegerMatrix::identity(nk);  // P^{-1}, scaled rows later
  std::vector<Integer> scale(nk, Integer(1));
  if (dk.rows() > 0 && nk > 0) {
    std::size_t const r = dk.rows();
    IntegerMatrix wide(r, nk + r);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < nk; ++j) {
        wide(i, j) = dk(i, j);
      }
      wide(i, nk + i) = M;
    }
    SNFDecomposition kernel = smith_decomposition(wide);
    std::size_t const rank = kernel.result.rank;
    std::size_t const gens = nk + r - rank;
    IntegerMatrix G(nk, gens);
    for (std::size_t c = 0; c < gens; ++c) {
      for (std::size_t i = 0; i < nk; ++i) {
        G(i, c) = kernel.R(i, rank + c);
      }
    }
    SNFDecomposition lattice = smith_decomposition(G);
    if (lattice.result.rank != nk) {
      throw DomainError("cycle lattice is not of full rank");
    }
    basis_inverse = lattice.L;
    scale.assign(lattice.result.factors.begin(), lattice.result.factors.begin() + static_cast<std::ptrdiff_t>(nk));
  }
  std::size_t const extra = dk1.cols();
  IntegerMatrix B(nk, extra + nk);
  for (std::size_t i = 0; i < nk; ++i) {
    for (std::size_t j = 0; j < extra; ++j) {
      B(i, j) = dk1(i, j);
    }
    B(i, extra + i) = M;
  }
  IntegerMatrix C = basis_inverse * B;
  for (std::size_t i = 0; i < nk; ++i) {
    for (std::size_t j = 0; j < C.cols(); ++j) {
      if (C(i, j) % scale[i] != 0) {
        throw DomainError("boundaries do not lie in the cycle lattice");
      }
      mpz_divexact(C(i, j).get_mpz_t(), C(i, j).get_mpz_t(), scale[i].get_mpz_t());
    }
  }
  return cokernel(C);
}

}  // namespace

HomologyProfile reduced_homology(SimplicialComplex const& K, RingSpec const& ring,
                                 std::optional<int> max_degree) {
  int const top = K.dimension();
  int const last = std::min(max_degree.value_or(top), std::max(top, -1));
  HomologyProfile profile{ring, {}};
  // boundary[k + 1] holds d_k for k = 0 .. last + 1 (within the complex).
  auto boundary = [&](int k) {
    if (k < 0) {
      return IntegerMatrix(0, 1);
    }
    if (k > top) {
      return IntegerMatrix(K.count(k - 1), 0);
    }
    return boundary_matrix(K, k);
  };
  std::vector<IntegerMatrix> d;
  for (int k = -1; k <= last + 1; ++k) {
    d.push_back(boundary(k));
  }
  auto D = [&](int k) -> IntegerMatrix const& { return d[static_cast<std::size_t>(k + 1)]; };

  if (ring.kind == RingSpec::Kind::Integers) {
    std::vector<SNFResult> snf;
    for (int k = -1; k <= last + 1; ++k) {
      snf.push_back(smith_normal_form_sparse(D(k)));
    }
    auto S = [&](int k) -> SNFResult const& { return snf[static_cast<std::size_t>(k + 1)]; };
    for (int k = -1; k <= last; ++k) {
      AbelianGroup g;
      g.free_rank = K.count(k) - S(k).rank - S(k + 1).rank;
      for (Integer const& f : S(k + 1).factors) {
        if (f > 1) {
          g.torsion.push_back(f);
        }
      }
      profile.degrees.push_back({k, g});
    }
    return profile;
  }
  if (ring.kind == RingSpec::Kind::Rationals ||
      (ring.kind == RingSpec::Kind::Modular && is_prime_modulus(ring.m))) {
    auto rank = [&](IntegerMatrix const& M) {
      return ring.kind == RingSpec::Kind::Rationals ? rank_rational(M) : rank_mod_p(M, ring.m);
    };
    std::vector<std::size_t> ranks;
    for (int k = -1; k <= last + 1; ++k) {
      ranks.push_back(rank(D(k)));
    }
    for (int k = -1; k <= last; ++k) {
      std::size_t const dim = K.count(k) - ranks[static_cast<std::size_t>(k + 1)] -
                              ranks[static_cast<std::size_t>(k + 2)];
      AbelianGroup g;
      if (ring.kind == RingSpec::Kind::Rationals) {
        g.free_rank = dim;
      } else {
        g.torsion.assign(dim, Integer(ring.m));
      }
      profile.degrees.push_back({k, g});
    }
    return profile;
  }
  for (int k = -1; k <= last; ++k) {
    profile.degrees.push_back({k, homology_mod_m(D(k), D(k + 1), K.count(k), ring.m)});
  }
  return profile;
}

bool collapses_to_point(SimplicialComplex const& K) {
  int const top = K.dimension();
  if (top < 0) {
    return false;
  }
  std::vector<std::size_t> offset{0};
  for (int k = 0; k <= top; ++k) {
    offset.push_back(offset.back() + K.count(k));
  }
  std::size_t const total = offset.back();
  std::vector<std::vector<std::size_t>> faces(total), cofaces(total);
  for (int k = 1; k <= top; ++k) {
    auto const& level = K.simplices(k);
    for (std::size_t j = 0; j < level.size(); ++j) {
      std::size_t const id = offset[static_cast<std::size_t>(k)] + j;
      for (std::size_t i = 0; i < level[j].size(); ++i) {
        Simplex face = level[j];
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
        std::size_t const f = offset[static_cast<std::size_t>(k - 1)] + K.index_of(face);
        faces[id].push_back(f);
        cofaces[f].push_back(id);
      }
    }
  }
  std::vector<bool> alive(total, true);
  std::vector<std::size_t> up(total);
  std::vector<std::size_t> work;
  for (std::size_t s = 0; s < total; ++s) {
    up[s] = cofaces[s].size();
    if (up[s] == 1) {
      work.push_back(s);
    }
  }
  std::size_t remaining = total;
  auto remove = [&](std::size_t s) {
    alive[s] = false;
    --remaining;
    for (std::size_t f : faces[s]) {
      if (--up[f] == 1 && alive[f]) {
        work.push_back(f);
      }
    }
  };
  // An elementary collapse removes a free face together with its coface.
  while (!work.empty()) {
    std::size_t const s = work.back();
    work.pop_back();
    if (!alive[s] || up[s] != 1) {
      continue;
    }
    for (std::size_t t : cofaces[s]) {
      if (alive[t]) {
        remove(t);
        break;
      }
    }
    remove(s);
  }
  return remaining == 1;
}

FinitenessReport finiteness_profile(Graph const& g, std::vector<RingSpec> const& rings) {
  SimplicialComplex const K = flag_complex(g);
  FinitenessReport report;
  report.vertices = static_cast<std::size_t>(g.vertices);
  report.f_vector = K.f_vector();
  report.degenerate = K.dimension() < 0;
  report.collapsible = collapses_to_point(K);
  report.homotopy = report.collapsible ? "F_infinity (flag complex collapses to a point)"
                                       : "homotopy undetermined";
  for (RingSpec const& ring : rings) {
    RingVerdict v{reduced_homology(K, ring), {}};
    std::string const R = "(" + to_string(ring) + ")";
    auto first = v.profile.first_nonzero();
    if (!first) {
      v.verdict = "FP_infinity" + R;
    } else if (*first < 0) {
      v.verdict = "degenerate: empty flag complex";
    } else {
      v.verdict = "FP_" + std::to_string(*first) + R + ", not FP_" + std::to_string(*first + 1) + R;
    }
    report.rings.push_back(std::move(v));
  }
  return report;
}

std::string to_string(FinitenessReport const& report) {
  std::ostringstream out;
  out << "vertices " << report.vertices << "\n";
  out << "f-vector";
  for (std::size_t c : report.f_vector) {
    out << ' ' << c;
  }
  out << "\n";
  for (RingVerdict const& v : report.rings) {
    for (DegreeHomology const& h : v.profile.degrees) {
      out << "H~_" << h.degree << "(Flag; " << to_string(v.profile.ring)
          << ") = " << to_string(v.profile.ring, h.group) << "\n";
    }
    out << "verdict " << to_string(v.profile.ring) << ": " << v.verdict << "\n";
  }
  out << "homotopy: " << report.homotopy << "\n";
  return out.str();
}

// --- matching complexes -----------------------------------------------------

namespace {

std::vector<std::vector<int>> subsets_of_size(int n, int d) {
  std::vector<std::vector<int>> out;
  if (d > n || d < 1) {
    return out;
  }
  std::vector<int> current(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    current[static_cast<std::size_t>(i)] = i + 1;
  }
  while (true) {
    out.push_back(current);
    int i = d - 1;
    while (i >= 0 && current[static_cast<std::size_t>(i)] == n - d + i + 1) {
      --i;
    }
    if (i < 0) {
      break;
    }
    ++current[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < d; ++j) {
      current[static_cast<std::size_t>(j)] = current[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return out;
}

bool disjoint(std::vector<int> const& a, std::vector<int> const& b) {
  for (int x : a) {
    if (std::find(b.begin(), b.end(), x) != b.end()) {
      return false;
    }
  }
  return true;
}

}  // namespace

MatchingComplex matching_complex(int d, int n) {
  if (d < 1 || n < 0) {
    throw DomainError("matching complex needs d >= 1 and n >= 0");
  }
  MatchingComplex M{d, n, subsets_of_size(n, d), {}};
  auto const& subsets = M.subsets;
  M.complex = SimplicialComplex::closure_of(cliques(static_cast<int>(subsets.size()), [&](int u, int v) {
    return disjoint(subsets[static_cast<std::size_t>(u)], subsets[static_cast<std::size_t>(v)]);
  }));
  return M;
}

bool grounded_check(int d, int n) {
  if (n < d) {
    throw DomainError("grounded check needs n >= d");
  }
  MatchingComplex const M = matching_complex(d, n);
  int const top = n / d - 1;
  if (M.complex.dimension() != top) {
    return false;
  }
  for (Simplex const& alpha : M.complex.simplices(top)) {
    for (std::size_t v = 0; v < M.subsets.size(); ++v) {
      int misses = 0;
      for (int w : alpha) {
        if (!disjoint(M.subsets[v], M.subsets[static_cast<std::size_t>(w)])) {
          ++misses;
        }
      }
      if (misses > d) {
        return false;
      }
    }
  }
  return true;
}

ConnectivityReport matching_connectivity_check(int d, int n) {
  if (n < d) {
    throw DomainError("connectivity check needs n >= d");
  }
  ConnectivityReport report;
  report.bound = (n - d) / (d * d) - 1;
  MatchingComplex const M = matching_complex(d, n);
  report.profile = reduced_homology(M.complex, RingSpec::integers(), std::max(report.bound, -1));
  report.passed = true;
  for (DegreeHomology const& h : report.profile.degrees) {
    if (h.degree <= report.bound && !h.zero()) {
      report.passed = false;
    }
  }
  return report;
}

LinkReport link_check(int d, int n, int k) {
  if (k < 0 || (k + 1) * d > n) {
    throw DomainError("M_{" + std::to_string(d) + "," + std::to_string(n) + "} has no " +
                      std::to_string(k) + "-simplex");
  }
  MatchingComplex const M = matching_complex(d, n);
  LinkReport report{d, n, k, {}, {}, false, false};
  std::vector<bool> used(static_cast<std::size_t>(n + 1), false);
  for (int v = 0; v <= k; ++v) {
    std::vector<int> block;
    for (int i = 1; i <= d; ++i) {
      block.push_back(v * d + i);
      used[static_cast<std::size_t>(v * d + i)] = true;
    }
    report.simplex.push_back(std::move(block));
  }
  // Order-preserving relabelling of the unused points onto 1..n - d(k+1).
  std::vector<int> relabel(static_cast<std::size_t>(n + 1), 0);
  int next = 0;
  for (int x = 1; x <= n; ++x) {
    if (!used[static_cast<std::size_t>(x)]) {
      relabel[static_cast<std::size_t>(x)] = ++next;
    }
  }
  auto free_of_sigma = [&](std::vector<int> const& s) {
    return std::none_of(s.begin(), s.end(), [&](int x) { return used[static_cast<std::size_t>(x)]; });
  };
  MatchingComplex const small = matching_complex(d, next);
  std::map<std::vector<int>, int> small_index;
  for (std::size_t i = 0; i < small.subsets.size(); ++i) {
    small_index.emplace(small.subsets[i], static_cast<int>(i));
  }
  std::vector<Simplex> link;
  for (int dim = 0; dim <= M.complex.dimension(); ++dim) {
    for (Simplex const& s : M.complex.simplices(dim)) {
      bool ok = true;
      Simplex image;
      for (int v : s) {
        auto const& subset = M.subsets[static_cast<std::size_t>(v)];
        if (!free_of_sigma(subset)) {
          ok = false;
          break;
        }
        std::vector<int> moved;
        for (int x : subset) {
          moved.push_back(relabel[static_cast<std::size_t>(x)]);
        }
        image.push_back(small_index.at(moved));
      }
      if (ok) {
        std::sort(image.begin(), image.end());
        link.push_back(std::move(image));
      }
    }
  }
  SimplicialComplex const L = SimplicialComplex::closure_of(link);
  report.link_f_vector = L.f_vector();
  bool same = L.f_vector() == small.complex.f_vector();
  for (int dim = 0; same && dim <= L.dimension(); ++dim) {
    same = L.simplices(dim) == small.complex.simplices(dim);
  }
  report.matches_vertex_count_convention = same;
  // M_{d, n - dk} has more vertices than the link unless both are empty,
  // so comparing f-vectors decides this convention.
  report.matches_dk_convention = L.f_vector() == matching_complex(d, n - d * k).complex.f_vector();
  return report;
}

Integer stabilizer_index(int n, std::vector<int> const& J) {
  std::set<int> seen;
  for (int x : J) {
    if (x < 1 || x > n || !seen.insert(x).second) {
      throw DomainError("J must be a set of points in 1.." + std::to_string(n));
    }
  }
  return binomial(static_cast<unsigned>(n), static_cast<unsigned>(J.size()));
}

// --- descending links -------------------------------------------------------

namespace {

class GroupTable {
 public:
  GroupTable(int d, std::vector<aaut::Label> const& elements) {
    for (aaut::Label const& g : elements) {
      if (g.degree() != d) {
        throw DomainError("group element over a different alphabet");
      }
      automata_.push_back(g.to_automaton());
      labels_.push_back(g);
    }
    auto const id = std::find_if(automata_.begin(), automata_.end(),
                                 [](tree::Automaton const& a) { return tree::is_identity(a); });
    if (id == automata_.end()) {
      throw DomainError("group does not contain the identity");
    }
    identity_ = static_cast<std::size_t>(id - automata_.begin());
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      for (std::size_t j = i + 1; j < labels_.size(); ++j) {
        if (tree::equals(automata_[i], automata_[j])) {
          throw DomainError("group lists an element twice");
        }
      }
    }
    for (aaut::Label const& a : labels_) {
      index_of(a.inverse());
      for (aaut::Label const& b : labels_) {
        index_of(a.compose(b));
      }
    }
  }

  std::size_t size() const noexcept { return labels_.size(); }
  aaut::Label const& operator[](std::size_t i) const { return labels_[i]; }

  std::size_t index_of(aaut::Label const& f) const {
    if (f.is_trivial()) {
      return identity_;
    }
    tree::Automaton const a = f.to_automaton();
    for (std::size_t i = 0; i < automata_.size(); ++i) {
      if (tree::equals(a, automata_[i])) {
        return i;
      }
    }
    throw DomainError("group is not closed under composition and inversion");
  }

 private:
  std::vector<aaut::Label> labels_;
  std::vector<tree::Automaton> automata_;
  std::size_t identity_ = 0;
};

// F_J with carets on the first `carets` of `roots` roots.
aaut::Forest elementary_forest(int d, std::size_t roots, std::size_t carets) {
  std::vector<std::string> trees;
  for (std::size_t r = 0; r < roots; ++r) {
    trees.push_back(r < carets ? "C" + std::string(static_cast<std::size_t>(d), 'L') : "L");
  }
  return aaut::Forest(d, std::move(trees));
}

struct Cell {
  std::vector<int> sigma;         // one-line images
  std::vector<std::size_t> f;     // group element indices

  friend auto operator<=>(Cell const&, Cell const&) = default;
};

aaut::Triple make_triple(Cell const& c, GroupTable const& G, aaut::Forest const& plus) {
  int const n = static_cast<int>(c.sigma.size());
  aaut::Triple x{aaut::Forest::trivial(plus.degree(), static_cast<std::size_t>(n)),
                 tree::Permutation(c.sigma), {}, plus};
  for (std::size_t i : c.f) {
    x.labels.push_back(G[i]);
  }
  return x;
}

Cell read_cell(aaut::Triple const& z, GroupTable const& G) {
  Cell c{z.sigma.images(), {}};
  for (aaut::Label const& f : z.labels) {
    c.f.push_back(G.index_of(f));
  }
  return c;
}

std::vector<int> caret_image(Cell const& c, int d, std::size_t caret) {
  std::vector<int> out;
  for (int k = 1; k <= d; ++k) {
    out.push_back(c.sigma[caret * static_cast<std::size_t>(d) + static_cast<std::size_t>(k) - 1]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

DescendingLinkReport descending_link(int d, int n, std::vector<aaut::Label> const& group) {
  if (d != 2 || n < d || n > kDescendingLinkMaxN || group.empty() ||
      group.size() > kDescendingLinkMaxGroup) {
    throw CapExceeded("descending links are limited to d = 2, 2 <= n <= " +
                      std::to_string(kDescendingLinkMaxN) + " and groups of order <= " +
                      std::to_string(kDescendingLinkMaxGroup));
  }
  GroupTable const G(d, group);
  DescendingLinkReport report;
  report.d = d;
  report.n = n;
  report.group_order = G.size();
  report.well_defined = true;
  report.disjoint_images = true;
  report.injective_on_simplices = true;

  MatchingComplex const M = matching_complex(d, n);
  std::map<std::vector<int>, int> m_vertex;
  for (std::size_t i = 0; i < M.subsets.size(); ++i) {
    m_vertex.emplace(M.subsets[i], static_cast<int>(i));
  }

  std::size_t const max_carets = static_cast<std::size_t>(n / d);
  std::size_t const D = static_cast<std::size_t>(d);
  auto const un = static_cast<std::size_t>(n);
  // classes[j - 1]: representatives of the classes with j carets;
  // class_of[j - 1]: every cell with F_{1..j} mapped to its class.
  std::vector<std::vector<Cell>> classes(max_carets);
  std::vector<std::map<Cell, std::size_t>> class_of(max_carets);

  for (std::size_t j = 1; j <= max_carets; ++j) {
    std::size_t const roots = un - (D - 1) * j;
    aaut::Forest const plus = elementary_forest(d, roots, j);
    // Generators of {(mu, h) in S_roots wr G : mu({1..j}) = {1..j}}.
    std::vector<aaut::Triple> gens;
    auto permutation_gen = [&](std::vector<int> const& cycle) {
      gens.push_back(aaut::plain_triple(aaut::Forest::trivial(d, roots),
                                        tree::Permutation::cycle(static_cast<int>(roots), cycle),
                                        aaut::Forest::trivial(d, roots)));
    };
    auto block = [](std::size_t from, std::size_t to) {
      std::vector<int> out;
      for (std::size_t i = from; i <= to; ++i) {
        out.push_back(static_cast<int>(i));
      }
      return out;
    };
    if (j >= 2) {
      permutation_gen({1, 2});
      permutation_gen(block(1, j));
    }
    if (roots - j >= 2) {
      permutation_gen({static_cast<int>(j + 1), static_cast<int>(j + 2)});
      permutation_gen(block(j + 1, roots));
    }
    for (std::size_t root : {std::size_t{1}, j + 1}) {
      if (root > roots) {
        continue;
      }
      for (std::size_t g = 0; g < G.size(); ++g) {
        if (G[g].is_identity()) {
          continue;
        }
        aaut::Triple y = aaut::identity_triple(d, roots);
        y.labels[root - 1] = G[g];
        gens.push_back(std::move(y));
      }
    }

    auto& table = class_of[j - 1];
    std::vector<int> sigma = tree::Permutation::identity(n).images();
    do {
      std::vector<std::size_t> f(un, 0);
      while (true) {
        Cell start{sigma, f};
        if (!table.count(start)) {
          std::size_t const id = classes[j - 1].size();
          classes[j - 1].push_back(start);
          table.emplace(start, id);
          std::deque<Cell> queue{start};
          while (!queue.empty()) {
            Cell const c = queue.front();
            queue.pop_front();
            aaut::Triple const x = make_triple(c, G, plus);
            for (aaut::Triple const& y : gens) {
              aaut::Triple const z = aaut::multiply(x, y);
              if (!(z.plus == plus) || !(z.minus == aaut::Forest::trivial(d, un))) {
                throw DomainError("stabiliser action left the elementary forest");
              }
              Cell next = read_cell(z, G);
              if (table.emplace(next, id).second) {
                if (j == 1 && caret_image(next, d, 0) != caret_image(start, d, 0)) {
                  report.well_defined = false;
                }
                queue.push_back(std::move(next));
              }
            }
          }
        }
        // Next label vector (odometer).
        std::size_t pos = 0;
        while (pos < un && ++f[pos] == G.size()) {
          f[pos++] = 0;
        }
        if (pos == un) {
          break;
        }
      }
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    report.simplex_counts.push_back(classes[j - 1].size());
  }

  // Vertex fibres over M_{d,n}.
  std::vector<std::size_t> fiber(M.subsets.size(), 0);
  std::vector<int> vertex_image;
  for (Cell const& c : classes[0]) {
    int const v = m_vertex.at(caret_image(c, d, 0));
    vertex_image.push_back(v);
    ++fiber[static_cast<std::size_t>(v)];
  }
  report.min_fiber = *std::min_element(fiber.begin(), fiber.end());
  report.max_fiber = *std::max_element(fiber.begin(), fiber.end());

  // Vertices of every simplex, found by splitting all carets but one and
  // moving the remaining caret to the first root.
  std::map<Simplex, std::size_t> over;  // pi(simplex) -> number of simplices
  aaut::Forest const vertex_forest = elementary_forest(d, un - (D - 1), 1);
  for (std::size_t j = 1; j <= max_carets; ++j) {
    std::set<std::vector<std::size_t>> vertex_sets;
    for (Cell const& c : classes[j - 1]) {
      std::vector<std::size_t> vertices;
      Simplex image;
      for (std::size_t r = 0; r < j; ++r) {
        std::vector<std::string> trees;
        for (std::size_t q = 0; q < j; ++q) {
          if (q == r) {
            trees.push_back("C" + std::string(D, 'L'));
          } else {
            trees.insert(trees.end(), D, "L");
          }
        }
        trees.insert(trees.end(), un - D * j, "L");
        aaut::Forest const face(d, std::move(trees));
        std::size_t const roots = face.roots();
        std::size_t const position = r * D + 1;
        std::vector<int> mu{static_cast<int>(position)};
        for (std::size_t i = 1; i <= roots; ++i) {
          if (i != position) {
            mu.push_back(static_cast<int>(i));
          }
        }
        aaut::Triple const y = aaut::plain_triple(aaut::Forest::trivial(d, roots),
                                                  tree::Permutation(mu),
                                                  aaut::Forest::trivial(d, roots));
        aaut::Triple const z = aaut::multiply(make_triple(c, G, face), y);
        if (!(z.plus == vertex_forest)) {
          throw DomainError("face normalisation left the elementary forest");
        }
        std::size_t const v = class_of[0].at(read_cell(z, G));
        vertices.push_back(v);
        int const pv = m_vertex.at(caret_image(c, d, r));
        if (vertex_image[v] != pv) {
          report.well_defined = false;
        }
        image.push_back(pv);
      }
      std::sort(vertices.begin(), vertices.end());
      if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end() ||
          !vertex_sets.insert(vertices).second) {
        report.injective_on_simplices = false;
      }
      std::sort(image.begin(), image.end());
      if (!M.complex.contains(image)) {
        report.disjoint_images = false;
      }
      ++over[image];
    }
  }

  report.surjective = true;
  report.complete_join = true;
  for (int dim = 0; dim <= M.complex.dimension(); ++dim) {
    for (Simplex const& alpha : M.complex.simplices(dim)) {
      std::size_t expected = 1;
      for (int v : alpha) {
        expected *= fiber[static_cast<std::size_t>(v)];
      }
      auto it = over.find(alpha);
      std::size_t const actual = it == over.end() ? 0 : it->second;
      if (actual == 0) {
        report.surjective = false;
      }
      if (actual != expected) {
        report.complete_join = false;
        std::ostringstream msg;
        msg << "simplex of dimension " << dim << " has " << actual << " preimages, expected "
            << expected;
        report.failures.push_back(msg.str());
      }
    }
  }
  report.complete_join = report.complete_join && report.injective_on_simplices &&
                         report.well_defined && report.disjoint_images;
  if (!report.well_defined) {
    report.failures.push_back("pi is not constant on classes");
  }
  if (!report.injective_on_simplices) {
    report.failures.push_back("two simplices share a vertex set");
  }
  if (!report.disjoint_images) {
    report.failures.push_back("image of a simplex is not a matching");
  }
  return report;
}

}  // namespace rover::topo
