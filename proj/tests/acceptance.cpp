// Acceptance suite: one line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "boundary.hpp"
#include "rover/aaut.hpp"
#include "rover/abel.hpp"
#include "rover/affine.hpp"
#include "rover/pipeline.hpp"
#include "rover/topo.hpp"
#include "support.hpp"

using namespace rover;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;
};

// Collects failures; the first few are kept as witnesses.
class Tally {
 public:
  void expect(bool ok, std::string const& what) {
    ++checks_;
    if (!ok) {
      if (failures_.size() < 3) {
        failures_.push_back(what);
      }
      ++failed_;
    }
  }
  Outcome outcome(std::string const& summary) const {
    std::ostringstream out;
    out << summary << ", " << checks_ << " checks";
    if (failed_ > 0) {
      out << ", " << failed_ << " failed:";
      for (auto const& f : failures_) {
        out << " [" << f << "]";
      }
    }
    return {failed_ == 0, out.str()};
  }

 private:
  std::size_t checks_ = 0;
  std::size_t failed_ = 0;
  std::vector<std::string> failures_;
};

Outcome affine_oracle() {
  std::mt19937_64 rng(1001);
  Tally t;
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t const n = 1 + static_cast<std::size_t>(trial % 3);
    support::RandomAffine const r = support::random_affine(n, rng);
    affine::AffineMap const g{r.A, r.b};
    int const d = affine::TreeShape{r.p, static_cast<int>(n)}.degree();
    for (int k = 0; k < 10; ++k) {
      tree::Word const w = support::random_word(d, 8, rng);
      std::vector<affine::Digits> in;
      for (int x : w) {
        in.push_back(support::lex_digits(x, r.p, static_cast<int>(n)));
      }
      tree::Word out;
      for (auto const& y : affine::affine_act(g, in, r.p)) {
        out.push_back(support::lex_letter(y, r.p));
      }
      t.expect(out == support::affine_word_oracle(r.A, r.b, w, r.p),
               affine::to_string(g) + " p=" + std::to_string(r.p));
    }
  }
  return t.outcome("200 maps, n <= 3, depth 8");
}

// Random Q <= GL_k(Q), k in {1, 2}, with small integer generators.
std::vector<affine::NamedMatrix> random_q(std::mt19937_64& rng) {
  std::size_t const k = 1 + rng() % 2;
  std::size_t const count = 1 + rng() % 2;
  std::vector<affine::NamedMatrix> out;
  while (out.size() < count) {
    IntegerMatrix M = support::random_integer_matrix(k, k, 3, rng);
    if (determinant(M) != 0) {
      out.push_back({"q" + std::to_string(out.size() + 1), to_rational(M)});
    }
  }
  return out;
}

Outcome rigid_states() {
  std::mt19937_64 rng(1002);
  Tally t;
  std::size_t states = 0;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<affine::NamedMatrix> q = random_q(rng);
    std::size_t const k = q.front().matrix.rows();
    std::vector<RationalMatrix> matrices;
    for (auto const& m : q) {
      matrices.push_back(m.matrix);
    }
    affine::Embedding const e = affine::j_embed_odd(matrices, k);
    for (std::size_t i = 0; i < q.size(); ++i) {
      q[i].matrix = e.matrices[i];
    }
    affine::RingChoice ring = affine::choose_N_p(e.matrices);
    if (ring.N == 1) {
      ring = {2, 3};
    }
    affine::AffineGroupSpec const spec =
        affine::build_gamma(q, static_cast<int>(e.dimension), ring.N, ring.p);
    affine::TreeShape const shape = spec.shape();
    for (affine::NamedMap const& g : spec.generators) {
      for (int x = 1; x <= shape.degree(); ++x) {
        affine::Digits const tuple = affine::letter_tuple(shape, x);
        affine::AffineState const s = affine::affine_state(g.map, tuple, spec.p);
        bool exact = s.state.A == g.map.A;
        for (std::size_t i = 0; i < g.map.b.size(); ++i) {
          Rational lhs = g.map.b[i];
          for (std::size_t j = 0; j < g.map.b.size(); ++j) {
            lhs += g.map.A(i, j) * tuple[j];
          }
          exact = exact && lhs == Rational(s.image[i]) + spec.p * s.state.b[i] &&
                  s.image[i] >= 0 && s.image[i] < spec.p;
        }
        t.expect(exact, g.name + " at letter " + std::to_string(x));
      }
      for (affine::AffineMap const& s : affine::state_closure(g.map, shape)) {
        ++states;
        t.expect(affine::persistent_retract(s) == g.map.A, g.name + " closure");
      }
    }
  }
  return t.outcome("50 built specs, " + std::to_string(states) + " closure states");
}

Outcome adding_machine_fixture() {
  Tally t;
  affine::AffineMap const a{RationalMatrix{{1}}, {Rational(1)}};
  affine::AffineState const s0 = affine::affine_state(a, {0}, 2);
  affine::AffineState const s1 = affine::affine_state(a, {1}, 2);
  t.expect(s0.image == affine::Digits{1} && s0.state.b == std::vector<Rational>{0}, "x=0");
  t.expect(s1.image == affine::Digits{0} && s1.state.b == std::vector<Rational>{1}, "x=1");
  auto const closure = affine::state_closure(a, affine::TreeShape{2, 1});
  t.expect(closure.size() == 2, "closure size " + std::to_string(closure.size()));
  affine::AffineAutomaton const automaton = affine::to_automaton(a, affine::TreeShape{2, 1});
  t.expect(tree::equals(automaton.automaton, tree::Automaton::adding_machine(2)), "odometer");
  return t.outcome("x=0 -> (1, 0), x=1 -> (0, 1), closure 2");
}

Outcome doubling() {
  std::mt19937_64 rng(1004);
  Tally t;
  for (int trial = 0; trial < 100; ++trial) {
    int const d = 2 + trial % 2;
    int const m = 2 + trial % 3;
    tree::Automaton const g = support::random_automaton(d, 6, rng);
    t.expect(tree::equals(abel::restrict_letters(abel::doubling(g, m), d), g),
             "trial " + std::to_string(trial));
  }
  tree::Automaton const a2 = abel::doubling(tree::Automaton::adding_machine(2), 2);
  t.expect(a2.initial_state().perm.images() == std::vector<int>{2, 1, 4, 3},
           "root permutation " + tree::to_string(a2.initial_state().perm));
  return t.outcome("100 automata, m in {2,3,4}; root (1 2)(3 4)");
}

Outcome certificates() {
  Tally t;
  abel::WreathPresentation v2;
  v2.d = 2;
  t.expect(abel::v_ab_presentation(v2, 1).group.trivial(), "V_2");
  abel::WreathPresentation v3;
  v3.d = 3;
  abel::VAbBound const b3 = abel::v_ab_presentation(v3, 1);
  t.expect(b3.odd_case && to_string(b3.group) == "Z/2", "V_3 " + to_string(b3.group));
  abel::MinimalM const a =
      abel::find_minimal_m(abel::presentation_of({{"a", tree::Automaton::adding_machine(2)}}));
  t.expect(a.m == 2 && a.det == -1 && a.bound.group.trivial(), "adding machine");
  abel::WreathPresentation const g = abel::presentation_of(affine::build_gamma({}, 1, 2, 3));
  IntegerMatrix const A = abel::class_sum_matrix(g);
  t.expect(A == IntegerMatrix{{1, 1}, {0, 3}}, "class matrix " + to_string(A));
  abel::MinimalM const mg = abel::find_minimal_m(g);
  t.expect(mg.det != 0 && mg.m % 2 == 0, "minimal m");
  return t.outcome("V_2 -> 0, V_3 -> Z/2, odometer det -1, Gamma A = [[1,1],[0,3]] with m = " +
                   std::to_string(mg.m) + ", det " + mg.det.get_str());
}

Outcome word_problem() {
  std::mt19937_64 rng(1006);
  Tally t;
  std::size_t equal_pairs = 0;
  for (int d = 2; d <= 3; ++d) {
    std::vector<aaut::Label> const gens{aaut::Label(tree::Automaton::adding_machine(d))};
    for (int k = 0; k < 250; ++k) {
      aaut::Triple const w = aaut::random_element(gens, d, 8, rng);
      t.expect(aaut::equals_triple(aaut::multiply(w, aaut::invert_triple(w)), aaut::identity_triple(d)),
               "w w^-1 on d=" + std::to_string(d));
    }
    for (int k = 0; k < 100; ++k) {
      aaut::Triple const x = aaut::random_element(gens, d, 8, rng);
      aaut::Triple y = aaut::random_element(gens, d, 8, rng);
      if (k % 2 == 0) {
        // An equal element written differently.
        aaut::Triple const z = aaut::random_element(gens, d, 4, rng);
        y = aaut::multiply(aaut::multiply(x, z), aaut::invert_triple(z));
        for (int s = 0; s < 2; ++s) {
          y = aaut::simple_expand(y, 1 + rng() % y.size());
        }
      }
      bool const decided = aaut::equals_triple(x, y);
      equal_pairs += decided ? 1 : 0;
      t.expect(decided == support::boundary_agree(x, y, 10, rng),
               "pair " + std::to_string(k) + " on d=" + std::to_string(d));
    }
  }
  return t.outcome("500 words, 200 pairs (" + std::to_string(equal_pairs) + " equal)");
}

Outcome quasiretract() {
  Tally t;
  RationalMatrix const q = RationalMatrix::diagonal({Rational(2), Rational(1, 2), Rational(1)});
  affine::AffineGroupSpec const spec = affine::build_gamma({{"g", q}}, 3, 2, 3);
  aaut::RhoCheckOptions options;
  options.samples = 200;
  options.chains = 50;
  options.chain_length = 50;
  options.seed = 1007;
  aaut::RhoCheckReport const r = aaut::rho_property_check(spec, options);
  t.expect(r.expansion_checks >= 50 * 50, "expansion checks");
  t.expect(r.property1_checks == 200 && r.property2_checks == 200, "sample counts");
  for (auto const& f : r.failures) {
    t.expect(false, f);
  }
  return t.outcome("Q = <2> embedded as diag(2, 1/2, 1): " + std::to_string(r.expansion_checks) +
                   " expansion, " + std::to_string(r.property1_checks) + " + " +
                   std::to_string(r.property2_checks) + " property samples");
}

topo::Graph graph(int v, std::vector<std::pair<int, int>> edges) {
  topo::Graph g{v, std::move(edges)};
  g.validate();
  return g;
}

Outcome homology() {
  Tally t;
  std::vector<topo::RingSpec> const Z{topo::RingSpec::integers()};
  auto group = [](topo::SimplicialComplex const& K, int k) {
    return to_string(topo::RingSpec::integers(),
                     topo::reduced_homology(K, topo::RingSpec::integers()).at(k).group);
  };
  topo::Graph const c4 = graph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  topo::SimplicialComplex const c4_flag = topo::flag_complex(c4);
  t.expect(group(c4_flag, 0) == "0" && group(c4_flag, 1) == "Z", "C4 homology");
  t.expect(topo::finiteness_profile(c4, Z).rings[0].verdict == "FP_1(Z), not FP_2(Z)", "C4 verdict");

  std::vector<std::pair<int, int>> oct_edges;
  for (int i = 0; i < 6; ++i) {
    for (int j = i + 1; j < 6; ++j) {
      if (j != i + 3) {
        oct_edges.emplace_back(i, j);
      }
    }
  }
  topo::Graph const oct = graph(6, oct_edges);
  topo::SimplicialComplex const oct_flag = topo::flag_complex(oct);
  t.expect(group(oct_flag, 0) == "0" && group(oct_flag, 1) == "0" && group(oct_flag, 2) == "Z",
           "octahedron homology");
  t.expect(topo::finiteness_profile(oct, Z).rings[0].verdict == "FP_2(Z), not FP_3(Z)",
           "octahedron verdict");

  topo::FinitenessReport const k3 = topo::finiteness_profile(graph(3, {{0, 1}, {1, 2}, {0, 2}}), Z);
  t.expect(k3.collapsible && k3.homotopy.rfind("F_infinity", 0) == 0, "K3 collapse");

  t.expect(group(topo::matching_complex(2, 4).complex, 0) == "Z^2", "M_{2,4} components");
  topo::HomologyProfile const m25 =
      topo::reduced_homology(topo::matching_complex(2, 5).complex, topo::RingSpec::integers());
  t.expect(m25.at(1).group.free_rank == 6 && m25.at(1).group.torsion.empty(), "M_{2,5} b1");
  return t.outcome("C4, octahedron, K3, M_{2,4} (3 components), M_{2,5} (b1 = 6)");
}

Outcome matching() {
  auto const start = std::chrono::steady_clock::now();
  Tally t;
  for (int d = 2; d <= 3; ++d) {
    for (int n = d; n <= 9; ++n) {
      std::string const at = "(" + std::to_string(d) + "," + std::to_string(n) + ")";
      t.expect(topo::grounded_check(d, n), "grounded " + at);
      t.expect(topo::matching_connectivity_check(d, n).passed, "connectivity " + at);
    }
  }
  std::string conventions;
  for (auto [d, n, k] : {std::tuple{2, 6, 0}, std::tuple{2, 8, 1}, std::tuple{3, 9, 0}}) {
    topo::LinkReport const r = topo::link_check(d, n, k);
    bool const verified = r.matches_vertex_count_convention || r.matches_dk_convention;
    t.expect(verified, "link (" + std::to_string(d) + "," + std::to_string(n) + "," +
                           std::to_string(k) + ")");
    conventions += std::string(conventions.empty() ? "" : ", ") +
                   (r.matches_vertex_count_convention ? "n-d(k+1)" : "n-dk");
  }
  double const seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  t.expect(seconds < 60.0, "runtime");
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.2f s", seconds);
  return t.outcome("d in {2,3}, d <= n <= 9; links match M_{d," + conventions + "}; " + buffer);
}

Outcome descending() {
  Tally t;
  std::vector<aaut::Label> const trivial{aaut::Label(2)};
  std::vector<aaut::Label> const z2{aaut::Label(2),
                                    aaut::Label(tree::Automaton::rooted(tree::Permutation({2, 1})))};
  std::string counts;
  for (auto const* group : {&trivial, &z2}) {
    for (int n = 4; n <= 6; ++n) {
      topo::DescendingLinkReport const r = topo::descending_link(2, n, *group);
      std::string const at = (group->size() == 1 ? "trivial" : "Z/2") + std::string(" n=") +
                             std::to_string(n);
      t.expect(r.surjective, "surjective " + at);
      t.expect(r.complete_join, "complete join " + at);
      t.expect(r.well_defined && r.disjoint_images, "projection " + at);
      for (auto const& f : r.failures) {
        t.expect(false, at + ": " + f);
      }
      std::size_t total = 0;
      for (std::size_t c : r.simplex_counts) {
        total += c;
      }
      counts += (counts.empty() ? "" : ", ") + std::to_string(total);
    }
  }
  return t.outcome("G trivial and Z/2, d = 2, n = 4..6; simplices " + counts);
}

Outcome pipeline_end_to_end() {
  Tally t;
  std::vector<affine::NamedMatrix> const q{{"g", RationalMatrix{{2}}}};
  pipeline::Report const r = pipeline::run_pipeline(q, 1);
  t.expect(r.gamma.N == 2 && r.gamma.p == 3, "N and p");
  t.expect(r.gamma.degree() == 27, "d");
  t.expect(r.gamma.generators.size() == 5, "r");
  t.expect(r.m % 2 == 0 && r.det != 0, "m and det");
  t.expect(r.persistence.passed() && r.persistence.letters == 27 && r.persistence.generators == 5,
           "persistence");
  std::string const a = pipeline::emit_report(r);
  std::string const b = pipeline::emit_report(pipeline::run_pipeline(q, 1));
  t.expect(a == b, "deterministic report");
  t.expect(a.find(r.det.get_str()) != std::string::npos, "determinant in report");
  return t.outcome("N = 2, p = 3, d = 27, r = 5, m = " + std::to_string(r.m) + ", det " +
                   r.det.get_str() + ", bound " + to_string(r.bound.group));
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<Outcome()>>> const criteria{
      {"affine action oracle", affine_oracle},
      {"rigid-state identity", rigid_states},
      {"adding-machine fixture", adding_machine_fixture},
      {"doubling", doubling},
      {"abelianization certificates", certificates},
      {"triple calculus and word problem", word_problem},
      {"quasi-retract properties", quasiretract},
      {"homology fixtures", homology},
      {"matching complexes", matching},
      {"descending-link complete join", descending},
      {"end-to-end pipeline", pipeline_end_to_end},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto const start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criteria[i].second();
    } catch (std::exception const& e) {
      outcome = {false, std::string("threw: ") + e.what()};
    }
    double const seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += outcome.passed ? 0 : 1;
    std::printf("[%s] %2zu %s: %s (%.2f s)\n", outcome.passed ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), outcome.detail.c_str(), seconds);
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed),
              criteria.size());
  return failed == 0 ? 0 : 1;
}
