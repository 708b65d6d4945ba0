#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "boundary.hpp"
#include "rover/aaut.hpp"
#include "support.hpp"

using namespace rover;
using namespace rover::aaut;

namespace {

Label adding(int d) {
  return Label(tree::Automaton::adding_machine(d));
}

Triple cone_swap() {
  return plain_triple(Forest::caret(2), tree::Permutation({2, 1}), Forest::caret(2));
}

Triple random_expansion(Triple x, std::size_t steps, std::mt19937_64& rng) {
  for (std::size_t k = 0; k < steps; ++k) {
    x = simple_expand(x, std::uniform_int_distribution<std::size_t>(1, x.size())(rng));
  }
  return x;
}

}  // namespace

TEST_CASE("forests") {
  Forest const f = Forest::parse(2, "CLL+L");
  CHECK(f.roots() == 2);
  CHECK(f.leaves() == 3);
  CHECK(f.carets() == 1);
  CHECK(to_string(f) == "CLL+L");
  CHECK(Forest::parse(3, "CLCLLLL").depth() == 2);
  CHECK(Forest::caret(2).expanded(2) == Forest::parse(2, "CLCLL"));
  CHECK(Forest::trivial(2, 3).leaves() == 3);
  CHECK_THROWS_AS(Forest::parse(2, "CL"), DomainError);
  CHECK_THROWS_AS(Forest::parse(2, "CLX"), DomainError);
}

TEST_CASE("cone swap fixtures") {
  Triple const x = cone_swap();
  CHECK(is_identity_triple(multiply(x, x)));
  CHECK(equals_triple(invert_triple(x), x));
  CHECK(act_boundary(x, {1, 2, 2}) == tree::Word{2, 2, 2});
  CHECK_FALSE(is_identity_triple(x));
  CHECK(is_identity_triple(identity_triple(2)));
  CHECK(is_identity_triple(plain_triple(Forest::caret(2), tree::Permutation::identity(2),
                                        Forest::caret(2))));
  CHECK(act_boundary(identity_triple(2), {1, 2, 1}) == tree::Word{1, 2, 1});
}

TEST_CASE("iota1 fixtures") {
  Label const a = adding(2);
  Triple const x = iota1(a);
  CHECK(act_boundary(x, {1, 1, 1}) == tree::Word{1, 2, 1});
  CHECK(act_boundary(x, {2, 1, 1}) == tree::Word{2, 1, 1});
  CHECK(is_identity_triple(multiply(x, iota1(a.inverse()))));
  CHECK(equals_triple(multiply(x, x), iota1(a.compose(a))));
  CHECK(equals_triple(invert_triple(x), iota1(a.inverse())));
  CHECK_FALSE(equals_triple(x, iota1(Label(2))));
  CHECK(equals_triple(x, simple_expand(x, 1)));
}

TEST_CASE("simple expansion follows the wreath recursion") {
  Triple const y = simple_expand(iota1(adding(2)), 1);
  CHECK(y.plus == Forest::parse(2, "CCLLL"));
  CHECK(y.minus == Forest::parse(2, "CCLLL"));
  CHECK(y.sigma.images() == std::vector<int>{2, 1, 3});
  REQUIRE(y.labels.size() == 3);
  CHECK(y.labels[0].is_identity());
  CHECK(tree::equals(y.labels[1].to_automaton(), tree::Automaton::adding_machine(2)));
  CHECK(y.labels[2].is_identity());

  Triple const z = simple_expand(iota1(adding(2)), 2);
  CHECK(z.sigma.is_identity());
  CHECK_THROWS_AS(simple_expand(iota1(adding(2)), 3), DomainError);
}

TEST_CASE("expand_to_common takes the union of shapes") {
  Triple const x = plain_triple(Forest::caret(2), tree::Permutation::identity(2), Forest::caret(2));
  auto const [x1, y1] = expand_to_common(x, identity_triple(2));
  CHECK(x1.plus == y1.minus);
  CHECK(y1.minus == Forest::caret(2));

  Forest const left = Forest::parse(2, "CCLLL");
  Forest const right = Forest::parse(2, "CLCLL");
  Triple const a = plain_triple(left, tree::Permutation::identity(3), left);
  Triple const b = plain_triple(right, tree::Permutation::identity(3), right);
  auto const [a1, b1] = expand_to_common(a, b);
  CHECK(a1.plus == Forest::parse(2, "CCLLCLL"));
  CHECK(b1.minus == Forest::parse(2, "CCLLCLL"));
}

TEST_CASE("expansion leaves the boundary action unchanged") {
  std::mt19937_64 rng(41);
  for (int d = 2; d <= 3; ++d) {
    std::vector<Label> const gens{adding(d)};
    for (int trial = 0; trial < 30; ++trial) {
      Triple const x = random_element(gens, d, 6, rng);
      Triple const y = random_expansion(x, 1 + static_cast<std::size_t>(trial % 4), rng);
      y.validate();
      CHECK(support::boundary_agree(x, y, 10, rng));
      CHECK(equals_triple(x, y));
    }
  }
}

TEST_CASE("group axioms on random words") {
  std::mt19937_64 rng(42);
  for (int d = 2; d <= 3; ++d) {
    std::vector<Label> const gens{adding(d)};
    for (int trial = 0; trial < 40; ++trial) {
      Triple const x = random_element(gens, d, 6, rng);
      Triple const y = random_element(gens, d, 6, rng);
      Triple const z = random_element(gens, d, 6, rng);
      CHECK(equals_triple(multiply(multiply(x, y), z), multiply(x, multiply(y, z))));
      CHECK(is_identity_triple(multiply(x, invert_triple(x))));
      CHECK(is_identity_triple(multiply(invert_triple(x), x)));
      CHECK(equals_triple(multiply(x, identity_triple(d)), x));
    }
  }
}

TEST_CASE("multiplication composes boundary actions") {
  std::mt19937_64 rng(43);
  std::vector<Label> const gens{adding(2)};
  for (int trial = 0; trial < 30; ++trial) {
    Triple const x = random_element(gens, 2, 5, rng);
    Triple const y = random_element(gens, 2, 5, rng);
    Triple const xy = multiply(x, y);
    std::size_t const length =
        std::max({std::size_t{12}, xy.plus.depth(), y.plus.depth()}) + x.plus.depth() + 4;
    for (int k = 0; k < 50; ++k) {
      tree::Word const w = support::random_word(2, length, rng);
      tree::Word const direct = act_boundary(xy, w);
      tree::Word const step = act_boundary(x, act_boundary(y, w));
      CHECK(support::prefix_compatible(direct, step));
    }
  }
}

TEST_CASE("iota1 is a homomorphism") {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 40; ++trial) {
    tree::Automaton const g = support::random_automaton(2, 4, rng);
    tree::Automaton const h = support::random_automaton(2, 4, rng);
    CHECK(equals_triple(iota1(Label(tree::compose(g, h))),
                        multiply(iota1(Label(g)), iota1(Label(h)))));
  }
}

TEST_CASE("word problem agrees with the boundary oracle") {
  std::mt19937_64 rng(45);
  for (int d = 2; d <= 3; ++d) {
    std::vector<Label> const gens{adding(d)};
    int equal_pairs = 0;
    for (int trial = 0; trial < 60; ++trial) {
      Triple const x = random_element(gens, d, 6, rng);
      Triple y = random_element(gens, d, 6, rng);
      if (trial % 2 == 0) {
        Triple const z = random_element(gens, d, 4, rng);
        y = random_expansion(multiply(multiply(x, z), invert_triple(z)), 2, rng);
      }
      bool const decided = equals_triple(x, y);
      equal_pairs += decided ? 1 : 0;
      CHECK(decided == support::boundary_agree(x, y, 10, rng));
    }
    CHECK(equal_pairs >= 30);
  }
}

TEST_CASE("affine labels") {
  affine::AffineMap const g{RationalMatrix{{1}}, {Rational(1)}};
  Label const a(g, affine::TreeShape{2, 1});
  CHECK(a.is_affine());
  CHECK(a.act({1, 1, 1}) == tree::Word{2, 1, 1});
  CHECK(tree::equals(a.to_automaton(), tree::Automaton::adding_machine(2)));
  CHECK(equals_triple(iota1(a), iota1(adding(2))));
  CHECK(is_identity_triple(multiply(iota1(a), iota1(adding(2).inverse()))));
  auto const [perm, states] = a.wreath();
  CHECK(perm.images() == std::vector<int>{2, 1});
  CHECK(states[0].is_identity());
}

TEST_CASE("V generator family") {
  std::vector<Triple> const v2 = v_generator_family(2);
  CHECK(v2.size() == 27);
  CHECK(small_trees(2).size() == 4);
  CHECK(v_generator_family(3).size() == 1 + 6 + 9 * 120);
  for (Triple const& x : v2) {
    x.validate();
    CHECK(is_identity_triple(multiply(x, invert_triple(x))));
  }
}

TEST_CASE("quasi-retraction") {
  RationalMatrix const q = RationalMatrix::diagonal({Rational(2), Rational(1, 2), Rational(1)});
  affine::AffineGroupSpec const spec = affine::build_gamma({{"g", q}}, 3, 2, 3);
  affine::QuotientProjection const project(spec);
  CHECK(rho_quasiretract(identity_triple(27), project, 3).is_identity());
  Label const g(spec.generator("g"), spec.shape());
  Label const t(spec.generator("t"), spec.shape());
  CHECK(rho_quasiretract(iota1(g), project, 3) == q);
  CHECK(rho_quasiretract(iota1(t), project, 3).is_identity());
  CHECK(rho_quasiretract(simple_expand(iota1(g), 1), project, 3) == q);
  CHECK_THROWS_AS(rho_quasiretract(iota1(adding(27)), project, 3), DomainError);

  RhoCheckOptions options;
  options.samples = 40;
  options.chains = 10;
  options.chain_length = 20;
  RhoCheckReport const report = rho_property_check(spec, options);
  CHECK(report.passed());
  CHECK(report.property1_checks == 40);
  CHECK(report.property2_checks == 40);

  affine::AffineGroupSpec const trivial = affine::build_gamma({}, 1, 2, 3);
  CHECK(rho_property_check(trivial, options).passed());
}
