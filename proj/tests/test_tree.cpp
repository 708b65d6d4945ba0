#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rover/tree.hpp"
#include "support.hpp"

using namespace rover;
using namespace rover::tree;

TEST_CASE("permutation basics") {
  Permutation const s({2, 3, 1});
  Permutation const t({2, 1, 3});
  CHECK((s * t)(1) == s(t(1)));
  CHECK((s * s.inverse()).is_identity());
  CHECK(s.sign() == 1);
  CHECK(t.sign() == -1);
  CHECK(Permutation::cycle(4, {1, 3}).images() == std::vector<int>{3, 2, 1, 4});
  CHECK(Permutation({2, 1}).repeated(2).images() == std::vector<int>{2, 1, 4, 3});
  CHECK_THROWS_AS(Permutation({1, 1, 2}), DomainError);
}

TEST_CASE("adding machine adds one to the d-adic integer") {
  for (int d = 2; d <= 4; ++d) {
    Automaton const a = Automaton::adding_machine(d);
    for (Word const& w : support::all_words(d, 5)) {
      CHECK(act(a, w) == support::value_word(support::word_value(w, d) + 1, d, w.size()));
    }
  }
  CHECK(act(Automaton::adding_machine(2), Word{1, 1, 1}) == Word{2, 1, 1});
  CHECK(act(Automaton::adding_machine(2), Word{2, 2, 1}) == Word{1, 1, 2});
}

TEST_CASE("powers of the adding machine add k") {
  Automaton const a = Automaton::adding_machine(3);
  Automaton power = Automaton::identity(3);
  for (int k = 1; k <= 10; ++k) {
    power = compose(a, power);
    for (Word const& w : support::all_words(3, 4)) {
      CHECK(act(power, w) == support::value_word(support::word_value(w, 3) + k, 3, 4));
    }
  }
  CHECK(act(invert(a), Word{1, 1}) == Word{3, 3});
}

TEST_CASE("act agrees with running the table directly") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    int const d = 2 + trial % 3;
    Automaton const f = support::random_automaton(d, 6, rng);
    for (int k = 0; k < 20; ++k) {
      Word const w = support::random_word(d, 8, rng);
      CHECK(act(f, w) == support::run_table(f, w));
    }
  }
}

TEST_CASE("group laws on random automata") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    int const d = 2 + trial % 2;
    Automaton const f = support::random_automaton(d, 6, rng);
    Automaton const g = support::random_automaton(d, 6, rng);
    Automaton const h = support::random_automaton(d, 6, rng);
    CHECK(equals(compose(compose(f, g), h), compose(f, compose(g, h))));
    CHECK(is_identity(compose(f, invert(f))));
    CHECK(is_identity(compose(invert(f), f)));
    for (Word const& w : support::all_words(d, 5)) {
      CHECK(act(compose(f, g), w) == act(f, act(g, w)));
      CHECK(act(invert(f), act(f, w)) == w);
    }
  }
}

TEST_CASE("is_identity matches exhaustive comparison") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    Automaton const f = support::random_automaton(2, 4, rng);
    bool trivial_on_words = true;
    // Four states: two automata that differ, differ within 2*4 levels.
    for (Word const& w : support::all_words(2, 8)) {
      trivial_on_words = trivial_on_words && act(f, w) == w;
    }
    CHECK(is_identity(f) == trivial_on_words);
  }
}

TEST_CASE("state_at satisfies f(uv) = f(u) f^u(v)") {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 50; ++trial) {
    Automaton const f = support::random_automaton(3, 5, rng);
    Word const u = support::random_word(3, 3, rng);
    Word const v = support::random_word(3, 4, rng);
    Word uv = u;
    uv.insert(uv.end(), v.begin(), v.end());
    Word expected = act(f, u);
    Word const tail = act(state_at(f, u), v);
    expected.insert(expected.end(), tail.begin(), tail.end());
    CHECK(act(f, uv) == expected);
  }
}

TEST_CASE("wreath decomposition recovers level one") {
  Automaton const a = Automaton::adding_machine(2);
  auto const [perm, states] = wreath_decompose(a);
  CHECK(perm.images() == std::vector<int>{2, 1});
  CHECK(is_identity(states[0]));
  CHECK(equals(states[1], a));
}

TEST_CASE("iota acts only below its vertex") {
  Automaton const a = Automaton::adding_machine(2);
  Automaton const b = iota(Word{2}, a);
  CHECK(act(b, Word{1, 1, 1}) == Word{1, 1, 1});
  CHECK(act(b, Word{2, 1, 1}) == Word{2, 2, 1});
  CHECK(equals(state_at(b, Word{2}), a));
  CHECK(act(rooted(Permutation({2, 1})), Word{1, 2}) == Word{2, 2});
}

TEST_CASE("malformed input is rejected") {
  CHECK_THROWS_AS(act(Automaton::adding_machine(2), Word{3}), DomainError);
  CHECK_THROWS_AS(compose(Automaton::identity(2), Automaton::identity(3)), DomainError);
  CHECK_THROWS_AS(Automaton(2, {State{"s", Permutation({1, 2}), {0, 1}}}, 0), DomainError);
}
