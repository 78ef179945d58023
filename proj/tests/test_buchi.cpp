#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "omega/buchi.hpp"
#include "support.hpp"

using namespace omega;

namespace {

const Alphabet AB({"a", "b"});

LassoWord L(const char* text) { return parse_lasso(AB, text); }

BuchiAutomaton infinitely_many_b() {
  return BuchiAutomaton(AB, 2, 0, {{0, 0, 0}, {0, 1, 1}, {1, 0, 0}, {1, 1, 1}}, {1});
}

BuchiAutomaton only(Symbol s) { return BuchiAutomaton(AB, 1, 0, {{0, s, 0}}, {0}); }

std::vector<LassoWord> sample_lassos(std::mt19937& rng, std::size_t count) {
  std::vector<LassoWord> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(oracle::random_lasso(rng, 2, 4, 4));
  return out;
}

}  // namespace

TEST_CASE("construction checks") {
  CHECK_THROWS_AS(BuchiAutomaton(AB, 1, 1, {}, {}), InvalidArgument);
  CHECK_THROWS_AS(BuchiAutomaton(AB, 1, 0, {{0, 2, 0}}, {}), AlphabetMismatch);
  CHECK_THROWS_AS(BuchiAutomaton(AB, 1, 0, {{0, 0, 1}}, {}), InvalidArgument);
  CHECK_THROWS_AS(BuchiAutomaton(AB, 1, 0, {}, {3}), InvalidArgument);
  const BuchiAutomaton dup(AB, 1, 0, {{0, 0, 0}, {0, 0, 0}}, {0});
  CHECK(dup.transitions().size() == 1);
}

TEST_CASE("nba_accepts_lasso examples") {
  CHECK(nba_accepts_lasso(universal_automaton(AB), L("(ab)")));
  const BuchiAutomaton inf_a = fixtures::infinitely_many_a();
  CHECK_FALSE(nba_accepts_lasso(inf_a, L("ab(b)")));
  CHECK(nba_accepts_lasso(inf_a, L("b(ba)")));
  CHECK_FALSE(oracle::accepts(inf_a, L("ab(b)")));
  CHECK(oracle::accepts(inf_a, L("b(ba)")));
  CHECK_THROWS_AS(nba_accepts_lasso(inf_a, LassoWord({}, {5})), AlphabetMismatch);
}

TEST_CASE("nba_is_empty examples") {
  const auto w = nba_is_empty(universal_automaton(AB));
  REQUIRE(w);
  CHECK(*w == L("(a)"));
  CHECK_FALSE(nba_is_empty(BuchiAutomaton(AB, 1, 0, {{0, 0, 0}, {0, 1, 0}}, {})));
  // accepting state 2 reachable but on no cycle
  const BuchiAutomaton open(AB, 3, 0, {{0, 0, 1}, {1, 1, 2}, {1, 0, 1}, {0, 1, 0}}, {2});
  CHECK_FALSE(nba_is_empty(open));
  CHECK_FALSE(oracle::brute_force_nonempty(open, 6));
}

TEST_CASE("property: emptiness agrees with brute-force enumeration") {
  std::mt19937 rng(21);
  std::size_t nonempty = 0;
  for (int i = 0; i < 600; ++i) {
    const BuchiAutomaton a = oracle::random_automaton(rng, AB, 4);
    const auto w = nba_is_empty(a);
    REQUIRE(w.has_value() == oracle::brute_force_nonempty(a, a.num_states() * 2));
    if (w) {
      ++nonempty;
      CHECK(nba_accepts_lasso(a, *w));
      CHECK(oracle::accepts(a, *w));
      CHECK(lasso_normalize(*w) == *w);
    }
  }
  // both verdicts exercised
  CHECK(nonempty > 50);
  CHECK(nonempty < 550);
}

TEST_CASE("property: membership agrees with the block-relation oracle") {
  std::mt19937 rng(22);
  for (int i = 0; i < 300; ++i) {
    const BuchiAutomaton a = oracle::random_automaton(rng, AB, 4);
    for (const auto& w : sample_lassos(rng, 10)) REQUIRE(nba_accepts_lasso(a, w) == oracle::accepts(a, w));
  }
}

TEST_CASE("product examples") {
  const BuchiAutomaton p = nba_product_intersection(fixtures::infinitely_many_a(), infinitely_many_b());
  CHECK(nba_accepts_lasso(p, L("(ab)")));
  CHECK_FALSE(nba_accepts_lasso(p, L("(a)")));
  CHECK(p.num_states() <= 2 * 2 * 2);
  CHECK_FALSE(nba_is_empty(nba_product_intersection(only(0), only(1))));

  std::mt19937 rng(23);
  const BuchiAutomaton a2 = oracle::random_automaton(rng, AB, 4);
  const BuchiAutomaton u = nba_product_intersection(universal_automaton(AB), a2);
  for (const auto& w : sample_lassos(rng, 20)) CHECK(nba_accepts_lasso(u, w) == nba_accepts_lasso(a2, w));

  CHECK_THROWS_AS(nba_product_intersection(universal_automaton(AB), universal_automaton(Alphabet({"a"}))),
                  AlphabetMismatch);
}

TEST_CASE("property: product is intersection") {
  std::mt19937 rng(24);
  for (int i = 0; i < 200; ++i) {
    const BuchiAutomaton a1 = oracle::random_automaton(rng, AB, 4);
    const BuchiAutomaton a2 = oracle::random_automaton(rng, AB, 4);
    const BuchiAutomaton p = nba_product_intersection(a1, a2);
    CHECK(p.num_states() <= a1.num_states() * a2.num_states() * 2);
    for (const auto& w : sample_lassos(rng, 10)) {
      REQUIRE(nba_accepts_lasso(p, w) == (oracle::accepts(a1, w) && oracle::accepts(a2, w)));
    }
  }
}

TEST_CASE("trim examples") {
  // state 2 is a dead branch, state 3 unreachable
  const BuchiAutomaton dead(AB, 4, 0, {{0, 0, 0}, {0, 1, 2}, {2, 0, 2}, {3, 0, 0}}, {0});
  const BuchiAutomaton t = nba_trim(dead);
  CHECK(t.num_states() == 1);
  std::mt19937 rng(25);
  for (const auto& w : sample_lassos(rng, 20)) CHECK(nba_accepts_lasso(t, w) == nba_accepts_lasso(dead, w));

  const BuchiAutomaton inf_a = fixtures::infinitely_many_a();
  const BuchiAutomaton same = nba_trim(inf_a);
  CHECK(same.num_states() == inf_a.num_states());
  CHECK(same.transitions().size() == inf_a.transitions().size());
  CHECK(same.accepting() == inf_a.accepting());

  const BuchiAutomaton empty = nba_trim(BuchiAutomaton(AB, 2, 0, {{0, 0, 1}, {1, 1, 1}}, {}));
  CHECK(empty.transitions().empty());
  CHECK(empty.accepting().empty());
}

TEST_CASE("property: trim preserves language and leaves only live states") {
  std::mt19937 rng(26);
  for (int i = 0; i < 300; ++i) {
    const BuchiAutomaton a = oracle::random_automaton(rng, AB, 4);
    const BuchiAutomaton t = nba_trim(a);
    CHECK(t.num_states() <= a.num_states());
    for (const auto& w : sample_lassos(rng, 10)) REQUIRE(nba_accepts_lasso(t, w) == oracle::accepts(a, w));
    if (!t.transitions().empty()) {
      // every state has a nonempty residual language
      for (State q = 0; q < t.num_states(); ++q) {
        const BuchiAutomaton from_q(t.alphabet(), t.num_states(), q,
                                    std::vector<Transition>(t.transitions().begin(), t.transitions().end()),
                                    t.accepting());
        CHECK(oracle::brute_force_nonempty(from_q, 8));
      }
    }
  }
}

TEST_CASE("prefix_set examples") {
  const BuchiAutomaton ab_only(AB, 2, 0, {{0, 0, 1}, {1, 1, 1}}, {1});
  CHECK(prefix_set(ab_only, 2) == std::set<Word>{{0, 1}});
  const BuchiAutomaton a_any(AB, 2, 0, {{0, 0, 1}, {1, 0, 1}, {1, 1, 1}}, {1});
  CHECK(prefix_set(nba_trim(a_any), 2) == std::set<Word>{{0, 0}, {0, 1}});
  CHECK(prefix_set(fixtures::infinitely_many_a(), 1) == std::set<Word>{{0}, {1}});
  CHECK_THROWS_AS(prefix_set(ab_only, 0), InvalidArgument);
}

TEST_CASE("property: prefix_set matches lasso enumeration and refines") {
  std::mt19937 rng(27);
  for (int i = 0; i < 150; ++i) {
    const BuchiAutomaton a = oracle::random_automaton(rng, AB, 3);
    for (std::size_t m = 1; m <= 4; ++m) {
      // every accepted lasso with |u|,|v| <= 3 contributes its prefix
      std::set<Word> expected;
      for (const auto& u : oracle::all_words(2, 0, 3)) {
        for (const auto& v : oracle::all_words(2, 1, 3)) {
          if (oracle::accepts(a, u, v)) expected.insert(oracle::expand(u, v, m));
        }
      }
      const std::set<Word> got = prefix_set(a, m);
      for (const auto& w : expected) CHECK(got.count(w) == 1);
      const std::set<Word> longer = prefix_set(a, m + 1);
      for (const auto& w : longer) {
        REQUIRE(w.size() == m + 1);
        CHECK(got.count(Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(m))) == 1);
      }
      // nothing outside the language: with 3 states a live state reaches an
      // accepting cycle within |u| <= 2, |v| <= 3
      for (const auto& w : got) {
        bool live = false;
        for (const auto& u : oracle::all_words(2, 0, 3)) {
          for (const auto& v : oracle::all_words(2, 1, 3)) {
            live = live || oracle::accepts(a, concat(w, u), v);
            if (live) break;
          }
          if (live) break;
        }
        CHECK(live);
      }
    }
  }
}
