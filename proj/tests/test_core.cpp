#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "omega/core.hpp"
#include "support.hpp"

using namespace omega;

namespace {

const Alphabet AB({"a", "b"});

LassoWord L(const char* text) { return parse_lasso(AB, text); }

}  // namespace

TEST_CASE("alphabet validation") {
  CHECK_THROWS_AS(Alphabet({}), InvalidArgument);
  CHECK_THROWS_AS(Alphabet({"a", "a"}), InvalidArgument);
  CHECK_THROWS_AS(Alphabet({"a("}), InvalidArgument);
  CHECK_THROWS_AS(Alphabet({"x.y"}), InvalidArgument);
  const Alphabet g({"b", "a"});
  CHECK(g.at("b") == 0);
  CHECK(g.at("a") == 1);
  CHECK_FALSE(g.find("c").has_value());
  CHECK(g.single_char());
  CHECK_FALSE(Alphabet({"d1", "a"}).single_char());
}

TEST_CASE("lasso construction rejects an empty loop") {
  CHECK_THROWS_AS(LassoWord({0}, {}), InvalidLasso);
  CHECK_THROWS_AS(lasso_normalize({0}, {}), InvalidLasso);
}

TEST_CASE("lasso_normalize examples") {
  // ab·(bb)^ω = a·b^ω
  const LassoWord n1 = lasso_normalize({0, 1}, {1, 1});
  CHECK(n1 == LassoWord({0}, {1}));
  CHECK(oracle::expand({0, 1}, {1, 1}, 64) == oracle::expand(n1.prefix(), n1.loop(), 64));
  CHECK(lasso_normalize({}, {0, 0}) == LassoWord({}, {0}));
  CHECK(lasso_normalize({}, {0, 1}) == LassoWord({}, {0, 1}));
  // a·(ba)^ω = (ab)^ω
  CHECK(lasso_normalize({0}, {1, 0}) == LassoWord({}, {0, 1}));
}

TEST_CASE("lasso_equal examples") {
  CHECK(lasso_equal(L("ab(bb)"), L("a(b)")));
  CHECK(oracle::same_prefix(L("ab(bb)"), L("a(b)"), 64));
  CHECK_FALSE(lasso_equal(L("(a)"), L("(b)")));
  CHECK(lasso_equal(L("a(ba)"), L("ab(ab)")));
  CHECK(oracle::same_prefix(L("a(ba)"), L("ab(ab)"), 64));
}

TEST_CASE("text form") {
  CHECK(format_lasso(AB, L("ab(b)")) == "ab(b)");
  CHECK(L("ε(ab)") == L("(ab)"));
  CHECK_THROWS_AS(parse_lasso(AB, "ab"), ParseError);
  CHECK_THROWS_AS(parse_lasso(AB, "a()"), ParseError);
  CHECK_THROWS_AS(parse_lasso(AB, "a(c)"), ParseError);
  CHECK_THROWS_AS(parse_lasso(AB, "(a)(b)"), ParseError);
  const Alphabet multi({"d1", "1", "a"});
  const LassoWord w = parse_lasso(multi, "d1.1(1.a)");
  CHECK(w == LassoWord({0, 1}, {1, 2}));
  CHECK(format_lasso(multi, w) == "d1.1(1.a)");
}

TEST_CASE("property: normal form denotes the same word and is canonical") {
  std::mt19937 rng(11);
  for (int i = 0; i < 2000; ++i) {
    const LassoWord w = oracle::random_lasso(rng, 2, 6, 6);
    const LassoWord n = lasso_normalize(w);
    const std::size_t len = w.prefix().size() + 4 * w.loop().size();
    REQUIRE(oracle::expand(w.prefix(), w.loop(), len) == oracle::expand(n.prefix(), n.loop(), len));
    // canonical: primitive loop, no absorbable rotation
    CHECK(primitive_root(n.loop()) == n.loop());
    if (!n.prefix().empty()) CHECK(n.prefix().back() != n.loop().back());
    CHECK(lasso_normalize(n) == n);
  }
}

TEST_CASE("property: equal words normalize identically") {
  std::mt19937 rng(12);
  for (int i = 0; i < 2000; ++i) {
    const LassoWord w = oracle::random_lasso(rng, 2, 5, 4);
    // same word, different representation: unroll the loop and repeat it
    Word u = concat(w.prefix(), w.loop());
    Word v = concat(w.loop(), w.loop());
    std::rotate(v.begin(), v.begin() + 1, v.end());
    u.push_back(w.loop()[0]);
    CHECK(lasso_normalize(u, v) == lasso_normalize(w));
  }
}

TEST_CASE("property: equality bound agrees with long comparison") {
  std::mt19937 rng(13);
  for (int i = 0; i < 5000; ++i) {
    const LassoWord a = oracle::random_lasso(rng, 2, 4, 4);
    const LassoWord b = oracle::random_lasso(rng, 2, 4, 4);
    CHECK(lasso_equal(a, b) == oracle::same_prefix(a, b, 200));
  }
}

TEST_CASE("take and at") {
  const LassoWord w = L("ab(ba)");
  CHECK(w.take(5) == Word{0, 1, 1, 0, 1});
  CHECK(w.at(6) == 1);
}
