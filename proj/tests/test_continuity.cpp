#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "omega/continuity.hpp"
#include "omega/reductions.hpp"
#include "support.hpp"

using namespace omega;

namespace {

const Alphabet AB({"a", "b"});

LassoWord L(const char* text) { return parse_lasso(AB, text); }

/// Random input of the F construction over {1..n, a, b}: a random index
/// lasso interleaved with a/b marks, on the X branch (an a in the loop) or
/// the Y branch (only b in the loop).
LassoWord random_f_point(std::mt19937& rng, std::size_t n, bool x_branch, std::size_t max_prefix = 2,
                         std::size_t max_loop = 2) {
  const auto a = static_cast<Symbol>(n), b = static_cast<Symbol>(n + 1);
  const LassoWord sigma = oracle::random_lasso(rng, n, max_prefix, max_loop);
  std::bernoulli_distribution coin(0.5);
  Word u, v;
  for (Symbol i : sigma.prefix()) {
    if (coin(rng)) u.push_back(coin(rng) ? a : b);
    u.push_back(i);
  }
  for (Symbol i : sigma.loop()) {
    v.push_back(i);
    if (coin(rng)) v.push_back(x_branch ? a : b);
  }
  v.push_back(x_branch ? a : b);
  return LassoWord(u, v);
}

/// Points of the ball around x drawn at random: the first k+1 letters of x
/// followed by a random lasso tail.
std::vector<LassoWord> ball_samples(std::mt19937& rng, const BuchiTransducer& t, const LassoWord& x, std::size_t k,
                                    std::size_t count) {
  std::vector<LassoWord> out;
  const Word head = x.take(k + 1);
  for (std::size_t i = 0; i < count * 4 && out.size() < count; ++i) {
    const LassoWord tail = oracle::random_lasso(rng, t.input_alphabet().size(), 3, 4);
    const LassoWord y(concat(head, tail.prefix()), tail.loop());
    if (in_domain(t, y)) out.push_back(y);
  }
  return out;
}

}  // namespace

TEST_CASE("prefix_distance_exponent examples") {
  CHECK(prefix_distance_exponent(L("(ab)"), L("(a)")) == 1);
  CHECK_FALSE(prefix_distance_exponent(L("(b)"), L("(b)")).has_value());
  CHECK_FALSE(prefix_distance_exponent(L("ab(b)"), L("a(b)")).has_value());
  CHECK(prefix_distance_exponent(L("(a)"), L("(b)")) == 0);
  CHECK(prefix_distance_exponent(L("aaab(a)"), L("(a)")) == 3);
}

TEST_CASE("ball prefix") {
  const BallPrefix ball{L("a(b)"), 3};
  CHECK(ball.prefix() == Word{0, 1, 1, 1});
}

TEST_CASE("xkn_test examples") {
  const BuchiTransducer id = identity_transducer(AB);
  for (std::size_t k = 1; k <= 6; ++k) CHECK(xkn_test(id, L("a(ab)"), k, k));
  CHECK_FALSE(xkn_test(id, L("a(ab)"), 1, 2));

  const BuchiTransducer f = pcp_to_function_F(fixtures::i1());
  const Alphabet& in = f.input_alphabet();
  bool found = false;
  for (std::size_t k = 1; k <= 12 && !found; ++k) found = xkn_test(f, parse_lasso(in, "1(2a)"), k, 3);
  CHECK(found);
  for (std::size_t k = 1; k <= 12; ++k) CHECK_FALSE(xkn_test(f, parse_lasso(in, "1(1a)"), k, 1));
  // outside the domain
  CHECK_FALSE(xkn_test(f, parse_lasso(in, "(1)"), 1, 1));
}

TEST_CASE("continuity_probe examples") {
  const ContinuityVerdict id = continuity_probe(identity_transducer(AB), L("(ab)"), 5, 10);
  CHECK(id.kind == VerdictKind::ContinuousUpTo);
  CHECK(id.depth_n == 5);

  const BuchiTransducer f = pcp_to_function_F(fixtures::i1());
  const Alphabet& in = f.input_alphabet();
  const ContinuityVerdict good = continuity_probe(f, parse_lasso(in, "1(2a)"), 4, 16);
  CHECK(good.kind == VerdictKind::ContinuousUpTo);
  CHECK(good.depth_n == 4);
  CHECK(good.k_max == 16);
  for (std::size_t n = 1; n <= 4; ++n) {
    REQUIRE(good.evidence.count(n) == 1);
    CHECK(xkn_test(f, parse_lasso(in, "1(2a)"), good.evidence.at(n), n));
  }

  const ContinuityVerdict bad = continuity_probe(f, parse_lasso(in, "1(1a)"), 1, 12);
  CHECK(bad.kind == VerdictKind::Unknown);
  CHECK(bad.depth_n == 1);

  const ContinuityVerdict flipped = continuity_probe(f, parse_lasso(in, "1(1a)"), 1, 12, branch_flip_generator(f));
  CHECK(flipped.kind == VerdictKind::DiscontinuityEvidence);
  CHECK(flipped.depth_n == 1);
  CHECK(flipped.witnesses.size() == 12);

  CHECK_THROWS_AS(continuity_probe(f, parse_lasso(in, "(1)"), 4, 16), NotInDomain);
  CHECK(std::string(verdict_name(VerdictKind::ContinuousUpTo)) == "ContinuousUpTo");
}

TEST_CASE("f_discontinuity_witness examples") {
  const PcpRegInstance inst = fixtures::i1();
  const BuchiTransducer f = pcp_to_function_F(inst);
  const Alphabet& in = f.input_alphabet();
  const Alphabet& out = f.output_alphabet();

  const LassoWord x = parse_lasso(in, "1(1a)");
  CHECK(apply_lasso(f, x) == parse_lasso(out, "(ab)"));
  const DiscontinuityWitness w3 = f_discontinuity_witness(inst, f, x, 3);
  CHECK(w3.k == 3);
  CHECK(w3.point.take(4) == x.take(4));
  CHECK(lasso_equal(index_projection(f, w3.point), parse_lasso(index_alphabet(2), "(1)")));
  CHECK(lasso_equal(apply_lasso(f, w3.point), parse_lasso(out, "(a)")));
  CHECK(w3.l_pref == 1);

  const LassoWord y = parse_lasso(in, "1(1b)");
  const DiscontinuityWitness w2 = f_discontinuity_witness(inst, f, y, 2);
  CHECK(w2.point.take(3) == y.take(3));
  CHECK(w2.l_pref == 1);
  // the flipped point has infinitely many a
  CHECK(lasso_equal(apply_lasso(f, w2.point), parse_lasso(out, "(ab)")));

  CHECK_THROWS_AS(f_discontinuity_witness(inst, f, parse_lasso(in, "1(2a)"), 3), NoWitness);
  CHECK_THROWS_AS(index_projection(f, parse_lasso(in, "1(a)")), NotInDomain);
}

TEST_CASE("property: witness validity for k = 1..10") {
  std::mt19937 rng(61);
  int checked = 0;
  for (const auto& inst : fixtures::suite_instances()) {
    const BuchiTransducer f = pcp_to_function_F(inst);
    for (int i = 0; i < 40; ++i) {
      const LassoWord x = random_f_point(rng, inst.size(), i % 2 == 0);
      if (!in_domain(f, x)) continue;
      const LassoWord sigma = index_projection(f, x);
      if (verify_solution(inst, sigma)) {
        CHECK_THROWS_AS(f_discontinuity_witness(inst, f, x, 1), NoWitness);
        continue;
      }
      ++checked;
      const LassoWord fx = apply_lasso(f, x);
      std::optional<std::size_t> depth;
      for (std::size_t k = 1; k <= 10; ++k) {
        const DiscontinuityWitness w = f_discontinuity_witness(inst, f, x, k);
        REQUIRE(in_domain(f, w.point));
        const auto close = prefix_distance_exponent(x, w.point);
        CHECK((!close || *close >= k + 1));
        CHECK(lasso_equal(index_projection(f, w.point), sigma));
        const auto far = prefix_distance_exponent(fx, apply_lasso(f, w.point));
        REQUIRE(far.has_value());
        CHECK(*far == w.l_pref);
        if (depth) CHECK(*depth == w.l_pref);
        depth = w.l_pref;
        // the witness refutes the neighbourhood test at its depth
        CHECK_FALSE(xkn_test(f, x, k, std::max<std::size_t>(1, w.l_pref)));
      }
    }
  }
  CHECK(checked > 20);
}

TEST_CASE("property: monotonicity in k and singleton refinement") {
  std::mt19937 rng(62);
  std::vector<std::pair<BuchiTransducer, std::vector<LassoWord>>> cases;
  {
    std::vector<LassoWord> pts;
    for (int i = 0; i < 4; ++i) pts.push_back(oracle::random_lasso(rng, 2, 2, 3));
    cases.emplace_back(fixtures::doubling(), pts);
  }
  {
    const BuchiTransducer f = pcp_to_function_F(fixtures::i1());
    std::vector<LassoWord> pts{parse_lasso(f.input_alphabet(), "1(2a)"), parse_lasso(f.input_alphabet(), "1(1a)")};
    for (int i = 0; i < 2; ++i) pts.push_back(random_f_point(rng, 2, i == 0));
    cases.emplace_back(f, pts);
  }
  {
    const BuchiTransducer fp = pcp_to_function_Fprime(fixtures::i1());
    std::vector<LassoWord> pts{parse_lasso(fp.input_alphabet(), "d1.d2.d3.1(2.a)"),
                               parse_lasso(fp.input_alphabet(), "d1.1(2.a)")};
    cases.emplace_back(fp, pts);
  }
  for (const auto& [t, points] : cases) {
    for (const auto& x : points) {
      if (!in_domain(t, x)) continue;
      const LassoWord fx = apply_lasso(t, x);
      for (std::size_t n = 1; n <= 8; ++n) {
        bool seen = false;
        for (std::size_t k = 1; k <= 8; ++k) {
          const bool ok = xkn_test(t, x, k, n);
          if (seen) CHECK(ok);
          seen = seen || ok;
          const std::set<Word> p = ball_image_prefixes(t, x, k, n + 1);
          CHECK(ok == (p == std::set<Word>{fx.take(n + 1)}));
          if (p.size() == 1) {
            for (std::size_t m = 1; m <= n + 1; ++m) CHECK(ball_image_prefixes(t, x, k, m).size() == 1);
          }
          // sampled ball points agree whenever the test succeeds
          if (ok) {
            for (const auto& y : ball_samples(rng, t, x, k, 3)) CHECK(apply_lasso(t, y).take(n + 1) == fx.take(n + 1));
          }
        }
      }
    }
  }
}

TEST_CASE("property: verdict records evidence for every certified depth") {
  std::mt19937 rng(63);
  const BuchiTransducer f = pcp_to_function_F(fixtures::i1());
  for (int i = 0; i < 30; ++i) {
    const LassoWord x = random_f_point(rng, 2, i % 2 == 0);
    if (!in_domain(f, x)) continue;
    const ContinuityVerdict v = continuity_probe(f, x, 4, 16);
    if (v.kind == VerdictKind::ContinuousUpTo) {
      for (std::size_t n = 1; n <= v.depth_n; ++n) REQUIRE(v.evidence.count(n) == 1);
    }
    std::size_t last = 0;
    for (const auto& [n, k] : v.evidence) {
      CHECK(k >= last);
      CHECK(xkn_test(f, x, k, n));
      if (k > 1) CHECK_FALSE(xkn_test(f, x, k - 1, n));
      last = k;
    }
  }
}

TEST_CASE("property: continuity points of F are the solution points") {
  std::mt19937 rng(64);
  for (const auto& inst : {fixtures::i1(), fixtures::i1(fixtures::infinitely_many_1())}) {
    const BuchiTransducer f = pcp_to_function_F(inst);
    const WitnessGenerator gen = branch_flip_generator(f);
    int solutions = 0, others = 0;
    std::vector<LassoWord> points;
    for (const char* p : {"1(2a)", "1a2(2b)", "(12a)", "(1a2b)", "1(a2)", "b1(2b)", "(2a)"}) {
      points.push_back(parse_lasso(f.input_alphabet(), p));
    }
    for (int i = 0; i < 60; ++i) points.push_back(random_f_point(rng, 2, i % 2 == 0));
    for (const auto& x : points) {
      if (!in_domain(f, x)) continue;
      const LassoWord sigma = index_projection(f, x);
      const bool solution = verify_solution(inst, sigma);
      CHECK(solution == oracle::pcp_solution(inst, sigma.prefix(), sigma.loop()));
      const ContinuityVerdict v = continuity_probe(f, x, 4, 16, gen);
      if (solution) {
        ++solutions;
        CHECK(v.kind == VerdictKind::ContinuousUpTo);
        CHECK(continuity_probe(f, x, 4, 16).kind == VerdictKind::ContinuousUpTo);
        CHECK_THROWS_AS(f_discontinuity_witness(inst, f, x, 1), NoWitness);
      } else {
        ++others;
        CHECK(v.kind == VerdictKind::DiscontinuityEvidence);
        CHECK_NOTHROW(f_discontinuity_witness(inst, f, x, 1));
      }
    }
    CHECK(solutions > 3);
    CHECK(others > 3);
  }
}

TEST_CASE("F' certifies only equalizing D-blocks") {
  const BuchiTransducer fp = pcp_to_function_Fprime(fixtures::i1());
  const Alphabet& in = fp.input_alphabet();
  const WitnessGenerator gen = branch_flip_generator(fp);
  const LassoWord x = parse_lasso(in, "1(2.a)");
  for (const auto& block : oracle::all_words(3, 1, 4)) {
    Word u(block.begin(), block.end());
    u.insert(u.end(), x.prefix().begin(), x.prefix().end());
    const LassoWord point(u, x.loop());
    const ContinuityVerdict v = continuity_probe(fp, point, 3, 16, gen);
    const std::vector<int> b(block.begin(), block.end());
    const bool equal = pcp1_spell(b, true) == pcp1_spell(b, false);
    CHECK((v.kind == VerdictKind::ContinuousUpTo) == equal);
    if (!equal) CHECK(v.kind == VerdictKind::DiscontinuityEvidence);
  }
  // d1 alone: t = cc against w = c
  const ContinuityVerdict d1 = continuity_probe(fp, parse_lasso(in, "d1.1(2.a)"), 3, 16, gen);
  CHECK(d1.kind == VerdictKind::DiscontinuityEvidence);
  CHECK(d1.depth_n == 1);
}
