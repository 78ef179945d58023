#pragma once

// Independent oracles and instance fixtures shared by the test binaries.
// The oracles work directly on transition relations and explicit letters,
// never through the library's product-graph searches.

#include <algorithm>
#include <array>
#include <functional>
#include <random>
#include <vector>

#include "omega/buchi.hpp"
#include "omega/core.hpp"
#include "omega/pcp.hpp"
#include "omega/transducer.hpp"
#include "omega/turing.hpp"

namespace oracle {

using namespace omega;

/// Letter i of u·v^ω, computed without the LassoWord class.
inline Symbol letter(const Word& u, const Word& v, std::size_t i) {
  return i < u.size() ? u[i] : v[(i - u.size()) % v.size()];
}

inline Word expand(const Word& u, const Word& v, std::size_t n) {
  Word out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(letter(u, v, i));
  return out;
}

inline bool same_prefix(const LassoWord& a, const LassoWord& b, std::size_t n) {
  return expand(a.prefix(), a.loop(), n) == expand(b.prefix(), b.loop(), n);
}

using Mask = std::uint32_t;

/// States reachable from `from` after reading w.
inline Mask reach(const BuchiAutomaton& a, Mask from, const Word& w) {
  Mask cur = from;
  for (Symbol s : w) {
    Mask next = 0;
    for (const auto& t : a.transitions()) {
      if (t.symbol == s && ((cur >> t.source) & 1u)) next |= Mask{1} << t.target;
    }
    cur = next;
  }
  return cur;
}

/// Bit p is set iff v^ω has an accepting run from state p. Uses the block
/// relation of v: plain reachability and reachability through an accepting
/// state, closed transitively.
inline Mask good_states(const BuchiAutomaton& a, const Word& v) {
  const std::size_t n = a.num_states();
  std::vector<Mask> plain(n, 0), acc(n, 0);
  for (std::size_t p = 0; p < n; ++p) {
    // (state, seen accepting) sets along the block
    Mask cur = Mask{1} << p, cur_acc = 0;
    for (Symbol s : v) {
      Mask next = 0, next_acc = 0;
      for (const auto& t : a.transitions()) {
        if (t.symbol != s) continue;
        const Mask bit = Mask{1} << t.target;
        const bool hit = a.is_accepting(t.target);
        if ((cur >> t.source) & 1u) (hit ? next_acc : next) |= bit;
        if ((cur_acc >> t.source) & 1u) next_acc |= bit;
      }
      cur = next & ~next_acc;
      cur_acc = next_acc;
    }
    plain[p] = cur | cur_acc;
    acc[p] = cur_acc;
  }
  // closure over blocks: R+ and accepting paths
  std::vector<Mask> rplus = plain, aplus = acc;
  for (std::size_t iter = 0; iter < n + 1; ++iter) {
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = 0; q < n; ++q) {
        if ((rplus[p] >> q) & 1u) {
          rplus[p] |= rplus[q];
          aplus[p] |= aplus[q];
        }
        if ((aplus[p] >> q) & 1u) aplus[p] |= rplus[q];
      }
    }
  }
  Mask good = 0;
  for (std::size_t p = 0; p < n; ++p) {
    // p reaches (through whole blocks, possibly zero) some q with an accepting q-cycle
    Mask targets = rplus[p] | (Mask{1} << p);
    for (std::size_t q = 0; q < n; ++q) {
      if (((targets >> q) & 1u) && ((aplus[q] >> q) & 1u)) good |= Mask{1} << p;
    }
  }
  return good;
}

inline bool accepts(const BuchiAutomaton& a, const Word& u, const Word& v) {
  return (reach(a, Mask{1} << a.initial(), u) & good_states(a, v)) != 0;
}

inline bool accepts(const BuchiAutomaton& a, const LassoWord& w) { return accepts(a, w.prefix(), w.loop()); }

/// All words over {0..k-1} with length in [lo, hi].
inline std::vector<Word> all_words(std::size_t k, std::size_t lo, std::size_t hi) {
  std::vector<Word> out;
  std::vector<Word> layer{{}};
  if (lo == 0) out.push_back({});
  for (std::size_t len = 1; len <= hi; ++len) {
    std::vector<Word> next;
    for (const auto& w : layer) {
      for (Symbol s = 0; s < k; ++s) {
        Word x = w;
        x.push_back(s);
        next.push_back(std::move(x));
      }
    }
    layer = std::move(next);
    if (len >= lo) out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

/// Exhaustive lasso search with |u|, |v| <= bound.
inline bool brute_force_nonempty(const BuchiAutomaton& a, std::size_t bound) {
  const std::size_t k = a.alphabet().size();
  Mask reachable = 0, good = 0;
  for (const auto& u : all_words(k, 0, bound)) reachable |= reach(a, Mask{1} << a.initial(), u);
  for (const auto& v : all_words(k, 1, bound)) good |= good_states(a, v);
  return (reachable & good) != 0;
}

inline BuchiAutomaton random_automaton(std::mt19937& rng, const Alphabet& alphabet, std::size_t max_states,
                                       double density = 0.3, double accepting = 0.4) {
  std::uniform_int_distribution<std::size_t> count(1, max_states);
  std::bernoulli_distribution edge(density), acc(accepting);
  const std::size_t n = count(rng);
  std::vector<Transition> delta;
  std::vector<State> fin;
  for (State p = 0; p < n; ++p) {
    if (acc(rng)) fin.push_back(p);
    for (Symbol s = 0; s < alphabet.size(); ++s) {
      for (State q = 0; q < n; ++q) {
        if (edge(rng)) delta.push_back({p, s, q});
      }
    }
  }
  return BuchiAutomaton(alphabet, n, 0, std::move(delta), std::move(fin));
}

inline LassoWord random_lasso(std::mt19937& rng, std::size_t k, std::size_t max_prefix, std::size_t max_loop) {
  std::uniform_int_distribution<std::size_t> pl(0, max_prefix), ll(1, max_loop);
  std::uniform_int_distribution<Symbol> sym(0, static_cast<Symbol>(k - 1));
  Word u(pl(rng)), v(ll(rng));
  for (auto& s : u) s = sym(rng);
  for (auto& s : v) s = sym(rng);
  return LassoWord(u, v);
}

/// PCP check by explicit letters: constraint via the relation oracle and
/// concatenations compared on a long prefix.
inline bool pcp_solution(const PcpRegInstance& inst, const Word& u, const Word& v, std::size_t check_len = 200) {
  if (!accepts(inst.constraint(), u, v)) return false;
  auto spell = [&](const std::vector<Word>& words, const Word& idx) {
    Word out;
    for (Symbol i : idx) out.insert(out.end(), words[i].begin(), words[i].end());
    return out;
  };
  const Word xu = spell(inst.x_words(), u), xv = spell(inst.x_words(), v);
  const Word yu = spell(inst.y_words(), u), yv = spell(inst.y_words(), v);
  return expand(xu, xv, check_len) == expand(yu, yv, check_len);
}

}  // namespace oracle

namespace fixtures {

using namespace omega;

inline Alphabet ab() { return Alphabet({"a", "b"}); }

inline BuchiAutomaton universal2() { return universal_automaton(index_alphabet(2)); }

inline BuchiAutomaton infinitely_many_1() {
  return BuchiAutomaton(index_alphabet(2), 2, 0, {{0, 0, 1}, {0, 1, 0}, {1, 0, 1}, {1, 1, 0}}, {1}, {"last2", "last1"});
}

inline BuchiAutomaton only_1() { return BuchiAutomaton(index_alphabet(2), 1, 0, {{0, 0, 0}}, {0}, {"q"}); }

inline PcpRegInstance i1(const BuchiAutomaton& constraint) {
  return PcpRegInstance(ab(), {{0, 1}, {1}}, {{0}, {1, 1}}, constraint);
}

inline PcpRegInstance i1() { return i1(universal2()); }

/// x = (a), y = (b) under the constraint 1^ω.
inline PcpRegInstance disjoint_instance() {
  return PcpRegInstance(ab(), {{0}}, {{1}}, BuchiAutomaton(index_alphabet(1), 1, 0, {{0, 0, 0}}, {0}, {"q"}));
}

/// The four instances of the suite.
inline std::vector<PcpRegInstance> suite_instances() {
  return {i1(), i1(infinitely_many_1()), i1(only_1()), disjoint_instance()};
}

/// Automaton over {a, b} accepting words with infinitely many a.
inline BuchiAutomaton infinitely_many_a() {
  return BuchiAutomaton(ab(), 2, 0, {{0, 0, 1}, {0, 1, 0}, {1, 0, 1}, {1, 1, 0}}, {1}, {"q0", "q1"});
}

inline Alphabet tape() { return Alphabet({"_", "X"}); }

inline TuringMachine m_rec() {
  return TuringMachine({"q0", "q1"}, tape(), {}, 0, 0,
                       {{0, 0, 1, 1, Move::Stay}, {1, 1, 0, 1, Move::Stay}, {0, 1, 1, 1, Move::Stay}});
}

inline TuringMachine m_halt() { return TuringMachine({"q0"}, tape(), {}, 0, 0, {}); }

inline TuringMachine m_right() { return TuringMachine({"q0"}, tape(), {}, 0, 0, {{0, 0, 0, 1, Move::Right}}); }

/// Walks right writing X, comes back to cell 0 and restarts; tape never
/// exceeds two cells.
inline TuringMachine m_shuttle() {
  return TuringMachine({"q0", "q1", "q2"}, tape(), {}, 0, 0,
                       {{0, 0, 1, 1, Move::Right}, {0, 1, 1, 1, Move::Right}, {1, 0, 2, 0, Move::Left},
                        {2, 1, 0, 1, Move::Stay}});
}

/// a^ω mapped to b^ω or c^ω.
inline BuchiTransducer two_branch() {
  return BuchiTransducer(Alphabet({"a"}), Alphabet({"b", "c"}), 3, 0,
                         {{0, {0}, {0}, 1}, {0, {0}, {1}, 2}, {1, {0}, {0}, 1}, {2, {0}, {1}, 2}}, {1, 2});
}

/// a -> aa, b -> bb.
inline BuchiTransducer doubling() {
  return BuchiTransducer(ab(), ab(), 1, 0, {{0, {0}, {0, 0}, 0}, {0, {1}, {1, 1}, 0}}, {0});
}

}  // namespace fixtures
