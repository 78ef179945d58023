#include "omega/transducer.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "omega/graph_search.hpp"

namespace omega {

BuchiTransducer::BuchiTransducer(Alphabet input_alphabet, Alphabet output_alphabet, std::size_t num_states,
                                 State initial, std::vector<TransducerTransition> transitions,
                                 std::vector<State> accepting, std::vector<std::string> state_names)
    : input_(std::move(input_alphabet)),
      output_(std::move(output_alphabet)),
      num_states_(num_states),
      initial_(initial),
      names_(std::move(state_names)) {
  if (num_states_ == 0) throw InvalidArgument("transducer needs at least one state");
  if (initial_ >= num_states_) throw InvalidArgument("initial state out of range");
  if (!names_.empty() && names_.size() != num_states_) throw InvalidArgument("state name count mismatch");
  std::set<TransducerTransition> seen;
  for (auto& t : transitions) {
    if (t.source >= num_states_ || t.target >= num_states_) throw InvalidArgument("transition references unknown state");
    check_word(input_, t.input);
    check_word(output_, t.output);
    if (seen.insert(t).second) transitions_.push_back(std::move(t));
  }
  is_accepting_.assign(num_states_, false);
  for (State q : accepting) {
    if (q >= num_states_) throw InvalidArgument("accepting state out of range");
    is_accepting_[q] = true;
  }
  for (State q = 0; q < num_states_; ++q) {
    if (is_accepting_[q]) accepting_.push_back(q);
  }
  outgoing_.resize(num_states_);
  for (std::size_t i = 0; i < transitions_.size(); ++i) outgoing_[transitions_[i].source].push_back(i);
}

std::string BuchiTransducer::state_name(State q) const {
  if (!names_.empty()) return names_[q];
  return std::to_string(q);
}

BuchiTransducer identity_transducer(const Alphabet& alphabet) {
  std::vector<TransducerTransition> ts;
  for (Symbol s = 0; s < alphabet.size(); ++s) ts.push_back({0, {s}, {s}, 0});
  return BuchiTransducer(alphabet, alphabet, 1, 0, std::move(ts), {0});
}

bool check_witness(const BuchiTransducer& t, const RationalRelationWitness& w) {
  State cur = t.initial();
  Word in_stem, out_stem, in_cycle, out_cycle;
  for (std::size_t id : w.stem) {
    if (id >= t.transitions().size()) return false;
    const auto& tr = t.transitions()[id];
    if (tr.source != cur) return false;
    in_stem = concat(in_stem, tr.input);
    out_stem = concat(out_stem, tr.output);
    cur = tr.target;
  }
  const State root = cur;
  bool accepting = false;
  for (std::size_t id : w.cycle) {
    if (id >= t.transitions().size()) return false;
    const auto& tr = t.transitions()[id];
    if (tr.source != cur) return false;
    in_cycle = concat(in_cycle, tr.input);
    out_cycle = concat(out_cycle, tr.output);
    cur = tr.target;
    accepting = accepting || t.is_accepting(cur);
  }
  if (cur != root || !accepting || in_cycle.empty() || out_cycle.empty()) return false;
  return lasso_equal(LassoWord(in_stem, in_cycle), w.input) && lasso_equal(LassoWord(out_stem, out_cycle), w.output);
}

namespace {

// Generalized acceptance of a transducer run (accepting state, input
// progress, output progress) compiled into a counter 0..3; 3 marks a
// completed round.
int advance_counter(int c, const BuchiTransducer& t, const TransducerTransition& tr) {
  const int eff = c == 3 ? 0 : c;
  bool hit = false;
  switch (eff) {
    case 0: hit = t.is_accepting(tr.target); break;
    case 1: hit = !tr.input.empty(); break;
    default: hit = !tr.output.empty(); break;
  }
  return hit ? eff + 1 : eff;
}

enum class Track { Input, Output };

// Node of the ε-automaton: a main node (state, counter) when `chain` < 0,
// otherwise position `offset` inside the letter chain of transition `chain`
// entered with counter `counter`.
struct ENode {
  std::int64_t chain;
  State state;
  int counter;
  std::size_t offset;

  auto operator<=>(const ENode&) const = default;
};

BuchiAutomaton project(const BuchiTransducer& t, Track track) {
  const Alphabet& alphabet = track == Track::Input ? t.input_alphabet() : t.output_alphabet();
  auto label = [&](const TransducerTransition& tr) -> const Word& {
    return track == Track::Input ? tr.input : tr.output;
  };
  auto accepting = [](const ENode& e) { return e.chain < 0 && e.counter == 3; };

  // Letter edges and ε-edges of an ε-automaton node.
  auto letter_edges = [&](const ENode& e, auto&& emit) {
    if (e.chain >= 0) {
      const auto& tr = t.transitions()[static_cast<std::size_t>(e.chain)];
      const Word& w = label(tr);
      if (e.offset + 1 < w.size()) {
        emit(w[e.offset], ENode{e.chain, 0, e.counter, e.offset + 1});
      } else {
        emit(w[e.offset], ENode{-1, tr.target, advance_counter(e.counter, t, tr), 0});
      }
      return;
    }
    for (std::size_t ti : t.outgoing(e.state)) {
      const auto& tr = t.transitions()[ti];
      const Word& w = label(tr);
      if (w.empty()) continue;
      if (w.size() == 1) {
        emit(w[0], ENode{-1, tr.target, advance_counter(e.counter, t, tr), 0});
      } else {
        emit(w[0], ENode{static_cast<std::int64_t>(ti), 0, e.counter, 1});
      }
    }
  };
  auto epsilon_closure = [&](const ENode& e) {
    std::vector<std::pair<ENode, bool>> out{{e, false}};
    std::set<std::pair<ENode, bool>> seen{{e, false}};
    for (std::size_t i = 0; i < out.size(); ++i) {
      const auto [node, flag] = out[i];
      if (node.chain >= 0) continue;
      for (std::size_t ti : t.outgoing(node.state)) {
        const auto& tr = t.transitions()[ti];
        if (!label(tr).empty()) continue;
        ENode next{-1, tr.target, advance_counter(node.counter, t, tr), 0};
        std::pair<ENode, bool> item{next, flag || accepting(next)};
        if (seen.insert(item).second) out.push_back(item);
      }
    }
    return out;
  };

  using Key = std::pair<ENode, bool>;
  const ENode start{-1, t.initial(), 0, 0};
  auto ex = search::explore<Key, Symbol>(Key{start, false}, [&](const Key& k, auto&& emit) {
    for (const auto& [mid, flag] : epsilon_closure(k.first)) {
      letter_edges(mid, [&](Symbol a, const ENode& target) {
        const bool b = flag || accepting(target);
        emit(Key{target, b}, 0, a);
      });
    }
  });

  std::vector<Transition> ts;
  std::vector<State> acc;
  for (std::size_t v = 0; v < ex.keys.size(); ++v) {
    if (ex.keys[v].second) acc.push_back(static_cast<State>(v));
    for (const auto& e : ex.graph.adjacency[v]) ts.push_back({static_cast<State>(v), e.label, static_cast<State>(e.target)});
  }
  return BuchiAutomaton(alphabet, ex.keys.size(), 0, std::move(ts), std::move(acc));
}

// Lasso shape positions: 0..|prefix|+|loop|-1, wrapping back to |prefix|.
struct LassoShape {
  const LassoWord& w;
  std::size_t length() const { return w.prefix().size() + w.loop().size(); }
  std::size_t next(std::size_t p) const { return p + 1 < length() ? p + 1 : w.prefix().size(); }
  Symbol letter(std::size_t p) const {
    return p < w.prefix().size() ? w.prefix()[p] : w.loop()[p - w.prefix().size()];
  }
  // Position after reading `u` from p, or nullopt on mismatch.
  std::optional<std::size_t> read(std::size_t p, const Word& u) const {
    for (Symbol s : u) {
      if (letter(p) != s) return std::nullopt;
      p = next(p);
    }
    return p;
  }
};

search::Graph<std::size_t> evaluation_graph(const BuchiTransducer& t, const LassoWord& x) {
  check_lasso(t.input_alphabet(), x);
  const LassoShape shape{x};
  using Key = std::pair<State, std::size_t>;
  auto ex = search::explore<Key, std::size_t>(Key{t.initial(), 0}, [&](const Key& k, auto&& emit) {
    for (std::size_t ti : t.outgoing(k.first)) {
      const auto& tr = t.transitions()[ti];
      auto pos = shape.read(k.second, tr.input);
      if (!pos) continue;
      search::Marks m = 0;
      if (t.is_accepting(tr.target)) m |= 1;
      if (!tr.input.empty()) m |= 2;
      if (!tr.output.empty()) m |= 4;
      emit(Key{tr.target, *pos}, m, ti);
    }
  });
  return std::move(ex.graph);
}

RationalRelationWitness witness_from_run(const BuchiTransducer& t, const search::LassoRun<std::size_t>& run) {
  Word in_stem, out_stem, in_cycle, out_cycle;
  for (std::size_t id : run.stem) {
    in_stem = concat(in_stem, t.transitions()[id].input);
    out_stem = concat(out_stem, t.transitions()[id].output);
  }
  for (std::size_t id : run.cycle) {
    in_cycle = concat(in_cycle, t.transitions()[id].input);
    out_cycle = concat(out_cycle, t.transitions()[id].output);
  }
  return {lasso_normalize(in_stem, in_cycle), lasso_normalize(out_stem, out_cycle), run.stem, run.cycle};
}

}  // namespace

BuchiAutomaton domain_automaton(const BuchiTransducer& t) { return project(t, Track::Input); }

BuchiAutomaton image_automaton(const BuchiTransducer& t) { return project(t, Track::Output); }

BuchiTransducer restrict_input_prefix(const BuchiTransducer& t, const Word& w) {
  check_word(t.input_alphabet(), w);
  const std::size_t len = w.size();
  using Key = std::pair<State, std::size_t>;
  auto ex = search::explore<Key, std::size_t>(Key{t.initial(), 0}, [&](const Key& k, auto&& emit) {
    const auto [q, i] = k;
    for (std::size_t ti : t.outgoing(q)) {
      const auto& tr = t.transitions()[ti];
      if (i == len) {
        emit(Key{tr.target, len}, 0, ti);
        continue;
      }
      const std::size_t overlap = std::min(tr.input.size(), len - i);
      if (!std::equal(tr.input.begin(), tr.input.begin() + static_cast<std::ptrdiff_t>(overlap),
                      w.begin() + static_cast<std::ptrdiff_t>(i))) {
        continue;
      }
      emit(Key{tr.target, i + overlap}, 0, ti);
    }
  });
  std::vector<TransducerTransition> ts;
  std::vector<State> acc;
  std::vector<std::string> names;
  for (std::size_t v = 0; v < ex.keys.size(); ++v) {
    const auto [q, i] = ex.keys[v];
    if (t.is_accepting(q)) acc.push_back(static_cast<State>(v));
    names.push_back("(" + t.state_name(q) + "," + std::to_string(i) + ")");
    for (const auto& e : ex.graph.adjacency[v]) {
      const auto& tr = t.transitions()[e.label];
      ts.push_back({static_cast<State>(v), tr.input, tr.output, static_cast<State>(e.target)});
    }
  }
  return BuchiTransducer(t.input_alphabet(), t.output_alphabet(), ex.keys.size(), 0, std::move(ts), std::move(acc),
                         std::move(names));
}

BuchiTransducer split_input_letters(const BuchiTransducer& t) {
  std::vector<TransducerTransition> ts;
  std::size_t states = t.num_states();
  for (const auto& tr : t.transitions()) {
    if (tr.input.size() <= 1) {
      ts.push_back(tr);
      continue;
    }
    State cur = tr.source;
    for (std::size_t j = 0; j < tr.input.size(); ++j) {
      const bool last = j + 1 == tr.input.size();
      const State next = last ? tr.target : static_cast<State>(states++);
      ts.push_back({cur, {tr.input[j]}, j == 0 ? tr.output : Word{}, next});
      cur = next;
    }
  }
  std::vector<std::string> names;
  if (!t.state_names().empty()) {
    names = t.state_names();
    for (std::size_t s = t.num_states(); s < states; ++s) names.push_back("split" + std::to_string(s));
  }
  return BuchiTransducer(t.input_alphabet(), t.output_alphabet(), states, t.initial(), std::move(ts), t.accepting(),
                         std::move(names));
}

RationalRelationWitness evaluate_lasso(const BuchiTransducer& t, const LassoWord& x) {
  auto run = search::find_accepting_lasso(evaluation_graph(t, x), 0, 7);
  if (!run) throw NotInDomain("input " + format_lasso(t.input_alphabet(), x) + " is not in the domain");
  auto w = witness_from_run(t, *run);
  if (!lasso_equal(w.input, x)) throw Error("internal: evaluation run does not read the requested input");
  return w;
}

bool in_domain(const BuchiTransducer& t, const LassoWord& x) {
  return search::find_accepting_lasso(evaluation_graph(t, x), 0, 7).has_value();
}

std::vector<LassoWord> lasso_outputs(const BuchiTransducer& t, const LassoWord& x, std::size_t limit) {
  std::vector<LassoWord> outs;
  for (const auto& run : search::accepting_lassos(evaluation_graph(t, x), 0, 7, limit, true)) {
    outs.push_back(witness_from_run(t, run).output);
  }
  return outs;
}

namespace {

// Two copies of (input-split) transducers running in lockstep on a common
// input; the pair (side, overhang) records how far one output stream leads
// the other. Side 3 means the streams already disagree.
struct PairKey {
  State p1;
  State p2;
  int side;
  Word overhang;

  auto operator<=>(const PairKey&) const = default;
};

struct PairLabel {
  std::int64_t t1;
  std::int64_t t2;
};

enum class PairMode { Equal, Differ };

constexpr search::Marks kEnter1 = 1, kEnter2 = 2, kInput = 4, kOut1 = 8, kOut2 = 16, kDiverged = 32;

struct PairResult {
  LassoWord input;
  LassoWord out1;
  LassoWord out2;
};

std::optional<PairResult> pair_search(const BuchiTransducer& a, const BuchiTransducer& b, std::size_t bound,
                                      PairMode mode, PairSearchStats* stats, std::size_t node_budget) {
  if (!(a.input_alphabet() == b.input_alphabet())) throw AlphabetMismatch("transducers read different input alphabets");
  if (!(a.output_alphabet() == b.output_alphabet())) throw AlphabetMismatch("transducers write different output alphabets");
  const BuchiTransducer t1 = split_input_letters(a);
  const BuchiTransducer t2 = split_input_letters(b);
  std::size_t bound_hits = 0;

  auto successors = [&](const PairKey& k, auto&& emit) {
    auto step = [&](const TransducerTransition* s1, const TransducerTransition* s2, std::int64_t id1,
                    std::int64_t id2) {
      static const Word empty;
      const Word& o1 = s1 ? s1->output : empty;
      const Word& o2 = s2 ? s2->output : empty;
      PairKey next{s1 ? s1->target : k.p1, s2 ? s2->target : k.p2, 0, {}};
      if (k.side == 3) {
        next.side = 3;
      } else {
        Word top = k.side == 1 ? concat(k.overhang, o1) : o1;
        Word bottom = k.side == 2 ? concat(k.overhang, o2) : o2;
        const std::size_t common = std::min(top.size(), bottom.size());
        if (!std::equal(top.begin(), top.begin() + static_cast<std::ptrdiff_t>(common), bottom.begin())) {
          if (mode == PairMode::Equal) return;
          next.side = 3;
        } else if (top.size() > bottom.size()) {
          next.side = 1;
          next.overhang.assign(top.begin() + static_cast<std::ptrdiff_t>(common), top.end());
        } else if (bottom.size() > top.size()) {
          next.side = 2;
          next.overhang.assign(bottom.begin() + static_cast<std::ptrdiff_t>(common), bottom.end());
        }
        if (next.overhang.size() > bound) {
          ++bound_hits;
          return;
        }
      }
      search::Marks m = 0;
      if (s1 && t1.is_accepting(s1->target)) m |= kEnter1;
      if (s2 && t2.is_accepting(s2->target)) m |= kEnter2;
      if (s1 && s2) m |= kInput;
      if (!o1.empty()) m |= kOut1;
      if (!o2.empty()) m |= kOut2;
      if (next.side == 3) m |= kDiverged;
      emit(next, m, PairLabel{id1, id2});
    };
    for (std::size_t i : t1.outgoing(k.p1)) {
      if (t1.transitions()[i].input.empty()) step(&t1.transitions()[i], nullptr, static_cast<std::int64_t>(i), -1);
    }
    for (std::size_t j : t2.outgoing(k.p2)) {
      if (t2.transitions()[j].input.empty()) step(nullptr, &t2.transitions()[j], -1, static_cast<std::int64_t>(j));
    }
    for (std::size_t i : t1.outgoing(k.p1)) {
      const auto& s1 = t1.transitions()[i];
      if (s1.input.size() != 1) continue;
      for (std::size_t j : t2.outgoing(k.p2)) {
        const auto& s2 = t2.transitions()[j];
        if (s2.input == s1.input) step(&s1, &s2, static_cast<std::int64_t>(i), static_cast<std::int64_t>(j));
      }
    }
  };

  auto ex = search::explore<PairKey, PairLabel>(PairKey{t1.initial(), t2.initial(), 0, {}}, successors, node_budget);
  if (stats) {
    stats->nodes = ex.keys.size();
    stats->bound_hits = bound_hits;
    stats->truncated = ex.truncated;
  }
  search::Marks required = kEnter1 | kEnter2 | kInput | kOut1 | kOut2;
  if (mode == PairMode::Differ) required |= kDiverged;
  auto run = search::find_accepting_lasso(ex.graph, 0, required);
  if (!run) return std::nullopt;

  Word in[2], o1[2], o2[2];
  auto collect = [&](const std::vector<PairLabel>& labels, int part) {
    for (const auto& l : labels) {
      if (l.t1 >= 0) o1[part] = concat(o1[part], t1.transitions()[static_cast<std::size_t>(l.t1)].output);
      if (l.t2 >= 0) o2[part] = concat(o2[part], t2.transitions()[static_cast<std::size_t>(l.t2)].output);
      if (l.t1 >= 0 && l.t2 >= 0) in[part] = concat(in[part], t1.transitions()[static_cast<std::size_t>(l.t1)].input);
    }
  };
  collect(run->stem, 0);
  collect(run->cycle, 1);
  return PairResult{lasso_normalize(in[0], in[1]), lasso_normalize(o1[0], o1[1]), lasso_normalize(o2[0], o2[1])};
}

}  // namespace

std::optional<NonfunctionalityWitness> nonfunctionality_search(const BuchiTransducer& t, std::size_t bound,
                                                               PairSearchStats* stats, std::size_t node_budget) {
  auto r = pair_search(t, t, bound, PairMode::Differ, stats, node_budget);
  if (!r) return std::nullopt;
  if (lasso_equal(r->out1, r->out2)) throw Error("internal: diverged runs produced equal outputs");
  return NonfunctionalityWitness{r->input, r->out1, r->out2};
}

std::optional<CommonWitness> intersection_witness_search(const BuchiTransducer& t1, const BuchiTransducer& t2,
                                                         std::size_t bound, PairSearchStats* stats,
                                                         std::size_t node_budget) {
  auto r = pair_search(t1, t2, bound, PairMode::Equal, stats, node_budget);
  if (!r) return std::nullopt;
  if (!lasso_equal(r->out1, r->out2)) throw Error("internal: synchronized runs produced different outputs");
  return CommonWitness{r->input, r->out1};
}

}  // namespace omega
