#include "omega/turing.hpp"

#include <algorithm>
#include <set>

#include "omega/graph_search.hpp"

namespace omega {

TuringMachine::TuringMachine(std::vector<std::string> state_names, Alphabet tape_alphabet,
                             std::vector<Symbol> input_symbols, Symbol blank, TmState initial,
                             std::vector<TmRule> rules)
    : states_(std::move(state_names)),
      tape_(std::move(tape_alphabet)),
      input_(std::move(input_symbols)),
      blank_(blank),
      initial_(initial) {
  if (states_.empty()) throw InvalidArgument("machine needs at least one state");
  if (initial_ >= states_.size()) throw InvalidArgument("initial state out of range");
  if (!tape_.contains(blank_)) throw InvalidArgument("blank outside tape alphabet");
  std::set<std::string> seen;
  for (const auto& s : states_) {
    if (s == "#" || tape_.find(s) || !seen.insert(s).second) {
      throw InvalidArgument("state name '" + s + "' collides with a tape symbol, '#', or another state");
    }
  }
  // Validates the names as symbols of the encoded PCP alphabet.
  Alphabet check(states_);
  for (Symbol s : input_) {
    if (!tape_.contains(s)) throw InvalidArgument("input symbol outside tape alphabet");
    if (s == blank_) throw InvalidArgument("blank must not be an input symbol");
  }
  std::set<TmRule> unique;
  for (const auto& r : rules) {
    if (r.state >= states_.size() || r.next >= states_.size()) throw InvalidArgument("rule references unknown state");
    if (!tape_.contains(r.read) || !tape_.contains(r.write)) throw InvalidArgument("rule references unknown symbol");
    if (unique.insert(r).second) rules_.push_back(r);
  }
}

std::vector<TmRule> TuringMachine::rules_for(TmState state, Symbol symbol) const {
  std::vector<TmRule> out;
  for (const auto& r : rules_) {
    if (r.state == state && r.read == symbol) out.push_back(r);
  }
  return out;
}

TmConfiguration canonical_configuration(const TuringMachine& m, Word tape, std::size_t head, TmState state) {
  while (tape.size() > head + 1 && tape.back() == m.blank()) tape.pop_back();
  if (tape.size() <= head) tape.resize(head + 1, m.blank());
  return {std::move(tape), head, state};
}

TmConfiguration initial_configuration(const TuringMachine& m) {
  return canonical_configuration(m, {}, 0, m.initial());
}

std::vector<TmConfiguration> tm_successors(const TuringMachine& m, const TmConfiguration& c) {
  std::vector<TmConfiguration> out;
  for (const auto& r : m.rules_for(c.state, c.tape[c.head])) {
    Word tape = c.tape;
    tape[c.head] = r.write;
    std::size_t head = c.head;
    if (r.move == Move::Left) {
      if (head == 0) continue;
      --head;
    } else if (r.move == Move::Right) {
      ++head;
    }
    out.push_back(canonical_configuration(m, std::move(tape), head, r.next));
  }
  return out;
}

std::string format_configuration(const TuringMachine& m, const TmConfiguration& c) {
  std::string out;
  for (std::size_t i = 0; i < c.tape.size(); ++i) {
    if (i == c.head) out += "[" + m.state_names()[c.state] + "]";
    out += m.tape_alphabet().name(c.tape[i]);
  }
  return out;
}

bool is_recurring_run(const TuringMachine& m, const ConfigurationLasso& run) {
  if (run.cycle.empty()) return false;
  std::vector<TmConfiguration> seq = run.stem;
  seq.insert(seq.end(), run.cycle.begin(), run.cycle.end());
  if (seq.front() != initial_configuration(m)) return false;
  auto legal = [&](const TmConfiguration& a, const TmConfiguration& b) {
    const auto succ = tm_successors(m, a);
    return std::find(succ.begin(), succ.end(), b) != succ.end();
  };
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    if (!legal(seq[i], seq[i + 1])) return false;
  }
  if (!legal(run.cycle.back(), run.cycle.front())) return false;
  return std::any_of(run.cycle.begin(), run.cycle.end(),
                     [&](const TmConfiguration& c) { return c.state == m.initial(); });
}

TmSearchResult tm_recurring_search(const TuringMachine& m, std::size_t config_bound, std::size_t step_budget) {
  TmSearchResult result;
  const TmConfiguration init = initial_configuration(m);
  if (init.tape.size() > config_bound) return result;
  auto successors = [&](const TmConfiguration& c, auto&& emit) {
    for (auto& next : tm_successors(m, c)) {
      if (next.tape.size() > config_bound) {
        ++result.bound_hits;
        continue;
      }
      const search::Marks mark = next.state == m.initial() ? 1u : 0u;
      emit(next, mark, next);
    }
  };
  auto ex = search::explore<TmConfiguration, TmConfiguration>(init, successors, step_budget);
  result.configurations = ex.keys.size();
  result.budget_exhausted = ex.truncated;
  auto run = search::find_accepting_lasso(ex.graph, 0, 1);
  if (!run) return result;
  ConfigurationLasso lasso;
  // Labels are edge targets: the stem ends at the cycle root.
  TmConfiguration cur = init;
  for (const auto& c : run->stem) {
    lasso.stem.push_back(cur);
    cur = c;
  }
  for (const auto& c : run->cycle) {
    lasso.cycle.push_back(cur);
    cur = c;
  }
  result.run = std::move(lasso);
  return result;
}

}  // namespace omega
