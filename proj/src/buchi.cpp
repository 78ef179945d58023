#include "omega/buchi.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <tuple>

#include "omega/graph_search.hpp"

namespace omega {

BuchiAutomaton::BuchiAutomaton(Alphabet alphabet, std::size_t num_states, State initial,
                               std::vector<Transition> transitions, std::vector<State> accepting,
                               std::vector<std::string> state_names)
    : alphabet_(std::move(alphabet)), num_states_(num_states), initial_(initial), names_(std::move(state_names)) {
  if (num_states_ == 0) throw InvalidArgument("automaton needs at least one state");
  if (initial_ >= num_states_) throw InvalidArgument("initial state out of range");
  if (!names_.empty() && names_.size() != num_states_) throw InvalidArgument("state name count mismatch");
  std::set<Transition> seen;
  for (const auto& t : transitions) {
    if (t.source >= num_states_ || t.target >= num_states_) throw InvalidArgument("transition references unknown state");
    if (!alphabet_.contains(t.symbol)) throw AlphabetMismatch("transition symbol outside alphabet");
    if (seen.insert(t).second) transitions_.push_back(t);
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

std::string BuchiAutomaton::state_name(State q) const {
  if (!names_.empty()) return names_[q];
  return std::to_string(q);
}

BuchiAutomaton universal_automaton(const Alphabet& alphabet) {
  std::vector<Transition> ts;
  for (Symbol s = 0; s < alphabet.size(); ++s) ts.push_back({0, s, 0});
  return BuchiAutomaton(alphabet, 1, 0, std::move(ts), {0});
}

namespace {

// Product of the automaton with the lasso's position cycle.
search::Graph<Symbol> lasso_product(const BuchiAutomaton& a, const LassoWord& w) {
  const std::size_t len = w.prefix().size() + w.loop().size();
  auto next = [&](std::size_t p) { return p + 1 < len ? p + 1 : w.prefix().size(); };
  using Key = std::pair<State, std::size_t>;
  auto ex = search::explore<Key, Symbol>(Key{a.initial(), 0}, [&](const Key& k, auto&& emit) {
    const Symbol letter = w.at(k.second);
    for (std::size_t ti : a.outgoing(k.first)) {
      const auto& t = a.transitions()[ti];
      if (t.symbol == letter) emit(Key{t.target, next(k.second)}, a.is_accepting(t.target) ? 1u : 0u, letter);
    }
  });
  return std::move(ex.graph);
}

search::Graph<Symbol> automaton_graph(const BuchiAutomaton& a) {
  search::Graph<Symbol> g;
  g.adjacency.resize(a.num_states());
  for (const auto& t : a.transitions()) {
    g.adjacency[t.source].push_back({t.target, a.is_accepting(t.target) ? 1u : 0u, t.symbol});
  }
  return g;
}

}  // namespace

bool nba_accepts_lasso(const BuchiAutomaton& a, const LassoWord& w) {
  check_lasso(a.alphabet(), w);
  return search::find_accepting_lasso(lasso_product(a, w), 0, 1).has_value();
}

std::optional<LassoWord> nba_is_empty(const BuchiAutomaton& a) {
  auto run = search::find_accepting_lasso(automaton_graph(a), a.initial(), 1);
  if (!run) return std::nullopt;
  return lasso_normalize(run->stem, run->cycle);
}

BuchiAutomaton nba_product_intersection(const BuchiAutomaton& a1, const BuchiAutomaton& a2) {
  if (!(a1.alphabet() == a2.alphabet())) throw AlphabetMismatch("product of automata over different alphabets");
  using Key = std::tuple<State, State, int>;
  auto ex = search::explore<Key, Symbol>(Key{a1.initial(), a2.initial(), 0}, [&](const Key& k, auto&& emit) {
    const auto [p, q, flag] = k;
    int next_flag = flag;
    if (flag == 0 && a1.is_accepting(p)) next_flag = 1;
    else if (flag == 1 && a2.is_accepting(q)) next_flag = 0;
    for (std::size_t i : a1.outgoing(p)) {
      const auto& t1 = a1.transitions()[i];
      for (std::size_t j : a2.outgoing(q)) {
        const auto& t2 = a2.transitions()[j];
        if (t1.symbol == t2.symbol) emit(Key{t1.target, t2.target, next_flag}, 0, t1.symbol);
      }
    }
  });
  std::vector<Transition> ts;
  std::vector<State> acc;
  std::vector<std::string> names;
  for (std::size_t v = 0; v < ex.keys.size(); ++v) {
    const auto [p, q, flag] = ex.keys[v];
    if (flag == 0 && a1.is_accepting(p)) acc.push_back(static_cast<State>(v));
    names.push_back("(" + a1.state_name(p) + "," + a2.state_name(q) + "," + std::to_string(flag) + ")");
    for (const auto& e : ex.graph.adjacency[v]) ts.push_back({static_cast<State>(v), e.label, static_cast<State>(e.target)});
  }
  return BuchiAutomaton(a1.alphabet(), ex.keys.size(), 0, std::move(ts), std::move(acc), std::move(names));
}

BuchiAutomaton nba_trim(const BuchiAutomaton& a) {
  const std::size_t n = a.num_states();
  std::vector<std::vector<State>> succ(n), pred(n);
  for (const auto& t : a.transitions()) {
    succ[t.source].push_back(t.target);
    pred[t.target].push_back(t.source);
  }
  auto closure = [&](std::vector<State> start, const std::vector<std::vector<State>>& adj) {
    std::vector<bool> seen(n, false);
    std::deque<State> queue(start.begin(), start.end());
    for (State s : start) seen[s] = true;
    while (!queue.empty()) {
      const State v = queue.front();
      queue.pop_front();
      for (State w : adj[v]) {
        if (!seen[w]) {
          seen[w] = true;
          queue.push_back(w);
        }
      }
    }
    return seen;
  };
  const auto reachable = closure({a.initial()}, succ);
  // Accepting states lying on a cycle.
  std::vector<State> good;
  for (State f : a.accepting()) {
    if (!reachable[f]) continue;
    const auto back = closure(succ[f], succ);
    if (back[f]) good.push_back(f);
  }
  const auto coreach = closure(good, pred);

  std::vector<State> remap(n, static_cast<State>(-1));
  std::vector<std::string> names;
  std::size_t count = 0;
  for (State q = 0; q < n; ++q) {
    if (reachable[q] && coreach[q]) {
      remap[q] = static_cast<State>(count++);
      if (!a.state_names().empty()) names.push_back(a.state_names()[q]);
    }
  }
  if (count == 0) {
    std::vector<std::string> init_name;
    if (!a.state_names().empty()) init_name.push_back(a.state_names()[a.initial()]);
    return BuchiAutomaton(a.alphabet(), 1, 0, {}, {}, std::move(init_name));
  }
  std::vector<Transition> ts;
  for (const auto& t : a.transitions()) {
    if (remap[t.source] != static_cast<State>(-1) && remap[t.target] != static_cast<State>(-1)) {
      ts.push_back({remap[t.source], t.symbol, remap[t.target]});
    }
  }
  std::vector<State> acc;
  for (State f : a.accepting()) {
    if (remap[f] != static_cast<State>(-1)) acc.push_back(remap[f]);
  }
  return BuchiAutomaton(a.alphabet(), count, remap[a.initial()], std::move(ts), std::move(acc), std::move(names));
}

std::set<Word> prefix_set(const BuchiAutomaton& a, std::size_t m) {
  if (m == 0) throw InvalidArgument("prefix length must be at least 1");
  const BuchiAutomaton t = nba_trim(a);
  std::set<Word> result;
  if (t.transitions().empty()) return result;
  // Frontier: word read so far -> states reached.
  std::map<Word, std::set<State>> frontier{{Word{}, {t.initial()}}};
  for (std::size_t step = 0; step < m; ++step) {
    std::map<Word, std::set<State>> next;
    for (const auto& [w, states] : frontier) {
      for (State q : states) {
        for (std::size_t ti : t.outgoing(q)) {
          const auto& tr = t.transitions()[ti];
          Word ext = w;
          ext.push_back(tr.symbol);
          next[std::move(ext)].insert(tr.target);
        }
      }
    }
    frontier = std::move(next);
  }
  for (auto& [w, states] : frontier) result.insert(w);
  return result;
}

}  // namespace omega
