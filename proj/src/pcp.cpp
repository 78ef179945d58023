#include "omega/pcp.hpp"

#include <algorithm>

#include "omega/graph_search.hpp"

namespace omega {

Alphabet index_alphabet(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) names.push_back(std::to_string(i));
  return Alphabet(std::move(names));
}

PcpRegInstance::PcpRegInstance(Alphabet alphabet, std::vector<Word> x_words, std::vector<Word> y_words,
                               BuchiAutomaton constraint)
    : alphabet_(std::move(alphabet)), x_(std::move(x_words)), y_(std::move(y_words)), constraint_(std::move(constraint)) {
  if (x_.empty()) throw InvalidArgument("instance needs at least one pair");
  if (x_.size() != y_.size()) throw InvalidArgument("x and y lists differ in length");
  for (std::size_t i = 0; i < x_.size(); ++i) {
    if (x_[i].empty() || y_[i].empty()) throw InvalidArgument("pair " + std::to_string(i + 1) + " has an empty word");
    check_word(alphabet_, x_[i]);
    check_word(alphabet_, y_[i]);
  }
  if (!(constraint_.alphabet() == index_alphabet(x_.size()))) {
    throw AlphabetMismatch("constraint alphabet must be the index alphabet 1.." + std::to_string(x_.size()));
  }
}

LassoWord concatenate_indices(const std::vector<Word>& words, const LassoWord& sigma) {
  auto spell = [&](const Word& idx) {
    Word out;
    for (Symbol i : idx) {
      if (i >= words.size()) throw InvalidArgument("index " + std::to_string(i + 1) + " out of range");
      out = concat(out, words[i]);
    }
    return out;
  };
  return lasso_normalize(spell(sigma.prefix()), spell(sigma.loop()));
}

bool verify_solution(const PcpRegInstance& instance, const LassoWord& sigma) {
  check_lasso(instance.constraint().alphabet(), sigma);
  if (!nba_accepts_lasso(instance.constraint(), sigma)) return false;
  return lasso_equal(concatenate_indices(instance.x_words(), sigma), concatenate_indices(instance.y_words(), sigma));
}

PcpSearchResult search_lasso_solution(const PcpRegInstance& instance, std::size_t overhang_bound,
                                      std::size_t node_budget) {
  const BuchiAutomaton& a = instance.constraint();
  PcpSearchResult result;

  // Lexicographic tie-breaking: outgoing transitions sorted by index symbol.
  std::vector<std::vector<std::size_t>> ordered(a.num_states());
  for (State q = 0; q < a.num_states(); ++q) {
    auto out = a.outgoing(q);
    ordered[q].assign(out.begin(), out.end());
    std::stable_sort(ordered[q].begin(), ordered[q].end(), [&](std::size_t l, std::size_t r) {
      return a.transitions()[l].symbol < a.transitions()[r].symbol;
    });
  }

  auto successors = [&](const OverhangConfig& c, auto&& emit) {
    for (std::size_t ti : ordered[c.automaton_state]) {
      const auto& t = a.transitions()[ti];
      Word top = c.side == Side::XAhead ? concat(c.overhang, instance.x_words()[t.symbol]) : instance.x_words()[t.symbol];
      Word bottom = c.side == Side::YAhead ? concat(c.overhang, instance.y_words()[t.symbol]) : instance.y_words()[t.symbol];
      const std::size_t common = std::min(top.size(), bottom.size());
      if (!std::equal(top.begin(), top.begin() + static_cast<std::ptrdiff_t>(common), bottom.begin())) continue;
      OverhangConfig next{t.target, Side::Level, {}};
      if (top.size() > common) {
        next.side = Side::XAhead;
        next.overhang.assign(top.begin() + static_cast<std::ptrdiff_t>(common), top.end());
      } else if (bottom.size() > common) {
        next.side = Side::YAhead;
        next.overhang.assign(bottom.begin() + static_cast<std::ptrdiff_t>(common), bottom.end());
      }
      if (next.overhang.size() > overhang_bound) {
        ++result.bound_hits;
        continue;
      }
      emit(next, a.is_accepting(t.target) ? 1u : 0u, ti);
    }
  };

  auto ex = search::explore<OverhangConfig, std::size_t>(OverhangConfig{a.initial(), Side::Level, {}}, successors,
                                                         node_budget);
  result.configs = ex.keys.size();
  result.truncated = ex.truncated;
  auto run = search::find_accepting_lasso(ex.graph, 0, 1);
  if (!run) return result;
  Word stem, cycle;
  for (std::size_t ti : run->stem) stem.push_back(a.transitions()[ti].symbol);
  for (std::size_t ti : run->cycle) cycle.push_back(a.transitions()[ti].symbol);
  result.solution = lasso_normalize(stem, cycle);
  result.stem = run->stem;
  result.cycle = run->cycle;
  if (!verify_solution(instance, *result.solution)) throw Error("internal: search produced an invalid solution");
  return result;
}

}  // namespace omega
