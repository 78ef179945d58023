#pragma once

// ω-PCP restricted to a regular ω-language of index words.

#include <optional>
#include <vector>

#include "omega/buchi.hpp"
#include "omega/core.hpp"

namespace omega {

/// Index alphabet {1, ..., n}; symbol i-1 is named "i".
Alphabet index_alphabet(std::size_t n);

/// Two n-tuples of nonempty words over `alphabet` plus a constraint
/// automaton over the index alphabet.
class PcpRegInstance {
 public:
  PcpRegInstance(Alphabet alphabet, std::vector<Word> x_words, std::vector<Word> y_words, BuchiAutomaton constraint);

  const Alphabet& alphabet() const { return alphabet_; }
  const std::vector<Word>& x_words() const { return x_; }
  const std::vector<Word>& y_words() const { return y_; }
  const BuchiAutomaton& constraint() const { return constraint_; }
  std::size_t size() const { return x_.size(); }

 private:
  Alphabet alphabet_;
  std::vector<Word> x_;
  std::vector<Word> y_;
  BuchiAutomaton constraint_;
};

/// Concatenation of words[i] along the index lasso sigma, normalized.
LassoWord concatenate_indices(const std::vector<Word>& words, const LassoWord& sigma);

bool verify_solution(const PcpRegInstance& instance, const LassoWord& sigma);

enum class Side { Level, XAhead, YAhead };

/// Node of the configuration graph explored by the solution search.
struct OverhangConfig {
  State automaton_state;
  Side side;
  Word overhang;

  auto operator<=>(const OverhangConfig&) const = default;
};

struct PcpSearchResult {
  std::optional<LassoWord> solution;
  /// Constraint transition ids along the lasso (stem then cycle).
  std::vector<std::size_t> stem;
  std::vector<std::size_t> cycle;
  std::size_t configs = 0;
  /// Edges dropped because the overhang exceeded the bound. Zero together
  /// with an absent solution means the configuration graph was exhausted.
  std::size_t bound_hits = 0;
  bool truncated = false;
};

/// Breadth-first search of the overhang configuration graph for an
/// ultimately periodic solution. Complete for solutions whose overhang
/// stays within `overhang_bound`; never claims unsolvability.
PcpSearchResult search_lasso_solution(const PcpRegInstance& instance, std::size_t overhang_bound,
                                      std::size_t node_budget = 1'000'000);

}  // namespace omega
