#pragma once

// Nondeterministic single-tape Turing machines with a one-way infinite tape,
// started on the blank tape, and bounded search for computations that
// re-enter the initial state infinitely often.

#include <optional>
#include <string>
#include <vector>

#include "omega/core.hpp"

namespace omega {

using TmState = std::uint32_t;

enum class Move { Left, Right, Stay };

struct TmRule {
  TmState state;
  Symbol read;
  TmState next;
  Symbol write;
  Move move;

  auto operator<=>(const TmRule&) const = default;
};

class TuringMachine {
 public:
  /// `input_symbols` is the input alphabet as a subset of the tape alphabet;
  /// it must not contain the blank. State names must not collide with tape
  /// symbol names or with "#".
  TuringMachine(std::vector<std::string> state_names, Alphabet tape_alphabet, std::vector<Symbol> input_symbols,
                Symbol blank, TmState initial, std::vector<TmRule> rules);

  const std::vector<std::string>& state_names() const { return states_; }
  std::size_t num_states() const { return states_.size(); }
  const Alphabet& tape_alphabet() const { return tape_; }
  const std::vector<Symbol>& input_symbols() const { return input_; }
  Symbol blank() const { return blank_; }
  TmState initial() const { return initial_; }
  const std::vector<TmRule>& rules() const { return rules_; }

  /// Rules applicable in `state` scanning `symbol`, in declaration order.
  std::vector<TmRule> rules_for(TmState state, Symbol symbol) const;

 private:
  std::vector<std::string> states_;
  Alphabet tape_;
  std::vector<Symbol> input_;
  Symbol blank_;
  TmState initial_;
  std::vector<TmRule> rules_;
};

/// Machine configuration. Canonical form: trailing blanks right of the head
/// are dropped and the tape is long enough to hold the scanned cell.
struct TmConfiguration {
  Word tape;
  std::size_t head = 0;
  TmState state = 0;

  auto operator<=>(const TmConfiguration&) const = default;
};

TmConfiguration canonical_configuration(const TuringMachine& m, Word tape, std::size_t head, TmState state);

TmConfiguration initial_configuration(const TuringMachine& m);

/// One-step successors in canonical form. A left move at cell 0 has no
/// successor.
std::vector<TmConfiguration> tm_successors(const TuringMachine& m, const TmConfiguration& c);

std::string format_configuration(const TuringMachine& m, const TmConfiguration& c);

/// Stem followed by a cycle; the last cycle configuration steps back to the
/// first one.
struct ConfigurationLasso {
  std::vector<TmConfiguration> stem;
  std::vector<TmConfiguration> cycle;
};

/// Legal run of m from the blank tape whose cycle visits the initial state.
bool is_recurring_run(const TuringMachine& m, const ConfigurationLasso& run);

struct TmSearchResult {
  std::optional<ConfigurationLasso> run;
  std::size_t configurations = 0;
  std::size_t bound_hits = 0;  // successors dropped for exceeding the tape bound
  bool budget_exhausted = false;
};

/// Breadth-first search over canonical configurations with tape length at
/// most `config_bound`, expanding at most `step_budget` configurations.
TmSearchResult tm_recurring_search(const TuringMachine& m, std::size_t config_bound, std::size_t step_budget);

}  // namespace omega
