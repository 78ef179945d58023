#pragma once

// Nondeterministic Büchi automata over explicit alphabets.

#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "omega/core.hpp"

namespace omega {

using State = std::uint32_t;

struct Transition {
  State source;
  Symbol symbol;
  State target;

  auto operator<=>(const Transition&) const = default;
};

/// Büchi automaton with dense state ids 0..num_states-1. Transitions are a
/// set kept in first-insertion order; every iteration over them follows that
/// order so results are reproducible.
class BuchiAutomaton {
 public:
  BuchiAutomaton(Alphabet alphabet, std::size_t num_states, State initial, std::vector<Transition> transitions,
                 std::vector<State> accepting, std::vector<std::string> state_names = {});

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t num_states() const { return num_states_; }
  State initial() const { return initial_; }
  std::span<const Transition> transitions() const { return transitions_; }
  const std::vector<State>& accepting() const { return accepting_; }
  bool is_accepting(State q) const { return is_accepting_[q]; }

  /// Transition indices leaving q, in stored order.
  std::span<const std::size_t> outgoing(State q) const { return outgoing_[q]; }

  /// Retained name of a state (product pair, chain position, ...) or its id.
  std::string state_name(State q) const;
  const std::vector<std::string>& state_names() const { return names_; }

 private:
  Alphabet alphabet_;
  std::size_t num_states_;
  State initial_;
  std::vector<Transition> transitions_;
  std::vector<State> accepting_;
  std::vector<bool> is_accepting_;
  std::vector<std::vector<std::size_t>> outgoing_;
  std::vector<std::string> names_;
};

/// One-state automaton accepting every infinite word over `alphabet`.
BuchiAutomaton universal_automaton(const Alphabet& alphabet);

/// Membership of prefix·loop^ω, by accepting-cycle search in the product of
/// the automaton with the lasso's shape.
bool nba_accepts_lasso(const BuchiAutomaton& a, const LassoWord& w);

/// Empty optional iff the language is empty; otherwise a normalized witness
/// in the language.
std::optional<LassoWord> nba_is_empty(const BuchiAutomaton& a);

/// Flag-tracking product accepting L(a1) ∩ L(a2). Only reachable product
/// states are built; names are "(p,q,flag)".
BuchiAutomaton nba_product_intersection(const BuchiAutomaton& a1, const BuchiAutomaton& a2);

/// Keeps the states reachable from the initial state that can reach an
/// accepting cycle. An empty language yields the initial state alone with no
/// transitions.
BuchiAutomaton nba_trim(const BuchiAutomaton& a);

/// { σ[m] : σ ∈ L(a) } for m ≥ 1.
std::set<Word> prefix_set(const BuchiAutomaton& a, std::size_t m);

}  // namespace omega
