#pragma once

// Asynchronous Büchi transducers: transitions carry a finite input word and
// a finite output word, either possibly empty. The relation of a transducer
// holds the pairs (u, v) with u and v both infinite that label a successful
// computation.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "omega/buchi.hpp"
#include "omega/core.hpp"

namespace omega {

struct TransducerTransition {
  State source;
  Word input;
  Word output;
  State target;

  auto operator<=>(const TransducerTransition&) const = default;
};

class BuchiTransducer {
 public:
  BuchiTransducer(Alphabet input_alphabet, Alphabet output_alphabet, std::size_t num_states, State initial,
                  std::vector<TransducerTransition> transitions, std::vector<State> accepting,
                  std::vector<std::string> state_names = {});

  const Alphabet& input_alphabet() const { return input_; }
  const Alphabet& output_alphabet() const { return output_; }
  std::size_t num_states() const { return num_states_; }
  State initial() const { return initial_; }
  std::span<const TransducerTransition> transitions() const { return transitions_; }
  const std::vector<State>& accepting() const { return accepting_; }
  bool is_accepting(State q) const { return is_accepting_[q]; }
  std::span<const std::size_t> outgoing(State q) const { return outgoing_[q]; }
  std::string state_name(State q) const;
  const std::vector<std::string>& state_names() const { return names_; }

 private:
  Alphabet input_;
  Alphabet output_;
  std::size_t num_states_;
  State initial_;
  std::vector<TransducerTransition> transitions_;
  std::vector<State> accepting_;
  std::vector<bool> is_accepting_;
  std::vector<std::vector<std::size_t>> outgoing_;
  std::vector<std::string> names_;
};

/// An accepting lasso computation: transition ids for the stem and for the
/// cycle, plus the input and output words they spell.
struct RationalRelationWitness {
  LassoWord input;
  LassoWord output;
  std::vector<std::size_t> stem;
  std::vector<std::size_t> cycle;
};

/// Replays the run from the initial state and checks that it is an accepting
/// lasso computation spelling exactly the claimed input and output.
bool check_witness(const BuchiTransducer& t, const RationalRelationWitness& w);

/// Letter-normalized automaton for Dom(R(T)).
BuchiAutomaton domain_automaton(const BuchiTransducer& t);

/// Letter-normalized automaton for Im(R(T)).
BuchiAutomaton image_automaton(const BuchiTransducer& t);

/// R(T) ∩ (w·Σ^ω × Γ^ω).
BuchiTransducer restrict_input_prefix(const BuchiTransducer& t, const Word& w);

/// Same relation, every transition reading at most one input letter. Output
/// of a split transition is emitted on its first step.
BuchiTransducer split_input_letters(const BuchiTransducer& t);

/// Value of a functional transducer at a lasso point, with the accepting run
/// that produced it. Throws NotInDomain when no accepting run exists.
RationalRelationWitness evaluate_lasso(const BuchiTransducer& t, const LassoWord& x);

inline LassoWord apply_lasso(const BuchiTransducer& t, const LassoWord& x) { return evaluate_lasso(t, x).output; }

bool in_domain(const BuchiTransducer& t, const LassoWord& x);

/// Outputs of up to `limit` distinct accepting lasso runs on x (one per
/// accepting component and cycle root). Used to audit functionality.
std::vector<LassoWord> lasso_outputs(const BuchiTransducer& t, const LassoWord& x, std::size_t limit);

struct NonfunctionalityWitness {
  LassoWord input;
  LassoWord output1;
  LassoWord output2;
};

struct CommonWitness {
  LassoWord input;
  LassoWord output;
};

struct PairSearchStats {
  std::size_t nodes = 0;
  std::size_t bound_hits = 0;
  bool truncated = false;
};

/// Bounded falsifier for functionality: searches two accepting runs on the
/// same input lasso whose outputs differ, with output lag at most `bound`.
/// Absence is not a proof of functionality.
std::optional<NonfunctionalityWitness> nonfunctionality_search(const BuchiTransducer& t, std::size_t bound,
                                                               PairSearchStats* stats = nullptr,
                                                               std::size_t node_budget = 2'000'000);

/// Bounded search for a pair (x, w) in R(T1) ∩ R(T2), with output lag at
/// most `bound`. The input alphabets must coincide.
std::optional<CommonWitness> intersection_witness_search(const BuchiTransducer& t1, const BuchiTransducer& t2,
                                                         std::size_t bound, PairSearchStats* stats = nullptr,
                                                         std::size_t node_budget = 2'000'000);

/// Identity transducer on `alphabet`.
BuchiTransducer identity_transducer(const Alphabet& alphabet);

}  // namespace omega
