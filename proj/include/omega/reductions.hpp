#pragma once

// Constructions between Turing machines, ω-PCP(Reg) instances, pairs of
// Büchi transducers, and the two functions F and F' whose continuity sets
// encode solvability.

#include <array>
#include <string>
#include <utility>

#include "omega/pcp.hpp"
#include "omega/transducer.hpp"
#include "omega/turing.hpp"

namespace omega {

/// Instance over Γ_tape ∪ Q ∪ {#} (in that symbol order). Pair 1 is
/// (#, #q0#); the constraint accepts index words starting with 1 and
/// containing infinitely many indices whose y-word mentions q0.
PcpRegInstance tm_to_pcpreg(const TuringMachine& m);

/// Indices (0-based) of the pairs whose y-word contains the initial state.
std::vector<Symbol> tm_recurrence_indices(const TuringMachine& m, const PcpRegInstance& instance);

/// Configuration encoding used between # separators: the state symbol sits
/// immediately left of the scanned cell.
Word encode_configuration(const TuringMachine& m, const TmConfiguration& c);

/// Reads the run spelled by the y-concatenation of a solution.
/// Throws PreconditionViolation when sigma fails verification and
/// MalformedSolution when the spelled word is not a legal recurring run.
ConfigurationLasso decode_pcp_solution(const TuringMachine& m, const LassoWord& sigma);

/// T1 maps σ ∈ L(A) to x_σ, T2 maps σ to y_σ.
std::pair<BuchiTransducer, BuchiTransducer> pcp_to_transducer_pair(const PcpRegInstance& instance);

enum class FBranches { Both, XOnly, YOnly };

/// Input alphabet {1..n, a, b}; output alphabet Γ. The X branch requires
/// infinitely many a and emits x-words, the Y branch requires finitely many a
/// and emits y-words.
BuchiTransducer pcp_to_function_F(const PcpRegInstance& instance, FBranches branches = FBranches::Both);

/// The fixed gadget instance over {c, d}.
struct Pcp1Gadget {
  std::array<std::string, 3> t{"cc", "d", "d"};
  std::array<std::string, 3> w{"c", "c", "dd"};
};

/// Spelling of a D-block (values 0..2 for d1..d3) through the t or w words.
std::string pcp1_spell(const std::vector<int>& block, bool use_t);

/// Input alphabet {d1, d2, d3, 1..n, a, b}; output alphabet Γ ∪ {c, d}, with
/// c and d renamed when Γ already uses those names. A nonempty D-block is
/// read first; the X branch emits t-words on it, the Y branch w-words.
BuchiTransducer pcp_to_function_Fprime(const PcpRegInstance& instance);

}  // namespace omega
