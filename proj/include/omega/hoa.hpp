#pragma once

// Import/export of plain Büchi automata in the Hanoi Omega-Automata format.
// Letters are encoded as minterms over ceil(log2 |Σ|) atomic propositions;
// the letter names travel in an `omega-alphabet:` header.

#include <string>
#include <string_view>

#include "omega/buchi.hpp"

namespace omega {

std::string to_hoa(const BuchiAutomaton& a);

/// Accepts state-based Büchi acceptance (`Acceptance: 1 Inf(0)`) with
/// explicit edge labels built from t, f, !, &, |, parentheses and AP
/// indices. Throws ParseError otherwise.
BuchiAutomaton from_hoa(std::string_view text);

}  // namespace omega
