#pragma once

// Alphabets, finite words and ultimately periodic infinite words.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace omega {

using Symbol = std::uint32_t;
using Word = std::vector<Symbol>;

// Error hierarchy shared by every module.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidLasso : public Error {
 public:
  using Error::Error;
};

class AlphabetMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class NotInDomain : public Error {
 public:
  using Error::Error;
};

class NoWitness : public Error {
 public:
  using Error::Error;
};

class MalformedSolution : public Error {
 public:
  using Error::Error;
};

class PreconditionViolation : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// Finite ordered set of named symbols. Symbol ids are positions in the
/// declaration order.
class Alphabet {
 public:
  explicit Alphabet(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(Symbol s) const;
  const std::vector<std::string>& names() const { return names_; }
  std::optional<Symbol> find(std::string_view name) const;
  Symbol at(std::string_view name) const;
  bool contains(Symbol s) const { return s < names_.size(); }

  /// True when every symbol name is a single byte, in which case lasso
  /// strings need no separators.
  bool single_char() const;

  bool operator==(const Alphabet& other) const { return names_ == other.names_; }

 private:
  std::vector<std::string> names_;
  std::map<std::string, Symbol, std::less<>> index_;
};

void check_word(const Alphabet& alphabet, const Word& w);

/// Infinite word prefix·loop^ω. The loop is never empty.
class LassoWord {
 public:
  LassoWord(Word prefix, Word loop);

  const Word& prefix() const { return prefix_; }
  const Word& loop() const { return loop_; }

  /// Letter at 0-based position i of the infinite word.
  Symbol at(std::size_t i) const;

  /// First n letters.
  Word take(std::size_t n) const;

  // Structural comparison of the representation, not of the denoted word.
  // Use lasso_equal for semantic equality.
  auto operator<=>(const LassoWord&) const = default;
  bool operator==(const LassoWord&) const = default;

 private:
  Word prefix_;
  Word loop_;
};

void check_lasso(const Alphabet& alphabet, const LassoWord& w);

/// Canonical representative: primitive loop and shortest prefix. Two inputs
/// denoting the same infinite word normalize to the same value.
LassoWord lasso_normalize(Word prefix, Word loop);
inline LassoWord lasso_normalize(const LassoWord& w) { return lasso_normalize(w.prefix(), w.loop()); }

/// Semantic equality, by letter comparison up to
/// max(|prefix1|, |prefix2|) + lcm(|loop1|, |loop2|).
bool lasso_equal(const LassoWord& w1, const LassoWord& w2);

/// Shortest primitive root of a nonempty word.
Word primitive_root(const Word& w);

Word concat(const Word& a, const Word& b);

std::string format_word(const Alphabet& alphabet, const Word& w);

// Textual lasso form `u(v)`. Symbols are separated by `.` when any name in
// the alphabet is longer than one character. An empty prefix may be written
// as nothing or as `ε`.
std::string format_lasso(const Alphabet& alphabet, const LassoWord& w);
LassoWord parse_lasso(const Alphabet& alphabet, std::string_view text);
Word parse_word(const Alphabet& alphabet, std::string_view text);

}  // namespace omega
