#include "omega/core.hpp"

#include <algorithm>
#include <numeric>

namespace omega {

namespace {

constexpr std::string_view kEpsilon = "ε";

bool reserved_char(char c) {
  return c == '(' || c == ')' || c == '.' || c == ' ' || c == '\t' || c == '\n';
}

}  // namespace

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty()) throw InvalidArgument("alphabet must be nonempty");
  for (Symbol i = 0; i < names_.size(); ++i) {
    const auto& n = names_[i];
    if (n.empty() || n == kEpsilon || std::any_of(n.begin(), n.end(), reserved_char)) {
      throw InvalidArgument("invalid symbol name '" + n + "'");
    }
    if (!index_.emplace(n, i).second) throw InvalidArgument("duplicate symbol '" + n + "'");
  }
}

const std::string& Alphabet::name(Symbol s) const {
  if (s >= names_.size()) throw AlphabetMismatch("symbol id " + std::to_string(s) + " outside alphabet");
  return names_[s];
}

std::optional<Symbol> Alphabet::find(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Symbol Alphabet::at(std::string_view name) const {
  auto s = find(name);
  if (!s) throw AlphabetMismatch("unknown symbol '" + std::string(name) + "'");
  return *s;
}

bool Alphabet::single_char() const {
  return std::all_of(names_.begin(), names_.end(), [](const std::string& n) { return n.size() == 1; });
}

void check_word(const Alphabet& alphabet, const Word& w) {
  for (Symbol s : w) {
    if (!alphabet.contains(s)) throw AlphabetMismatch("letter outside alphabet");
  }
}

LassoWord::LassoWord(Word prefix, Word loop) : prefix_(std::move(prefix)), loop_(std::move(loop)) {
  if (loop_.empty()) throw InvalidLasso("lasso loop must be nonempty");
}

Symbol LassoWord::at(std::size_t i) const {
  if (i < prefix_.size()) return prefix_[i];
  return loop_[(i - prefix_.size()) % loop_.size()];
}

Word LassoWord::take(std::size_t n) const {
  Word out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(at(i));
  return out;
}

void check_lasso(const Alphabet& alphabet, const LassoWord& w) {
  check_word(alphabet, w.prefix());
  check_word(alphabet, w.loop());
}

Word primitive_root(const Word& w) {
  // Smallest period p from the KMP failure function; w is a proper power
  // iff p divides |w|.
  const std::size_t n = w.size();
  if (n == 0) return w;
  std::vector<std::size_t> fail(n, 0);
  for (std::size_t i = 1, k = 0; i < n; ++i) {
    while (k > 0 && w[i] != w[k]) k = fail[k - 1];
    if (w[i] == w[k]) ++k;
    fail[i] = k;
  }
  const std::size_t period = n - fail[n - 1];
  if (n % period != 0) return w;
  return Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(period));
}

LassoWord lasso_normalize(Word prefix, Word loop) {
  if (loop.empty()) throw InvalidLasso("lasso loop must be nonempty");
  loop = primitive_root(loop);
  while (!prefix.empty() && prefix.back() == loop.back()) {
    prefix.pop_back();
    std::rotate(loop.rbegin(), loop.rbegin() + 1, loop.rend());
  }
  return LassoWord(std::move(prefix), std::move(loop));
}

bool lasso_equal(const LassoWord& w1, const LassoWord& w2) {
  const std::size_t bound = std::max(w1.prefix().size(), w2.prefix().size()) +
                            std::lcm(w1.loop().size(), w2.loop().size());
  for (std::size_t i = 0; i < bound; ++i) {
    if (w1.at(i) != w2.at(i)) return false;
  }
  return true;
}

Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::string format_word(const Alphabet& alphabet, const Word& w) {
  const bool sep = !alphabet.single_char();
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (sep && i > 0) out += '.';
    out += alphabet.name(w[i]);
  }
  return out;
}

std::string format_lasso(const Alphabet& alphabet, const LassoWord& w) {
  return format_word(alphabet, w.prefix()) + "(" + format_word(alphabet, w.loop()) + ")";
}

Word parse_word(const Alphabet& alphabet, std::string_view text) {
  Word out;
  if (text.empty() || text == kEpsilon) return out;
  if (alphabet.single_char() && text.find('.') == std::string_view::npos) {
    for (char c : text) {
      auto s = alphabet.find(std::string_view(&c, 1));
      if (!s) throw ParseError("unknown symbol '" + std::string(1, c) + "'");
      out.push_back(*s);
    }
    return out;
  }
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('.', start);
    if (end == std::string_view::npos) end = text.size();
    auto token = text.substr(start, end - start);
    auto s = alphabet.find(token);
    if (!s) throw ParseError("unknown symbol '" + std::string(token) + "'");
    out.push_back(*s);
    start = end + 1;
  }
  return out;
}

LassoWord parse_lasso(const Alphabet& alphabet, std::string_view text) {
  const auto open = text.find('(');
  if (open == std::string_view::npos || text.empty() || text.back() != ')' ||
      text.find('(', open + 1) != std::string_view::npos ||
      text.find(')') != text.size() - 1) {
    throw ParseError("lasso must have the form prefix(loop): '" + std::string(text) + "'");
  }
  Word prefix = parse_word(alphabet, text.substr(0, open));
  Word loop = parse_word(alphabet, text.substr(open + 1, text.size() - open - 2));
  if (loop.empty()) throw ParseError("lasso loop must be nonempty: '" + std::string(text) + "'");
  return LassoWord(std::move(prefix), std::move(loop));
}

}  // namespace omega
