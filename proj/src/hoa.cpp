#include "omega/hoa.hpp"

#include <cctype>
#include <optional>
#include <sstream>

namespace omega {

namespace {

std::size_t ap_count(std::size_t letters) {
  std::size_t k = 1;
  while ((std::size_t{1} << k) < letters) ++k;
  return k;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

enum class Tok { Header, String, Int, Ident, Punct, Body, End, Eof };

struct Token {
  Tok type;
  std::string text;
};

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  Token next() {
    skip();
    if (i_ >= s_.size()) return {Tok::Eof, ""};
    const char c = s_[i_];
    if (s_.substr(i_, 8) == "--BODY--") {
      i_ += 8;
      return {Tok::Body, "--BODY--"};
    }
    if (s_.substr(i_, 7) == "--END--") {
      i_ += 7;
      return {Tok::End, "--END--"};
    }
    if (c == '"') {
      std::string out;
      ++i_;
      while (i_ < s_.size() && s_[i_] != '"') {
        if (s_[i_] == '\\' && i_ + 1 < s_.size()) ++i_;
        out += s_[i_++];
      }
      if (i_ >= s_.size()) throw ParseError("HOA: unterminated string");
      ++i_;
      return {Tok::String, out};
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string out;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) out += s_[i_++];
      return {Tok::Int, out};
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string out;
      while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_' || s_[i_] == '-')) {
        out += s_[i_++];
      }
      if (i_ < s_.size() && s_[i_] == ':') {
        ++i_;
        return {Tok::Header, out};
      }
      return {Tok::Ident, out};
    }
    ++i_;
    return {Tok::Punct, std::string(1, c)};
  }

 private:
  void skip() {
    while (i_ < s_.size()) {
      if (std::isspace(static_cast<unsigned char>(s_[i_]))) {
        ++i_;
      } else if (s_.substr(i_, 2) == "/*") {
        const auto end = s_.find("*/", i_ + 2);
        if (end == std::string_view::npos) throw ParseError("HOA: unterminated comment");
        i_ = end + 2;
      } else {
        break;
      }
    }
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

// Recursive descent over a label's tokens: or > and > not > atom.
class LabelEval {
 public:
  LabelEval(const std::vector<Token>& toks, std::size_t minterm, std::size_t aps)
      : t_(toks), m_(minterm), aps_(aps) {}

  bool run() {
    const bool v = disj();
    if (p_ != t_.size()) throw ParseError("HOA: trailing tokens in label");
    return v;
  }

 private:
  bool peek(const char* p) const { return p_ < t_.size() && t_[p_].type == Tok::Punct && t_[p_].text == p; }

  bool disj() {
    bool v = conj();
    while (peek("|")) {
      ++p_;
      v = conj() || v;
    }
    return v;
  }
  bool conj() {
    bool v = neg();
    while (peek("&")) {
      ++p_;
      v = neg() && v;
    }
    return v;
  }
  bool neg() {
    if (peek("!")) {
      ++p_;
      return !neg();
    }
    return atom();
  }
  bool atom() {
    if (p_ >= t_.size()) throw ParseError("HOA: truncated label");
    const Token& tok = t_[p_++];
    if (tok.type == Tok::Punct && tok.text == "(") {
      const bool v = disj();
      if (!peek(")")) throw ParseError("HOA: missing ')' in label");
      ++p_;
      return v;
    }
    if (tok.type == Tok::Ident && tok.text == "t") return true;
    if (tok.type == Tok::Ident && tok.text == "f") return false;
    if (tok.type == Tok::Int) {
      const std::size_t ap = std::stoul(tok.text);
      if (ap >= aps_) throw ParseError("HOA: label uses undeclared AP " + tok.text);
      return (m_ >> ap) & 1u;
    }
    throw ParseError("HOA: unsupported label token '" + tok.text + "'");
  }

  const std::vector<Token>& t_;
  std::size_t m_;
  std::size_t aps_;
  std::size_t p_ = 0;
};

}  // namespace

std::string to_hoa(const BuchiAutomaton& a) {
  const Alphabet& sigma = a.alphabet();
  const std::size_t k = ap_count(sigma.size());
  std::ostringstream out;
  out << "HOA: v1\n";
  out << "States: " << a.num_states() << "\n";
  out << "Start: " << a.initial() << "\n";
  out << "AP: " << k;
  for (std::size_t i = 0; i < k; ++i) out << " \"p" << i << "\"";
  out << "\n";
  out << "omega-alphabet:";
  for (const auto& n : sigma.names()) out << " " << quote(n);
  out << "\n";
  out << "acc-name: Buchi\n";
  out << "Acceptance: 1 Inf(0)\n";
  out << "properties: trans-labels explicit-labels state-acc\n";
  out << "--BODY--\n";
  for (State q = 0; q < a.num_states(); ++q) {
    out << "State: " << q << " " << quote(a.state_name(q));
    if (a.is_accepting(q)) out << " {0}";
    out << "\n";
    for (std::size_t ti : a.outgoing(q)) {
      const auto& t = a.transitions()[ti];
      out << "[";
      for (std::size_t i = 0; i < k; ++i) {
        if (i) out << "&";
        if (!((t.symbol >> i) & 1u)) out << "!";
        out << i;
      }
      out << "] " << t.target << "\n";
    }
  }
  out << "--END--\n";
  return out.str();
}

BuchiAutomaton from_hoa(std::string_view text) {
  Lexer lex(text);
  Token tok = lex.next();
  if (tok.type != Tok::Header || tok.text != "HOA") throw ParseError("HOA: missing 'HOA:' header");
  std::optional<std::size_t> states;
  std::optional<State> start;
  std::size_t aps = 0;
  bool have_aps = false;
  std::vector<std::string> letters;
  bool acceptance_ok = false;

  while (tok.type != Tok::Body) {
    if (tok.type != Tok::Header) throw ParseError("HOA: expected a header, got '" + tok.text + "'");
    const std::string name = tok.text;
    std::vector<Token> values;
    for (tok = lex.next(); tok.type != Tok::Header && tok.type != Tok::Body; tok = lex.next()) {
      if (tok.type == Tok::Eof) throw ParseError("HOA: missing --BODY--");
      values.push_back(tok);
    }
    if (name == "HOA") {
      if (values.size() != 1 || values[0].text != "v1") throw ParseError("HOA: only version v1 is supported");
    } else if (name == "States") {
      if (values.size() != 1 || values[0].type != Tok::Int) throw ParseError("HOA: bad States header");
      states = std::stoul(values[0].text);
    } else if (name == "Start") {
      if (start) throw ParseError("HOA: only a single initial state is supported");
      if (values.size() != 1 || values[0].type != Tok::Int) throw ParseError("HOA: bad Start header");
      start = static_cast<State>(std::stoul(values[0].text));
    } else if (name == "AP") {
      if (values.empty() || values[0].type != Tok::Int) throw ParseError("HOA: bad AP header");
      aps = std::stoul(values[0].text);
      have_aps = true;
    } else if (name == "omega-alphabet") {
      for (const auto& v : values) {
        if (v.type != Tok::String) throw ParseError("HOA: omega-alphabet expects strings");
        letters.push_back(v.text);
      }
    } else if (name == "Acceptance") {
      std::string joined;
      for (const auto& v : values) joined += v.text;
      if (joined != "1Inf(0)") throw ParseError("HOA: only 'Acceptance: 1 Inf(0)' is supported");
      acceptance_ok = true;
    }
  }
  if (!states || !start || !have_aps || !acceptance_ok) throw ParseError("HOA: missing States, Start, AP or Acceptance");
  if (letters.empty()) {
    // Without letter names every minterm is a letter, named by its bits.
    for (std::size_t m = 0; m < (std::size_t{1} << aps); ++m) {
      std::string n;
      for (std::size_t i = 0; i < aps; ++i) n += ((m >> i) & 1u) ? '1' : '0';
      letters.push_back(n);
    }
  }
  if (letters.size() > (std::size_t{1} << aps)) throw ParseError("HOA: more letters than minterms");
  Alphabet alphabet(letters);

  std::vector<Transition> delta;
  std::vector<State> accepting;
  std::vector<std::string> names(*states);
  auto state_id = [&](const Token& t) {
    if (t.type != Tok::Int) throw ParseError("HOA: expected a state number");
    const std::size_t q = std::stoul(t.text);
    if (q >= *states) throw ParseError("HOA: state " + t.text + " out of range");
    return static_cast<State>(q);
  };

  tok = lex.next();
  while (tok.type != Tok::End) {
    if (tok.type != Tok::Header || tok.text != "State") throw ParseError("HOA: expected 'State:'");
    const State q = state_id(lex.next());
    names[q] = std::to_string(q);
    tok = lex.next();
    if (tok.type == Tok::String) {
      names[q] = tok.text;
      tok = lex.next();
    }
    if (tok.type == Tok::Punct && tok.text == "{") {
      for (tok = lex.next(); !(tok.type == Tok::Punct && tok.text == "}"); tok = lex.next()) {
        if (tok.type != Tok::Int || tok.text != "0") throw ParseError("HOA: unsupported acceptance set");
        accepting.push_back(q);
      }
      tok = lex.next();
    }
    while (tok.type == Tok::Punct && tok.text == "[") {
      std::vector<Token> label;
      for (tok = lex.next(); !(tok.type == Tok::Punct && tok.text == "]"); tok = lex.next()) {
        if (tok.type == Tok::Eof) throw ParseError("HOA: unterminated label");
        label.push_back(tok);
      }
      const State target = state_id(lex.next());
      tok = lex.next();
      if (tok.type == Tok::Punct && tok.text == "{") throw ParseError("HOA: transition-based acceptance is not supported");
      for (Symbol s = 0; s < alphabet.size(); ++s) {
        if (LabelEval(label, s, aps).run()) delta.push_back({q, s, target});
      }
    }
    if (tok.type == Tok::Eof) throw ParseError("HOA: missing --END--");
  }
  return BuchiAutomaton(std::move(alphabet), *states, *start, std::move(delta), std::move(accepting),
                        std::move(names));
}

}  // namespace omega
