#include "omega/reductions.hpp"

#include <algorithm>
#include <map>

namespace omega {

namespace {

Symbol state_symbol(const TuringMachine& m, TmState q) {
  return static_cast<Symbol>(m.tape_alphabet().size() + q);
}

Symbol hash_symbol(const TuringMachine& m) {
  return static_cast<Symbol>(m.tape_alphabet().size() + m.num_states());
}

}  // namespace

PcpRegInstance tm_to_pcpreg(const TuringMachine& m) {
  std::vector<std::string> names = m.tape_alphabet().names();
  names.insert(names.end(), m.state_names().begin(), m.state_names().end());
  names.push_back("#");
  Alphabet alphabet(std::move(names));

  const Symbol hash = hash_symbol(m);
  const Symbol blank = m.blank();
  auto q = [&](TmState s) { return state_symbol(m, s); };
  const auto gamma = static_cast<Symbol>(m.tape_alphabet().size());

  std::vector<Word> xs, ys;
  auto add = [&](Word x, Word y) {
    xs.push_back(std::move(x));
    ys.push_back(std::move(y));
  };
  add({hash}, {hash, q(m.initial()), hash});
  add({hash}, {hash});
  for (Symbol a = 0; a < gamma; ++a) add({a}, {a});
  for (const auto& r : m.rules()) {
    if (r.move == Move::Stay) add({q(r.state), r.read}, {q(r.next), r.write});
  }
  for (const auto& r : m.rules()) {
    if (r.move == Move::Right) add({q(r.state), r.read}, {r.write, q(r.next)});
  }
  for (const auto& r : m.rules()) {
    if (r.move != Move::Left) continue;
    for (Symbol c = 0; c < gamma; ++c) add({c, q(r.state), r.read}, {q(r.next), c, r.write});
  }
  for (const auto& r : m.rules()) {
    if (r.move == Move::Right && r.read == blank) add({q(r.state), hash}, {r.write, q(r.next), hash});
  }
  for (const auto& r : m.rules()) {
    if (r.move != Move::Left || r.read != blank) continue;
    for (Symbol c = 0; c < gamma; ++c) add({c, q(r.state), hash}, {q(r.next), c, r.write, hash});
  }
  for (const auto& r : m.rules()) {
    if (r.move == Move::Stay && r.read == blank) add({q(r.state), hash}, {q(r.next), r.write, hash});
  }

  const Symbol q0 = q(m.initial());
  std::vector<bool> in_e(ys.size());
  for (std::size_t i = 0; i < ys.size(); ++i) in_e[i] = std::find(ys[i].begin(), ys[i].end(), q0) != ys[i].end();

  // 0: nothing read yet, 1: last index outside E, 2: last index in E.
  std::vector<Transition> delta;
  delta.push_back({0, 0, in_e[0] ? 2u : 1u});
  for (State s : {1u, 2u}) {
    for (std::size_t i = 0; i < ys.size(); ++i) delta.push_back({s, static_cast<Symbol>(i), in_e[i] ? 2u : 1u});
  }
  BuchiAutomaton constraint(index_alphabet(xs.size()), 3, 0, std::move(delta), {2}, {"start", "wait", "hit"});
  return PcpRegInstance(std::move(alphabet), std::move(xs), std::move(ys), std::move(constraint));
}

std::vector<Symbol> tm_recurrence_indices(const TuringMachine& m, const PcpRegInstance& instance) {
  const Symbol q0 = state_symbol(m, m.initial());
  std::vector<Symbol> out;
  for (std::size_t i = 0; i < instance.size(); ++i) {
    const auto& y = instance.y_words()[i];
    if (std::find(y.begin(), y.end(), q0) != y.end()) out.push_back(static_cast<Symbol>(i));
  }
  return out;
}

Word encode_configuration(const TuringMachine& m, const TmConfiguration& c) {
  std::size_t end = c.tape.size();
  while (end > c.head && c.tape[end - 1] == m.blank()) --end;
  Word out(c.tape.begin(), c.tape.begin() + static_cast<std::ptrdiff_t>(c.head));
  out.push_back(state_symbol(m, c.state));
  out.insert(out.end(), c.tape.begin() + static_cast<std::ptrdiff_t>(c.head),
             c.tape.begin() + static_cast<std::ptrdiff_t>(end));
  return out;
}

ConfigurationLasso decode_pcp_solution(const TuringMachine& m, const LassoWord& sigma) {
  const PcpRegInstance instance = tm_to_pcpreg(m);
  check_lasso(instance.constraint().alphabet(), sigma);
  if (!verify_solution(instance, sigma)) throw PreconditionViolation("index word is not a solution of the encoded instance");

  const LassoWord spelled = concatenate_indices(instance.y_words(), sigma);
  const Symbol hash = hash_symbol(m);
  const auto gamma = static_cast<Symbol>(m.tape_alphabet().size());
  const Word& u = spelled.prefix();
  const Word& v = spelled.loop();

  auto parse_block = [&](const Word& block) {
    Word tape;
    std::optional<std::size_t> head;
    TmState state = 0;
    for (Symbol s : block) {
      if (s < gamma) {
        tape.push_back(s);
      } else if (s != hash) {
        if (head) throw MalformedSolution("configuration with two state symbols");
        head = tape.size();
        state = static_cast<TmState>(s - gamma);
      } else {
        throw MalformedSolution("unexpected separator inside a configuration");
      }
    }
    if (!head) throw MalformedSolution("configuration without a state symbol");
    return canonical_configuration(m, std::move(tape), *head, state);
  };
  auto split = [&](const Word& w, std::vector<TmConfiguration>& out) {
    // w starts with a separator; every separator opens one block.
    Word block;
    for (std::size_t i = 1; i <= w.size(); ++i) {
      if (i == w.size() || w[i] == hash) {
        out.push_back(parse_block(block));
        block.clear();
      } else {
        block.push_back(w[i]);
      }
    }
  };

  if (spelled.at(0) != hash) throw MalformedSolution("spelled word does not start with a separator");
  const auto loop_hash = std::find(v.begin(), v.end(), hash);
  if (loop_hash == v.end()) throw MalformedSolution("the periodic part spells a single infinite configuration");
  const std::size_t s = u.size() + static_cast<std::size_t>(loop_hash - v.begin());
  const Word stem_word = spelled.take(s);
  Word rotated(loop_hash, v.end());
  rotated.insert(rotated.end(), v.begin(), loop_hash);

  ConfigurationLasso run;
  if (!stem_word.empty()) split(stem_word, run.stem);
  split(rotated, run.cycle);
  if (!is_recurring_run(m, run)) throw MalformedSolution("decoded configurations do not form a legal recurring run");
  return run;
}

std::pair<BuchiTransducer, BuchiTransducer> pcp_to_transducer_pair(const PcpRegInstance& instance) {
  const BuchiAutomaton& a = instance.constraint();
  auto build = [&](const std::vector<Word>& words) {
    std::vector<TransducerTransition> delta;
    for (const auto& t : a.transitions()) delta.push_back({t.source, {t.symbol}, words[t.symbol], t.target});
    std::vector<std::string> names;
    for (State q = 0; q < a.num_states(); ++q) names.push_back(a.state_name(q));
    return BuchiTransducer(a.alphabet(), instance.alphabet(), a.num_states(), a.initial(), std::move(delta),
                           a.accepting(), std::move(names));
  };
  return {build(instance.x_words()), build(instance.y_words())};
}

namespace {

enum Kind { kStart, kX, kYpre, kYpost, kDX, kDY };

struct FKey {
  int kind;
  State q;
  int phase;
  auto operator<=>(const FKey&) const = default;
};

struct Step {
  Word input;
  Word output;
  FKey target;
};

// Shared builder for F and F'. Input symbol layout: optional d1..d3, then
// the n indices, then a, b.
class FunctionBuilder {
 public:
  FunctionBuilder(const PcpRegInstance& instance, FBranches branches, bool dblock, std::array<Word, 3> t,
                  std::array<Word, 3> w)
      : inst_(instance), branches_(branches), dblock_(dblock), t_(std::move(t)), w_(std::move(w)) {
    offset_ = dblock_ ? 3 : 0;
    a_ = offset_ + static_cast<Symbol>(instance.size());
    b_ = a_ + 1;
  }

  BuchiTransducer build(Alphabet input, Alphabet output) {
    const FKey start{kStart, 0, 0};
    id(start);
    std::vector<TransducerTransition> delta;
    std::vector<State> accepting;
    for (std::size_t i = 0; i < keys_.size(); ++i) {
      const FKey k = keys_[i];
      if ((k.kind == kX || k.kind == kYpost) && k.phase == 2) accepting.push_back(static_cast<State>(i));
      for (auto& mv : moves(k)) {
        const State target = id(mv.target);
        delta.push_back({static_cast<State>(i), std::move(mv.input), std::move(mv.output), target});
      }
    }
    return BuchiTransducer(std::move(input), std::move(output), keys_.size(), 0, std::move(delta),
                           std::move(accepting), names_);
  }

 private:
  State id(const FKey& k) {
    auto [it, fresh] = ids_.try_emplace(k, static_cast<State>(keys_.size()));
    if (fresh) {
      keys_.push_back(k);
      names_.push_back(name(k));
    }
    return it->second;
  }

  std::string name(const FKey& k) const {
    const std::string q = inst_.constraint().state_name(k.q);
    switch (k.kind) {
      case kStart: return "start";
      case kX: return "X(" + q + "," + std::to_string(k.phase) + ")";
      case kYpre: return "Ypre(" + q + ")";
      case kYpost: return "Ypost(" + q + "," + std::to_string(k.phase) + ")";
      case kDX: return "DX";
      default: return "DY";
    }
  }

  int next_phase(int phase, State target) const {
    if (phase == 1) return 1;
    return inst_.constraint().is_accepting(target) ? 1 : 0;
  }

  void index_moves(State q, int kind, int phase, const std::vector<Word>& words, std::vector<Step>& out) const {
    const auto& a = inst_.constraint();
    for (std::size_t ti : a.outgoing(q)) {
      const auto& t = a.transitions()[ti];
      const int p = kind == kYpre ? 0 : next_phase(phase, t.target);
      out.push_back({{offset_ + t.symbol}, words[t.symbol], {kind, t.target, p}});
    }
  }

  std::vector<Step> moves(const FKey& k) const {
    std::vector<Step> out;
    const State q0 = inst_.constraint().initial();
    auto append = [&](const FKey& other) {
      auto more = moves(other);
      out.insert(out.end(), more.begin(), more.end());
    };
    const bool want_x = branches_ != FBranches::YOnly;
    const bool want_y = branches_ != FBranches::XOnly;
    switch (k.kind) {
      case kStart:
        if (dblock_) {
          for (Symbol j = 0; j < 3; ++j) {
            if (want_x) out.push_back({{j}, t_[j], {kDX, 0, 0}});
            if (want_y) out.push_back({{j}, w_[j], {kDY, 0, 0}});
          }
        } else {
          if (want_x) append({kX, q0, 0});
          if (want_y) {
            append({kYpre, q0, 0});
            append({kYpost, q0, 0});
          }
        }
        break;
      case kDX:
        for (Symbol j = 0; j < 3; ++j) out.push_back({{j}, t_[j], {kDX, 0, 0}});
        append({kX, q0, 0});
        break;
      case kDY:
        for (Symbol j = 0; j < 3; ++j) out.push_back({{j}, w_[j], {kDY, 0, 0}});
        append({kYpre, q0, 0});
        append({kYpost, q0, 0});
        break;
      case kX:
        index_moves(k.q, kX, k.phase, inst_.x_words(), out);
        out.push_back({{a_}, {}, {kX, k.q, k.phase == 1 ? 2 : 0}});
        out.push_back({{b_}, {}, {kX, k.q, k.phase == 1 ? 1 : 0}});
        break;
      case kYpre:
        index_moves(k.q, kYpre, 0, inst_.y_words(), out);
        out.push_back({{a_}, {}, {kYpre, k.q, 0}});
        out.push_back({{a_}, {}, {kYpost, k.q, 0}});
        out.push_back({{b_}, {}, {kYpre, k.q, 0}});
        break;
      case kYpost:
        index_moves(k.q, kYpost, k.phase, inst_.y_words(), out);
        out.push_back({{b_}, {}, {kYpost, k.q, k.phase == 1 ? 2 : 0}});
        break;
    }
    return out;
  }

  const PcpRegInstance& inst_;
  FBranches branches_;
  bool dblock_;
  std::array<Word, 3> t_, w_;
  Symbol offset_ = 0, a_ = 0, b_ = 0;
  std::map<FKey, State> ids_;
  std::vector<FKey> keys_;
  std::vector<std::string> names_;
};

std::vector<std::string> function_input_names(const PcpRegInstance& instance, bool dblock) {
  std::vector<std::string> names;
  if (dblock) names = {"d1", "d2", "d3"};
  const Alphabet indices = index_alphabet(instance.size());
  names.insert(names.end(), indices.names().begin(), indices.names().end());
  names.push_back("a");
  names.push_back("b");
  return names;
}

std::string fresh_name(const Alphabet& taken, std::string name) {
  while (taken.find(name)) name += "'";
  return name;
}

}  // namespace

BuchiTransducer pcp_to_function_F(const PcpRegInstance& instance, FBranches branches) {
  FunctionBuilder b(instance, branches, false, {}, {});
  return b.build(Alphabet(function_input_names(instance, false)), instance.alphabet());
}

std::string pcp1_spell(const std::vector<int>& block, bool use_t) {
  const Pcp1Gadget g;
  std::string out;
  for (int j : block) out += use_t ? g.t.at(static_cast<std::size_t>(j)) : g.w.at(static_cast<std::size_t>(j));
  return out;
}

BuchiTransducer pcp_to_function_Fprime(const PcpRegInstance& instance) {
  std::vector<std::string> out_names = instance.alphabet().names();
  const std::string c = fresh_name(instance.alphabet(), "c");
  const std::string d = fresh_name(instance.alphabet(), "d");
  out_names.push_back(c);
  out_names.push_back(d);
  Alphabet output(std::move(out_names));
  const Symbol cs = output.at(c), ds = output.at(d);
  auto to_word = [&](const std::string& letters) {
    Word w;
    for (char ch : letters) w.push_back(ch == 'c' ? cs : ds);
    return w;
  };
  const Pcp1Gadget g;
  std::array<Word, 3> t{to_word(g.t[0]), to_word(g.t[1]), to_word(g.t[2])};
  std::array<Word, 3> w{to_word(g.w[0]), to_word(g.w[1]), to_word(g.w[2])};
  FunctionBuilder b(instance, FBranches::Both, true, std::move(t), std::move(w));
  return b.build(Alphabet(function_input_names(instance, true)), std::move(output));
}

}  // namespace omega
