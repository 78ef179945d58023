#include "omega/manifest.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace omega {

namespace {

[[noreturn]] void fail(const std::string& what) { throw SchemaError(what); }

void require_object(const Json& j, std::string_view what) {
  if (!j.is_object()) fail(std::string(what) + " must be an object");
}

void only_keys(const Json& j, std::initializer_list<std::string_view> allowed, std::string_view what) {
  require_object(j, what);
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      fail("unexpected key '" + key + "' in " + std::string(what));
    }
  }
}

const Json& field(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) fail(std::string("missing key '") + key + "'");
  return *it;
}

std::string get_string(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_string()) fail(std::string("'") + key + "' must be a string");
  return v.get<std::string>();
}

std::size_t get_count(const Json& v, std::string_view what) {
  if (!v.is_number_unsigned()) fail(std::string(what) + " must be a nonnegative integer");
  return v.get<std::size_t>();
}

std::vector<std::string> get_names(const Json& v, std::string_view what) {
  if (!v.is_array()) fail(std::string(what) + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& s : v) {
    if (!s.is_string()) fail(std::string(what) + " must be an array of strings");
    out.push_back(s.get<std::string>());
  }
  return out;
}

std::vector<std::size_t> get_counts(const Json& v, std::string_view what) {
  if (!v.is_array()) fail(std::string(what) + " must be an array of integers");
  std::vector<std::size_t> out;
  for (const auto& n : v) out.push_back(get_count(n, what));
  return out;
}

Json word_to_json(const Alphabet& alphabet, const Word& w) {
  Json out = Json::array();
  for (Symbol s : w) out.push_back(alphabet.name(s));
  return out;
}

Word word_from_json(const Alphabet& alphabet, const Json& v) {
  Word out;
  for (const auto& name : get_names(v, "word")) {
    auto s = alphabet.find(name);
    if (!s) fail("unknown symbol '" + name + "'");
    out.push_back(*s);
  }
  return out;
}

Json names_json(const std::vector<std::string>& names) {
  Json out = Json::array();
  for (const auto& n : names) out.push_back(n);
  return out;
}

std::vector<std::string> state_names_of(std::size_t n, auto&& name_of) {
  std::vector<std::string> out;
  for (State q = 0; q < n; ++q) out.push_back(name_of(q));
  return out;
}

// Domain constructors report violations through their own exceptions.
template <class F>
auto schema_guard(F&& f) {
  try {
    return f();
  } catch (const SchemaError&) {
    throw;
  } catch (const Error& e) {
    fail(e.what());
  } catch (const Json::exception& e) {
    fail(e.what());
  }
}

State state_index(const Json& v, std::size_t n) {
  const std::size_t q = get_count(v, "state");
  if (q >= n) fail("state index " + std::to_string(q) + " out of range");
  return static_cast<State>(q);
}

char move_letter(Move m) {
  switch (m) {
    case Move::Left: return 'L';
    case Move::Right: return 'R';
    default: return 'S';
  }
}

}  // namespace

std::string_view kind_name(ManifestKind kind) {
  switch (kind) {
    case ManifestKind::Automaton: return "automaton";
    case ManifestKind::Transducer: return "transducer";
    case ManifestKind::PcpInstance: return "pcp-instance";
    case ManifestKind::TuringMachine: return "turing-machine";
    case ManifestKind::Lasso: return "lasso";
    case ManifestKind::Verdict: return "verdict";
    default: return "witness";
  }
}

ManifestKind parse_kind(std::string_view name) {
  for (auto k : {ManifestKind::Automaton, ManifestKind::Transducer, ManifestKind::PcpInstance,
                 ManifestKind::TuringMachine, ManifestKind::Lasso, ManifestKind::Verdict, ManifestKind::Witness}) {
    if (kind_name(k) == name) return k;
  }
  fail("unknown manifest kind '" + std::string(name) + "'");
}

Json automaton_to_json(const BuchiAutomaton& a) {
  Json j;
  j["alphabet"] = names_json(a.alphabet().names());
  j["states"] = names_json(state_names_of(a.num_states(), [&](State q) { return a.state_name(q); }));
  j["initial"] = a.initial();
  j["accepting"] = a.accepting();
  Json delta = Json::array();
  for (const auto& t : a.transitions()) delta.push_back(Json::array({t.source, a.alphabet().name(t.symbol), t.target}));
  j["transitions"] = std::move(delta);
  return j;
}

BuchiAutomaton automaton_from_json(const Json& j) {
  return schema_guard([&] {
    only_keys(j, {"alphabet", "states", "initial", "accepting", "transitions"}, "automaton");
    Alphabet alphabet(get_names(field(j, "alphabet"), "alphabet"));
    auto names = get_names(field(j, "states"), "states");
    const std::size_t n = names.size();
    const State initial = state_index(field(j, "initial"), n);
    std::vector<State> accepting;
    for (auto q : get_counts(field(j, "accepting"), "accepting")) accepting.push_back(state_index(q, n));
    std::vector<Transition> delta;
    const Json& ts = field(j, "transitions");
    if (!ts.is_array()) fail("transitions must be an array");
    for (const auto& t : ts) {
      if (!t.is_array() || t.size() != 3 || !t[1].is_string()) fail("transition must be [source, symbol, target]");
      auto s = alphabet.find(t[1].get<std::string>());
      if (!s) fail("unknown symbol '" + t[1].get<std::string>() + "'");
      delta.push_back({state_index(t[0], n), *s, state_index(t[2], n)});
    }
    return BuchiAutomaton(std::move(alphabet), n, initial, std::move(delta), std::move(accepting), std::move(names));
  });
}

Json transducer_to_json(const BuchiTransducer& t) {
  Json j;
  j["input_alphabet"] = names_json(t.input_alphabet().names());
  j["output_alphabet"] = names_json(t.output_alphabet().names());
  j["states"] = names_json(state_names_of(t.num_states(), [&](State q) { return t.state_name(q); }));
  j["initial"] = t.initial();
  j["accepting"] = t.accepting();
  Json delta = Json::array();
  for (const auto& tr : t.transitions()) {
    delta.push_back(Json::array({tr.source, word_to_json(t.input_alphabet(), tr.input),
                                 word_to_json(t.output_alphabet(), tr.output), tr.target}));
  }
  j["transitions"] = std::move(delta);
  return j;
}

BuchiTransducer transducer_from_json(const Json& j) {
  return schema_guard([&] {
    only_keys(j, {"input_alphabet", "output_alphabet", "states", "initial", "accepting", "transitions"}, "transducer");
    Alphabet in(get_names(field(j, "input_alphabet"), "input_alphabet"));
    Alphabet out(get_names(field(j, "output_alphabet"), "output_alphabet"));
    auto names = get_names(field(j, "states"), "states");
    const std::size_t n = names.size();
    const State initial = state_index(field(j, "initial"), n);
    std::vector<State> accepting;
    for (auto q : get_counts(field(j, "accepting"), "accepting")) accepting.push_back(state_index(q, n));
    std::vector<TransducerTransition> delta;
    const Json& ts = field(j, "transitions");
    if (!ts.is_array()) fail("transitions must be an array");
    for (const auto& t : ts) {
      if (!t.is_array() || t.size() != 4) fail("transition must be [source, input, output, target]");
      delta.push_back({state_index(t[0], n), word_from_json(in, t[1]), word_from_json(out, t[2]), state_index(t[3], n)});
    }
    return BuchiTransducer(std::move(in), std::move(out), n, initial, std::move(delta), std::move(accepting),
                           std::move(names));
  });
}

Json pcp_instance_to_json(const PcpRegInstance& instance) {
  Json j;
  j["alphabet"] = names_json(instance.alphabet().names());
  Json xs = Json::array(), ys = Json::array();
  for (const auto& w : instance.x_words()) xs.push_back(word_to_json(instance.alphabet(), w));
  for (const auto& w : instance.y_words()) ys.push_back(word_to_json(instance.alphabet(), w));
  j["x"] = std::move(xs);
  j["y"] = std::move(ys);
  j["constraint"] = automaton_to_json(instance.constraint());
  return j;
}

PcpRegInstance pcp_instance_from_json(const Json& j) {
  return schema_guard([&] {
    only_keys(j, {"alphabet", "x", "y", "constraint"}, "pcp-instance");
    Alphabet alphabet(get_names(field(j, "alphabet"), "alphabet"));
    auto words = [&](const char* key) {
      const Json& v = field(j, key);
      if (!v.is_array()) fail(std::string(key) + " must be an array of words");
      std::vector<Word> out;
      for (const auto& w : v) out.push_back(word_from_json(alphabet, w));
      return out;
    };
    auto xs = words("x");
    auto ys = words("y");
    return PcpRegInstance(alphabet, std::move(xs), std::move(ys), automaton_from_json(field(j, "constraint")));
  });
}

Json turing_machine_to_json(const TuringMachine& m) {
  const Alphabet& g = m.tape_alphabet();
  Json j;
  j["states"] = names_json(m.state_names());
  j["tape_alphabet"] = names_json(g.names());
  Json input = Json::array();
  for (Symbol s : m.input_symbols()) input.push_back(g.name(s));
  j["input_alphabet"] = std::move(input);
  j["blank"] = g.name(m.blank());
  j["initial"] = m.state_names()[m.initial()];
  Json rules = Json::array();
  for (const auto& r : m.rules()) {
    rules.push_back(Json::array({m.state_names()[r.state], g.name(r.read), m.state_names()[r.next], g.name(r.write),
                                 std::string(1, move_letter(r.move))}));
  }
  j["rules"] = std::move(rules);
  return j;
}

TuringMachine turing_machine_from_json(const Json& j) {
  return schema_guard([&] {
    only_keys(j, {"states", "tape_alphabet", "input_alphabet", "blank", "initial", "rules"}, "turing-machine");
    auto states = get_names(field(j, "states"), "states");
    Alphabet tape(get_names(field(j, "tape_alphabet"), "tape_alphabet"));
    auto state = [&](const std::string& name) {
      auto it = std::find(states.begin(), states.end(), name);
      if (it == states.end()) fail("unknown state '" + name + "'");
      return static_cast<TmState>(it - states.begin());
    };
    auto symbol = [&](const std::string& name) {
      auto s = tape.find(name);
      if (!s) fail("unknown tape symbol '" + name + "'");
      return *s;
    };
    std::vector<Symbol> input;
    for (const auto& s : get_names(field(j, "input_alphabet"), "input_alphabet")) input.push_back(symbol(s));
    const Symbol blank = symbol(get_string(j, "blank"));
    const TmState initial = state(get_string(j, "initial"));
    std::vector<TmRule> rules;
    const Json& rs = field(j, "rules");
    if (!rs.is_array()) fail("rules must be an array");
    for (const auto& r : rs) {
      auto parts = get_names(r, "rule");
      if (parts.size() != 5) fail("rule must be [state, read, next, write, move]");
      Move mv;
      if (parts[4] == "L") mv = Move::Left;
      else if (parts[4] == "R") mv = Move::Right;
      else if (parts[4] == "S") mv = Move::Stay;
      else fail("move must be L, R or S");
      rules.push_back({state(parts[0]), symbol(parts[1]), state(parts[2]), symbol(parts[3]), mv});
    }
    return TuringMachine(std::move(states), std::move(tape), std::move(input), blank, initial, std::move(rules));
  });
}

Json lasso_to_json(const Alphabet& alphabet, const LassoWord& w) {
  Json j;
  j["alphabet"] = names_json(alphabet.names());
  j["prefix"] = word_to_json(alphabet, w.prefix());
  j["loop"] = word_to_json(alphabet, w.loop());
  return j;
}

std::pair<Alphabet, LassoWord> lasso_from_json(const Json& j) {
  return schema_guard([&] {
    only_keys(j, {"alphabet", "prefix", "loop"}, "lasso");
    Alphabet alphabet(get_names(field(j, "alphabet"), "alphabet"));
    Word prefix = word_from_json(alphabet, field(j, "prefix"));
    Word loop = word_from_json(alphabet, field(j, "loop"));
    LassoWord w(std::move(prefix), std::move(loop));
    return std::pair<Alphabet, LassoWord>(std::move(alphabet), std::move(w));
  });
}

Json verdict_to_json(const Alphabet& alphabet, const LassoWord& point, const ContinuityVerdict& v) {
  Json j;
  j["point"] = lasso_to_json(alphabet, point);
  j["kind"] = verdict_name(v.kind);
  j["depth_n"] = v.depth_n;
  j["k_max"] = v.k_max;
  Json evidence = Json::array();
  for (const auto& [n, k] : v.evidence) evidence.push_back(Json{{"n", n}, {"k", k}});
  j["evidence"] = std::move(evidence);
  Json witnesses = Json::array();
  for (const auto& w : v.witnesses) {
    witnesses.push_back(Json{{"k", w.k}, {"point", lasso_to_json(alphabet, w.point)}, {"l_pref", w.l_pref}});
  }
  j["witnesses"] = std::move(witnesses);
  return j;
}

ContinuityVerdict verdict_from_json(const Json& j) {
  return schema_guard([&] {
    only_keys(j, {"point", "kind", "depth_n", "k_max", "evidence", "witnesses"}, "verdict");
    ContinuityVerdict v;
    lasso_from_json(field(j, "point"));
    const std::string kind = get_string(j, "kind");
    if (kind == "ContinuousUpTo") v.kind = VerdictKind::ContinuousUpTo;
    else if (kind == "DiscontinuityEvidence") v.kind = VerdictKind::DiscontinuityEvidence;
    else if (kind == "Unknown") v.kind = VerdictKind::Unknown;
    else fail("unknown verdict kind '" + kind + "'");
    v.depth_n = get_count(field(j, "depth_n"), "depth_n");
    v.k_max = get_count(field(j, "k_max"), "k_max");
    const Json& ev = field(j, "evidence");
    if (!ev.is_array()) fail("evidence must be an array");
    for (const auto& e : ev) {
      only_keys(e, {"n", "k"}, "evidence entry");
      v.evidence[get_count(field(e, "n"), "n")] = get_count(field(e, "k"), "k");
    }
    const Json& ws = field(j, "witnesses");
    if (!ws.is_array()) fail("witnesses must be an array");
    for (const auto& w : ws) {
      only_keys(w, {"k", "point", "l_pref"}, "witness entry");
      v.witnesses.push_back({get_count(field(w, "k"), "k"), lasso_from_json(field(w, "point")).second,
                             get_count(field(w, "l_pref"), "l_pref")});
    }
    return v;
  });
}

Json pcp_solution_witness_to_json(const PcpRegInstance& instance, const LassoWord& sigma) {
  Json j;
  j["type"] = "pcp-solution";
  j["indices"] = lasso_to_json(instance.constraint().alphabet(), sigma);
  j["word"] = lasso_to_json(instance.alphabet(), concatenate_indices(instance.x_words(), sigma));
  return j;
}

Json relation_witness_to_json(const BuchiTransducer& t, const RationalRelationWitness& w) {
  Json j;
  j["type"] = "relation";
  j["input"] = lasso_to_json(t.input_alphabet(), w.input);
  j["output"] = lasso_to_json(t.output_alphabet(), w.output);
  j["stem"] = w.stem;
  j["cycle"] = w.cycle;
  return j;
}

Json nonfunctionality_witness_to_json(const BuchiTransducer& t, const NonfunctionalityWitness& w) {
  Json j;
  j["type"] = "nonfunctionality";
  j["input"] = lasso_to_json(t.input_alphabet(), w.input);
  j["output1"] = lasso_to_json(t.output_alphabet(), w.output1);
  j["output2"] = lasso_to_json(t.output_alphabet(), w.output2);
  return j;
}

Json common_witness_to_json(const BuchiTransducer& t, const CommonWitness& w) {
  Json j;
  j["type"] = "common";
  j["input"] = lasso_to_json(t.input_alphabet(), w.input);
  j["output"] = lasso_to_json(t.output_alphabet(), w.output);
  return j;
}

Json tm_run_witness_to_json(const TuringMachine& m, const ConfigurationLasso& run) {
  auto configs = [&](const std::vector<TmConfiguration>& cs) {
    Json out = Json::array();
    for (const auto& c : cs) out.push_back(format_configuration(m, c));
    return out;
  };
  Json j;
  j["type"] = "tm-run";
  j["stem"] = configs(run.stem);
  j["cycle"] = configs(run.cycle);
  return j;
}

namespace {

void validate_witness(const Json& j) {
  require_object(j, "witness");
  const std::string type = get_string(j, "type");
  if (type == "pcp-solution") {
    only_keys(j, {"type", "indices", "word"}, "pcp-solution witness");
    lasso_from_json(field(j, "indices"));
    lasso_from_json(field(j, "word"));
  } else if (type == "relation") {
    only_keys(j, {"type", "input", "output", "stem", "cycle"}, "relation witness");
    lasso_from_json(field(j, "input"));
    lasso_from_json(field(j, "output"));
    get_counts(field(j, "stem"), "stem");
    if (get_counts(field(j, "cycle"), "cycle").empty()) fail("relation witness cycle is empty");
  } else if (type == "nonfunctionality") {
    only_keys(j, {"type", "input", "output1", "output2"}, "nonfunctionality witness");
    for (const char* k : {"input", "output1", "output2"}) lasso_from_json(field(j, k));
  } else if (type == "common") {
    only_keys(j, {"type", "input", "output"}, "common witness");
    lasso_from_json(field(j, "input"));
    lasso_from_json(field(j, "output"));
  } else if (type == "tm-run") {
    only_keys(j, {"type", "stem", "cycle"}, "tm-run witness");
    get_names(field(j, "stem"), "stem");
    if (get_names(field(j, "cycle"), "cycle").empty()) fail("tm-run witness cycle is empty");
  } else {
    fail("unknown witness type '" + type + "'");
  }
}

}  // namespace

void validate_payload(ManifestKind kind, const Json& payload) {
  switch (kind) {
    case ManifestKind::Automaton: automaton_from_json(payload); break;
    case ManifestKind::Transducer: transducer_from_json(payload); break;
    case ManifestKind::PcpInstance: pcp_instance_from_json(payload); break;
    case ManifestKind::TuringMachine: turing_machine_from_json(payload); break;
    case ManifestKind::Lasso: lasso_from_json(payload); break;
    case ManifestKind::Verdict: verdict_from_json(payload); break;
    case ManifestKind::Witness: schema_guard([&] { validate_witness(payload); return 0; }); break;
  }
}

Manifest make_manifest(ManifestKind kind, Json payload, std::optional<Provenance> provenance) {
  Manifest m{kind, std::string(kManifestVersion), std::move(payload), std::move(provenance)};
  return m;
}

Manifest parse_manifest(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  return schema_guard([&] {
    only_keys(j, {"kind", "version", "payload", "provenance"}, "manifest");
    Manifest m{parse_kind(get_string(j, "kind")), get_string(j, "version"), field(j, "payload"), std::nullopt};
    if (m.version != kManifestVersion) fail("unsupported manifest version '" + m.version + "'");
    if (auto it = j.find("provenance"); it != j.end()) {
      only_keys(*it, {"source_sha256", "command"}, "provenance");
      m.provenance = Provenance{get_string(*it, "source_sha256"), get_string(*it, "command")};
      const std::string& h = m.provenance->source_sha256;
      if (h.size() != 64 || h.find_first_not_of("0123456789abcdef") != std::string::npos) {
        fail("provenance: source_sha256 must be 64 lowercase hex digits");
      }
    }
    validate_payload(m.kind, m.payload);
    return m;
  });
}

std::string serialize_manifest(const Manifest& m) {
  Json j;
  j["kind"] = std::string(kind_name(m.kind));
  j["version"] = m.version;
  j["payload"] = m.payload;
  if (m.provenance) j["provenance"] = Json{{"source_sha256", m.provenance->source_sha256}, {"command", m.provenance->command}};
  return j.dump(2) + "\n";
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  out << text;
}

Manifest read_manifest(const std::string& path) { return parse_manifest(read_text_file(path)); }

void write_manifest(const std::string& path, const Manifest& m) { write_text_file(path, serialize_manifest(m)); }

std::string sha256_hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 computation failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 0xf];
  }
  return out;
}

bool provenance_matches(const Manifest& m, std::string_view source) {
  return m.provenance && m.provenance->source_sha256 == sha256_hex(source);
}

}  // namespace omega
