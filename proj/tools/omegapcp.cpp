// omegapcp: reductions, searches, verification and continuity probing over
// JSON manifests.
//
// Exit codes: 0 success / positive answer, 1 negative answer, 2 usage,
// parse, schema or domain error, 3 inconclusive.

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

#include "omega/continuity.hpp"
#include "omega/hoa.hpp"
#include "omega/manifest.hpp"
#include "omega/reductions.hpp"

using namespace omega;

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kError = 2;
constexpr int kUnknown = 3;

struct Globals {
  std::uint64_t seed = 0;
  std::size_t budget = 1'000'000;
  std::string format = "text";
  std::string command;  // recorded in provenance
};

class KindMismatch : public Error {
 public:
  using Error::Error;
};

struct Loaded {
  Manifest manifest;
  std::string text;
};

Loaded load(const std::string& path, ManifestKind expected) {
  std::string text = read_text_file(path);
  Manifest m = parse_manifest(text);
  if (m.kind != expected) {
    throw KindMismatch("'" + path + "' is a " + std::string(kind_name(m.kind)) + " manifest, expected " +
                       std::string(kind_name(expected)));
  }
  return {std::move(m), std::move(text)};
}

Provenance provenance_for(const Globals& g, const std::string& source_text) {
  return {sha256_hex(source_text), g.command};
}

void emit(const Globals& g, const std::string& out_path, const Manifest& m) {
  if (!out_path.empty()) {
    write_manifest(out_path, m);
  } else if (g.format == "json") {
    std::cout << serialize_manifest(m);
  }
}

std::string strip_json(std::string path) {
  if (path.size() > 5 && path.substr(path.size() - 5) == ".json") path.resize(path.size() - 5);
  return path;
}

int cmd_reduce(const Globals& g, const std::string& source, const std::string& target, const std::string& out) {
  const std::string text = read_text_file(source);
  const Manifest src = parse_manifest(text);
  const Provenance prov = provenance_for(g, text);
  auto need = [&](ManifestKind k) {
    if (src.kind != k) {
      throw KindMismatch("target '" + target + "' needs a " + std::string(kind_name(k)) + " manifest, got " +
                         std::string(kind_name(src.kind)));
    }
  };
  if (target == "pcp") {
    need(ManifestKind::TuringMachine);
    const auto instance = tm_to_pcpreg(turing_machine_from_json(src.payload));
    const Manifest m = make_manifest(ManifestKind::PcpInstance, pcp_instance_to_json(instance), prov);
    if (out.empty()) std::cout << serialize_manifest(m);
    else write_manifest(out, m);
    return kOk;
  }
  need(ManifestKind::PcpInstance);
  const auto instance = pcp_instance_from_json(src.payload);
  if (target == "transducers") {
    if (out.empty()) throw InvalidArgument("--out is required for --target transducers");
    auto [t1, t2] = pcp_to_transducer_pair(instance);
    const std::string stem = strip_json(out);
    write_manifest(stem + "_t1.json", make_manifest(ManifestKind::Transducer, transducer_to_json(t1), prov));
    write_manifest(stem + "_t2.json", make_manifest(ManifestKind::Transducer, transducer_to_json(t2), prov));
    std::cout << "wrote " << stem << "_t1.json " << stem << "_t2.json\n";
    return kOk;
  }
  const BuchiTransducer t = target == "f" ? pcp_to_function_F(instance) : pcp_to_function_Fprime(instance);
  const Manifest m = make_manifest(ManifestKind::Transducer, transducer_to_json(t), prov);
  if (out.empty()) std::cout << serialize_manifest(m);
  else write_manifest(out, m);
  return kOk;
}

int cmd_search(const Globals& g, const std::string& path, std::size_t bound, const std::string& out) {
  const auto [m, text] = load(path, ManifestKind::PcpInstance);
  const auto instance = pcp_instance_from_json(m.payload);
  const auto result = search_lasso_solution(instance, bound, g.budget);
  if (!result.solution) {
    std::cout << "no lasso solution within bound, bound-hit=" << result.bound_hits;
    if (result.truncated) std::cout << " (node budget exhausted)";
    std::cout << "\n";
    return kNegative;
  }
  const Alphabet& idx = instance.constraint().alphabet();
  if (g.format == "text" || !out.empty()) {
    std::cout << format_lasso(idx, *result.solution) << "\n";
    std::cout << "word " << format_lasso(instance.alphabet(), concatenate_indices(instance.x_words(), *result.solution))
              << "\n";
  }
  emit(g, out, make_manifest(ManifestKind::Witness, pcp_solution_witness_to_json(instance, *result.solution),
                             provenance_for(g, text)));
  return kOk;
}

int cmd_verify(const std::string& path, const std::string& sigma_text) {
  const auto [m, text] = load(path, ManifestKind::PcpInstance);
  const auto instance = pcp_instance_from_json(m.payload);
  const LassoWord sigma = parse_lasso(instance.constraint().alphabet(), sigma_text);
  bool ok = true;
  if (!nba_accepts_lasso(instance.constraint(), sigma)) {
    std::cout << "constraint rejected " << sigma_text << "\n";
    ok = false;
  }
  const auto l = prefix_distance_exponent(concatenate_indices(instance.x_words(), sigma),
                                          concatenate_indices(instance.y_words(), sigma));
  if (l) {
    std::cout << "word equality failed at position " << *l << "\n";
    ok = false;
  }
  if (ok) std::cout << "solution verified\n";
  return ok ? kOk : kNegative;
}

void print_verdict(const BuchiTransducer& t, const ContinuityVerdict& v) {
  std::cout << verdict_name(v.kind) << "(" << v.depth_n << ")\n";
  if (!v.evidence.empty()) {
    std::cout << "  n  k\n";
    for (const auto& [n, k] : v.evidence) std::cout << "  " << n << "  " << k << "\n";
  }
  if (v.kind == VerdictKind::Unknown) std::cout << "  no k <= " << v.k_max << " certifies n=" << v.depth_n << "\n";
  for (const auto& w : v.witnesses) {
    std::cout << "  k=" << w.k << " point " << format_lasso(t.input_alphabet(), w.point) << " l_pref=" << w.l_pref
              << "\n";
  }
}

int cmd_probe(const Globals& g, const std::string& path, const std::string& point, std::size_t n, std::size_t kmax,
              bool witnesses, const std::string& out) {
  const auto [m, text] = load(path, ManifestKind::Transducer);
  const auto t = transducer_from_json(m.payload);
  const LassoWord x = parse_lasso(t.input_alphabet(), point);
  WitnessGenerator gen;
  if (witnesses) gen = branch_flip_generator(t);
  const auto v = continuity_probe(t, x, n, kmax, gen);
  if (g.format == "text" || !out.empty()) print_verdict(t, v);
  emit(g, out, make_manifest(ManifestKind::Verdict, verdict_to_json(t.input_alphabet(), x, v), provenance_for(g, text)));
  switch (v.kind) {
    case VerdictKind::ContinuousUpTo: return kOk;
    case VerdictKind::DiscontinuityEvidence: return kNegative;
    default: return kUnknown;
  }
}

int cmd_tm_search(const Globals& g, const std::string& path, std::size_t config_bound, const std::string& out) {
  const auto [m, text] = load(path, ManifestKind::TuringMachine);
  const auto tm = turing_machine_from_json(m.payload);
  const auto r = tm_recurring_search(tm, config_bound, g.budget);
  if (!r.run) {
    std::cout << "no recurring computation within bound, configurations=" << r.configurations
              << " bound-hit=" << r.bound_hits << (r.budget_exhausted ? " (budget exhausted)" : "") << "\n";
    return kNegative;
  }
  if (g.format == "text" || !out.empty()) {
    for (const auto& c : r.run->stem) std::cout << "stem  " << format_configuration(tm, c) << "\n";
    for (const auto& c : r.run->cycle) std::cout << "cycle " << format_configuration(tm, c) << "\n";
  }
  emit(g, out, make_manifest(ManifestKind::Witness, tm_run_witness_to_json(tm, *r.run), provenance_for(g, text)));
  return kOk;
}

int cmd_nba_empty(const Globals& g, const std::string& path) {
  const auto [m, text] = load(path, ManifestKind::Automaton);
  const auto a = automaton_from_json(m.payload);
  const auto w = nba_is_empty(a);
  if (!w) {
    std::cout << "empty\n";
    return kNegative;
  }
  if (g.format == "json") {
    std::cout << serialize_manifest(make_manifest(ManifestKind::Lasso, lasso_to_json(a.alphabet(), *w),
                                                  provenance_for(g, text)));
  } else {
    std::cout << "nonempty, witness " << format_lasso(a.alphabet(), *w) << "\n";
  }
  return kOk;
}

int cmd_nba_accepts(const std::string& path, const std::string& word) {
  const auto [m, text] = load(path, ManifestKind::Automaton);
  const auto a = automaton_from_json(m.payload);
  const bool yes = nba_accepts_lasso(a, parse_lasso(a.alphabet(), word));
  std::cout << (yes ? "accepted" : "rejected") << "\n";
  return yes ? kOk : kNegative;
}

int cmd_nba_export(const std::string& path, const std::string& out) {
  const auto [m, text] = load(path, ManifestKind::Automaton);
  const std::string hoa = to_hoa(automaton_from_json(m.payload));
  if (out.empty()) std::cout << hoa;
  else write_text_file(out, hoa);
  return kOk;
}

int cmd_nba_import(const Globals& g, const std::string& path, const std::string& out) {
  const std::string text = read_text_file(path);
  const Manifest m = make_manifest(ManifestKind::Automaton, automaton_to_json(from_hoa(text)), provenance_for(g, text));
  if (out.empty()) std::cout << serialize_manifest(m);
  else write_manifest(out, m);
  return kOk;
}

int cmd_apply(const Globals& g, const std::string& path, const std::string& point) {
  const auto [m, text] = load(path, ManifestKind::Transducer);
  const auto t = transducer_from_json(m.payload);
  const auto w = evaluate_lasso(t, parse_lasso(t.input_alphabet(), point));
  if (g.format == "json") {
    std::cout << serialize_manifest(
        make_manifest(ManifestKind::Witness, relation_witness_to_json(t, w), provenance_for(g, text)));
  } else {
    std::cout << format_lasso(t.output_alphabet(), w.output) << "\n";
  }
  return kOk;
}

int cmd_intersect(const Globals& g, const std::string& p1, const std::string& p2, std::size_t bound) {
  const auto t1 = transducer_from_json(load(p1, ManifestKind::Transducer).manifest.payload);
  const auto t2 = transducer_from_json(load(p2, ManifestKind::Transducer).manifest.payload);
  PairSearchStats stats;
  const auto w = intersection_witness_search(t1, t2, bound, &stats, g.budget);
  if (!w) {
    std::cout << "no common witness within bound, bound-hit=" << stats.bound_hits << "\n";
    return kNegative;
  }
  if (g.format == "json") {
    std::cout << serialize_manifest(make_manifest(ManifestKind::Witness, common_witness_to_json(t1, *w)));
  } else {
    std::cout << format_lasso(t1.input_alphabet(), w->input) << " -> " << format_lasso(t1.output_alphabet(), w->output)
              << "\n";
  }
  return kOk;
}

int cmd_nonfunc(const Globals& g, const std::string& path, std::size_t bound) {
  const auto t = transducer_from_json(load(path, ManifestKind::Transducer).manifest.payload);
  PairSearchStats stats;
  const auto w = nonfunctionality_search(t, bound, &stats, g.budget);
  if (!w) {
    std::cout << "no counterexample within bound, bound-hit=" << stats.bound_hits << "\n";
    return kNegative;
  }
  if (g.format == "json") {
    std::cout << serialize_manifest(make_manifest(ManifestKind::Witness, nonfunctionality_witness_to_json(t, *w)));
  } else {
    std::cout << format_lasso(t.input_alphabet(), w->input) << " -> " << format_lasso(t.output_alphabet(), w->output1)
              << " | " << format_lasso(t.output_alphabet(), w->output2) << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"omegapcp: ω-automata, ω-PCP(Reg) reductions and continuity probing"};
  app.require_subcommand(1);
  Globals g;
  for (int i = 0; i < argc; ++i) {
    if (i) g.command += " ";
    g.command += i == 0 ? std::string("omegapcp") : std::string(argv[i]);
  }
  app.add_option("--seed", g.seed, "Seed for randomized helpers")->capture_default_str();
  app.add_option("--budget", g.budget, "Node/step budget for searches")->capture_default_str();
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();

  std::function<int()> action;
  std::string out;

  auto* reduce = app.add_subcommand("reduce", "Run one of the reductions");
  std::string source, target;
  reduce->add_option("source", source, "Input manifest")->required();
  reduce->add_option("--target", target, "pcp | transducers | f | fprime")
      ->required()
      ->check(CLI::IsMember({"pcp", "transducers", "f", "fprime"}));
  reduce->add_option("--out", out, "Output manifest (file stem for transducers)");
  reduce->callback([&] { action = [&] { return cmd_reduce(g, source, target, out); }; });

  auto* search = app.add_subcommand("search", "Search for an ultimately periodic solution");
  std::string instance;
  std::size_t bound = 8;
  search->add_option("instance", instance, "pcp-instance manifest")->required();
  search->add_option("--overhang-bound,-B", bound, "Overhang bound")->capture_default_str();
  search->add_option("--out", out, "Witness manifest");
  search->callback([&] { action = [&] { return cmd_search(g, instance, bound, out); }; });

  auto* verify = app.add_subcommand("verify", "Check a candidate solution");
  std::string sigma;
  verify->add_option("instance", instance, "pcp-instance manifest")->required();
  verify->add_option("sigma", sigma, "Index lasso, e.g. 1(2)")->required();
  verify->callback([&] { action = [&] { return cmd_verify(instance, sigma); }; });

  auto* probe = app.add_subcommand("probe", "Bounded continuity probe at a point");
  std::string transducer, point;
  std::size_t n_max = 4, k_max = 16;
  bool witnesses = false;
  probe->add_option("transducer", transducer, "Transducer manifest")->required();
  probe->add_option("point", point, "Input lasso")->required();
  probe->add_option("--N", n_max, "Largest n to certify")->capture_default_str();
  probe->add_option("--kmax", k_max, "Largest k to try")->capture_default_str();
  probe->add_flag("--witness", witnesses, "Try branch-flip discontinuity witnesses");
  probe->add_option("--out", out, "Verdict manifest");
  probe->callback([&] { action = [&] { return cmd_probe(g, transducer, point, n_max, k_max, witnesses, out); }; });

  auto* tm_search = app.add_subcommand("tm-search", "Search for a computation re-entering q0 infinitely often");
  std::string machine;
  std::size_t config_bound = 8;
  tm_search->add_option("machine", machine, "turing-machine manifest")->required();
  tm_search->add_option("--config-bound", config_bound, "Tape length bound")->capture_default_str();
  tm_search->add_option("--out", out, "Witness manifest");
  tm_search->callback([&] { action = [&] { return cmd_tm_search(g, machine, config_bound, out); }; });

  auto* nba = app.add_subcommand("nba", "Büchi automaton utilities");
  nba->require_subcommand(1);
  std::string automaton, word;
  auto* empty = nba->add_subcommand("empty", "Emptiness check with witness");
  empty->add_option("automaton", automaton)->required();
  empty->callback([&] { action = [&] { return cmd_nba_empty(g, automaton); }; });
  auto* accepts = nba->add_subcommand("accepts", "Lasso membership");
  accepts->add_option("automaton", automaton)->required();
  accepts->add_option("word", word, "Lasso, e.g. a(b)")->required();
  accepts->callback([&] { action = [&] { return cmd_nba_accepts(automaton, word); }; });
  auto* export_hoa = nba->add_subcommand("export-hoa", "Write the automaton in HOA format");
  export_hoa->add_option("automaton", automaton)->required();
  export_hoa->add_option("--out", out);
  export_hoa->callback([&] { action = [&] { return cmd_nba_export(automaton, out); }; });
  auto* import_hoa = nba->add_subcommand("import-hoa", "Read a HOA file into an automaton manifest");
  import_hoa->add_option("file", automaton)->required();
  import_hoa->add_option("--out", out);
  import_hoa->callback([&] { action = [&] { return cmd_nba_import(g, automaton, out); }; });

  auto* apply = app.add_subcommand("apply", "Evaluate a functional transducer at a lasso point");
  apply->add_option("transducer", transducer)->required();
  apply->add_option("point", point)->required();
  apply->callback([&] { action = [&] { return cmd_apply(g, transducer, point); }; });

  auto* intersect = app.add_subcommand("intersect", "Bounded search for a pair in both relations");
  std::string second;
  intersect->add_option("t1", transducer)->required();
  intersect->add_option("t2", second)->required();
  intersect->add_option("--bound", bound, "Output lag bound")->capture_default_str();
  intersect->callback([&] { action = [&] { return cmd_intersect(g, transducer, second, bound); }; });

  auto* nonfunc = app.add_subcommand("nonfunc", "Bounded search for a functionality counterexample");
  nonfunc->add_option("transducer", transducer)->required();
  nonfunc->add_option("--bound", bound, "Output lag bound")->capture_default_str();
  nonfunc->callback([&] { action = [&] { return cmd_nonfunc(g, transducer, bound); }; });

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();
  for (auto* sub : nba->get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kError;
  }

  try {
    return action();
  } catch (const NotInDomain& e) {
    std::cerr << "error: point not in domain: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kError;
}
