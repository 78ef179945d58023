#pragma once

// Versioned JSON manifests for every serializable object, with optional
// provenance (SHA-256 of the source file and the producing command).

#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include <json.hpp>

#include "omega/buchi.hpp"
#include "omega/continuity.hpp"
#include "omega/pcp.hpp"
#include "omega/transducer.hpp"
#include "omega/turing.hpp"

namespace omega {

using Json = nlohmann::ordered_json;

class SchemaError : public ParseError {
 public:
  using ParseError::ParseError;
};

inline constexpr std::string_view kManifestVersion = "1";

enum class ManifestKind { Automaton, Transducer, PcpInstance, TuringMachine, Lasso, Verdict, Witness };

std::string_view kind_name(ManifestKind kind);
ManifestKind parse_kind(std::string_view name);

struct Provenance {
  std::string source_sha256;
  std::string command;
};

struct Manifest {
  ManifestKind kind;
  std::string version{kManifestVersion};
  Json payload;
  std::optional<Provenance> provenance;
};

/// Parses and validates a manifest document; throws ParseError on malformed
/// JSON and SchemaError when the envelope or the payload does not match its
/// kind.
Manifest parse_manifest(std::string_view text);
std::string serialize_manifest(const Manifest& m);
void validate_payload(ManifestKind kind, const Json& payload);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
Manifest read_manifest(const std::string& path);
void write_manifest(const std::string& path, const Manifest& m);

std::string sha256_hex(std::string_view bytes);

/// True when the manifest carries provenance whose hash matches `source`.
bool provenance_matches(const Manifest& m, std::string_view source);

// Typed payload conversions. Every *_from_json throws SchemaError.

Json automaton_to_json(const BuchiAutomaton& a);
BuchiAutomaton automaton_from_json(const Json& j);

Json transducer_to_json(const BuchiTransducer& t);
BuchiTransducer transducer_from_json(const Json& j);

Json pcp_instance_to_json(const PcpRegInstance& instance);
PcpRegInstance pcp_instance_from_json(const Json& j);

Json turing_machine_to_json(const TuringMachine& m);
TuringMachine turing_machine_from_json(const Json& j);

Json lasso_to_json(const Alphabet& alphabet, const LassoWord& w);
std::pair<Alphabet, LassoWord> lasso_from_json(const Json& j);

/// Verdict record for a probe of `point` (over `alphabet`).
Json verdict_to_json(const Alphabet& alphabet, const LassoWord& point, const ContinuityVerdict& v);
ContinuityVerdict verdict_from_json(const Json& j);

// Witness payloads carry a "type" discriminator.
Json pcp_solution_witness_to_json(const PcpRegInstance& instance, const LassoWord& sigma);
Json relation_witness_to_json(const BuchiTransducer& t, const RationalRelationWitness& w);
Json nonfunctionality_witness_to_json(const BuchiTransducer& t, const NonfunctionalityWitness& w);
Json common_witness_to_json(const BuchiTransducer& t, const CommonWitness& w);
Json tm_run_witness_to_json(const TuringMachine& m, const ConfigurationLasso& run);

Manifest make_manifest(ManifestKind kind, Json payload, std::optional<Provenance> provenance = std::nullopt);

}  // namespace omega
