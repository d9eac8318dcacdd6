#pragma once

// JSON instance and run-report documents, the seeded instance generator, and
// atomic file output.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bgnd/dynamics.hpp"
#include "bgnd/eval.hpp"
#include "bgnd/gametheory.hpp"
#include "bgnd/model.hpp"
#include "bgnd/oracle.hpp"

namespace bgnd {

using Json = nlohmann::json;

// Resources are sorted by id, so resource indices follow id order.
// Throws ParseError (with a JSON pointer) or ValidationError.
Instance parse_instance(const Json& document);
Instance parse_instance_text(const std::string& text);
Json instance_to_json(const Instance& instance);

struct ChosenStep {
  std::uint64_t round = 0;
  std::size_t agent = 0;
  double delta = 0.0;
  friend bool operator==(const ChosenStep&, const ChosenStep&) = default;
};

struct RunReport {
  OracleKind oracle = OracleKind::Auto;
  GameConstants constants;
  std::uint64_t rounds_executed = 0;
  std::uint64_t round_cap = 0;
  Termination termination = Termination::RoundCap;
  std::vector<ChosenStep> steps;
  std::optional<Diagnostics> initial_diagnostics;
  std::vector<Diagnostics> round_diagnostics;
  StrategyProfile strategies;
  std::optional<BcrReport> bcr;
};

RunReport make_report(const DynamicsTrace& trace, OracleKind oracle);

Json constants_to_json(const GameConstants& constants);
Json report_to_json(const Instance& instance, const RunReport& report);

// Strategy tables are checked for feasibility against `instance`.
RunReport parse_report(const Instance& instance, const Json& document);

// Canonical text form: sorted keys, two-space indent, trailing newline.
std::string to_canonical_text(const Json& document);

enum class RequestKind { Routing, SetConnectivity, Explicit };

RequestKind request_kind_from_string(const std::string& name);
const char* to_string(RequestKind kind);

struct GeneratorParams {
  std::uint64_t seed = 1;
  std::size_t agents = 3;
  std::size_t nodes = 6;
  double edge_density = 0.3;      // chance of each extra non-tree edge
  std::size_t max_edges = 12;
  std::size_t types_per_agent = 2;
  std::vector<double> alphas{2.0};  // one cost term per exponent
  double xi_min = 1.0;
  double xi_max = 1.0;
  RequestKind request_kind = RequestKind::Routing;
  bool directed = false;
  std::size_t explicit_resources = 6;
  std::size_t max_explicit_actions = 3;
};

// Deterministic in params.seed on every platform: draws come from the raw
// 64-bit output of std::mt19937_64, never from std distributions.
Instance generate_instance(const GeneratorParams& params);

std::string read_file(const std::string& path);

// Writes to a temporary sibling and renames it over `path`.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace bgnd
