#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>

#include "bgnd/bgnd.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct InstanceDeleter {
  void operator()(bgnd_instance* p) const { bgnd_instance_free(p); }
};
struct ReportDeleter {
  void operator()(bgnd_report* p) const { bgnd_report_free(p); }
};
using InstancePtr = std::unique_ptr<bgnd_instance, InstanceDeleter>;
using ReportPtr = std::unique_ptr<bgnd_report, ReportDeleter>;

std::string take(char* text) {
  std::string out = text ? text : "";
  bgnd_string_free(text);
  return out;
}

const char* kTwoEdges = R"({
  "resources": [{"id": "cheap", "terms": [{"xi": 1, "alpha": 2}]},
                {"id": "dear", "terms": [{"xi": 100, "alpha": 2}]}],
  "graph": {"nodes": 2, "directed": false,
            "edges": [{"from": 0, "to": 1, "resource": "cheap"}, {"from": 0, "to": 1, "resource": "dear"}]},
  "agents": [{"types": [{"kind": "routing", "source": 0, "target": 1}], "prior": [1]}]
})";

InstancePtr parse(const char* text) {
  bgnd_instance* raw = nullptr;
  REQUIRE(bgnd_instance_parse(text, &raw) == BGND_OK);
  return InstancePtr(raw);
}

InstancePtr generated(std::uint64_t seed, double alpha, bgnd_request_kind kind = BGND_REQUEST_ROUTING) {
  bgnd_generator_params params;
  bgnd_generator_params_init(&params);
  params.seed = seed;
  params.agents = 3;
  params.types_per_agent = 2;
  params.nodes = 5;
  params.max_edges = 8;
  params.alphas = &alpha;
  params.alpha_count = 1;
  params.request_kind = kind;
  bgnd_instance* raw = nullptr;
  REQUIRE(bgnd_instance_generate(&params, &raw) == BGND_OK);
  return InstancePtr(raw);
}

ReportPtr solve(const bgnd_instance* inst, bgnd_solve_options* options = nullptr) {
  bgnd_report* raw = nullptr;
  REQUIRE(bgnd_solve(inst, options, &raw) == BGND_OK);
  return ReportPtr(raw);
}

}  // namespace

TEST_CASE("status strings and argument checks") {
  CHECK(std::string(bgnd_status_string(BGND_OK)) == "ok");
  CHECK(std::string(bgnd_status_string(BGND_ERR_BOUND_VIOLATED)) == "theoretical bound violated");
  CHECK(std::string(bgnd_status_string(static_cast<bgnd_status>(999))) == "unknown status");

  bgnd_instance* raw = nullptr;
  CHECK(bgnd_instance_parse(nullptr, &raw) == BGND_ERR_INVALID_ARGUMENT);
  CHECK(std::string(bgnd_last_error()).find("null argument") != std::string::npos);
  CHECK(bgnd_solve(nullptr, nullptr, nullptr) == BGND_ERR_INVALID_ARGUMENT);
  CHECK(bgnd_instance_agent_count(nullptr) == 0);
  bgnd_instance_free(nullptr);
  bgnd_report_free(nullptr);
  bgnd_string_free(nullptr);
  bgnd_solve_options_init(nullptr);
  bgnd_generator_params_init(nullptr);
}

TEST_CASE("name lookups") {
  bgnd_oracle oracle;
  CHECK(bgnd_oracle_from_string("steiner", &oracle) == BGND_OK);
  CHECK(oracle == BGND_ORACLE_STEINER);
  CHECK(bgnd_oracle_from_string("shortest-path", &oracle) == BGND_OK);
  CHECK(oracle == BGND_ORACLE_SHORTEST_PATH);
  CHECK(bgnd_oracle_from_string("magic", &oracle) != BGND_OK);
  bgnd_request_kind kind;
  CHECK(bgnd_request_kind_from_string("set_connectivity", &kind) == BGND_OK);
  CHECK(kind == BGND_REQUEST_SET_CONNECTIVITY);
}

TEST_CASE("parse errors carry a message and a validation status") {
  bgnd_instance* raw = nullptr;
  CHECK(bgnd_instance_parse("{not json", &raw) == BGND_ERR_VALIDATION);
  CHECK(raw == nullptr);
  CHECK(std::string(bgnd_last_error()).size() > 0);

  json doc = json::parse(kTwoEdges);
  doc["agents"][0]["prior"] = {1.1};
  CHECK(bgnd_instance_parse(doc.dump().c_str(), &raw) == BGND_ERR_VALIDATION);
  CHECK(std::string(bgnd_last_error()).find("prior sums to 1.1") != std::string::npos);

  CHECK(bgnd_instance_load("/nonexistent/bgnd/instance.json", &raw) == BGND_ERR_IO);
  // a successful call clears the message
  auto inst = parse(kTwoEdges);
  CHECK(std::string(bgnd_last_error()).empty());
}

TEST_CASE("constants for alpha 2 with an exact oracle") {
  auto inst = parse(kTwoEdges);
  bgnd_constants c;
  REQUIRE(bgnd_constants_compute(inst.get(), BGND_ORACLE_AUTO, &c) == BGND_OK);
  CHECK(c.K == 2);
  CHECK(c.rho == 1.0);
  CHECK(c.mu == doctest::Approx(0.309).epsilon(1e-3));
  CHECK(c.lambda == doctest::Approx(1.809).epsilon(1e-3));
  CHECK(c.bcr_bound == doctest::Approx(10.47).epsilon(1e-3));
  // steiner on a routing request is not available
  CHECK(bgnd_constants_compute(inst.get(), BGND_ORACLE_STEINER, &c) != BGND_OK);
}

TEST_CASE("solve, serialize, reparse, evaluate") {
  auto inst = parse(kTwoEdges);
  CHECK(bgnd_instance_agent_count(inst.get()) == 1);
  CHECK(bgnd_instance_resource_count(inst.get()) == 2);
  auto report = solve(inst.get());

  bgnd_run_summary summary;
  REQUIRE(bgnd_report_summary(report.get(), &summary) == BGND_OK);
  CHECK(summary.converged == 1);
  CHECK(summary.updates == 0);
  CHECK(summary.rounds_executed == 1);

  char* text = nullptr;
  REQUIRE(bgnd_report_to_json(report.get(), &text) == BGND_OK);
  const std::string first = take(text);
  CHECK(json::parse(first)["strategies"][0][0] == json::array({"cheap"}));

  bgnd_report* again_raw = nullptr;
  REQUIRE(bgnd_report_parse(inst.get(), first.c_str(), &again_raw) == BGND_OK);
  ReportPtr again(again_raw);
  REQUIRE(bgnd_report_to_json(again.get(), &text) == BGND_OK);
  CHECK(take(text) == first);

  bgnd_evaluation ev;
  REQUIRE(bgnd_evaluate(inst.get(), report.get(), nullptr, 1, &ev) == BGND_OK);
  CHECK(ev.exact_cost == doctest::Approx(1.0));
  CHECK(ev.expected_opt == doctest::Approx(1.0));
  CHECK(ev.empirical_bcr == doctest::Approx(1.0));
  CHECK(ev.bound_holds == 1);
}

TEST_CASE("a report on the expensive edge violates the bound") {
  auto inst = parse(kTwoEdges);
  auto report = solve(inst.get());
  char* text = nullptr;
  REQUIRE(bgnd_report_to_json(report.get(), &text) == BGND_OK);
  json doc = json::parse(take(text));
  doc["strategies"][0][0] = {"dear"};
  bgnd_report* raw = nullptr;
  REQUIRE(bgnd_report_parse(inst.get(), doc.dump().c_str(), &raw) == BGND_OK);
  ReportPtr bad(raw);
  bgnd_evaluation ev;
  CHECK(bgnd_evaluate(inst.get(), bad.get(), nullptr, 1, &ev) == BGND_ERR_BOUND_VIOLATED);
  CHECK(ev.empirical_bcr == doctest::Approx(100.0));
  CHECK(ev.bound_holds == 0);
}

TEST_CASE("reports that do not fit the instance are rejected") {
  auto inst = parse(kTwoEdges);
  bgnd_report* raw = nullptr;
  CHECK(bgnd_report_parse(inst.get(), "{}", &raw) == BGND_ERR_VALIDATION);
  CHECK(bgnd_report_parse(inst.get(), "[1,", &raw) == BGND_ERR_VALIDATION);
  auto report = solve(inst.get());
  char* text = nullptr;
  REQUIRE(bgnd_report_to_json(report.get(), &text) == BGND_OK);
  json doc = json::parse(take(text));
  doc["strategies"][0][0] = {"nowhere"};
  CHECK(bgnd_report_parse(inst.get(), doc.dump().c_str(), &raw) == BGND_ERR_VALIDATION);
}

TEST_CASE("solve options") {
  auto inst = generated(5, 2.0);
  bgnd_solve_options options;
  bgnd_solve_options_init(&options);
  CHECK(options.rounds < 0);
  options.rounds = 0;
  auto report = solve(inst.get(), &options);
  bgnd_run_summary summary;
  REQUIRE(bgnd_report_summary(report.get(), &summary) == BGND_OK);
  CHECK(summary.rounds_executed == 0);
  CHECK(summary.round_cap == 0);

  options.oracle = BGND_ORACLE_STEINER;
  bgnd_report* raw = nullptr;
  CHECK(bgnd_solve(inst.get(), &options, &raw) == BGND_ERR_UNSUPPORTED);
  CHECK(raw == nullptr);
}

TEST_CASE("expected OPT json") {
  auto inst = parse(kTwoEdges);
  char* text = nullptr;
  REQUIRE(bgnd_expected_opt_json(inst.get(), nullptr, 1, &text) == BGND_OK);
  const json doc = json::parse(take(text));
  CHECK(doc["expected_opt"].get<double>() == doctest::Approx(1.0));
  REQUIRE(doc["profiles"].size() == 1);
  CHECK(doc["profiles"][0]["probability"].get<double>() == 1.0);

  auto big = generated(9, 2.0);
  bgnd_caps caps{1, 0};
  CHECK(bgnd_expected_opt_json(big.get(), &caps, 1, &text) == BGND_ERR_TOO_LARGE);
}

TEST_CASE("generated instances: files round-trip and solving is reproducible") {
  const fs::path dir = fs::temp_directory_path() / "bgnd_capi_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  for (auto kind : {BGND_REQUEST_ROUTING, BGND_REQUEST_SET_CONNECTIVITY, BGND_REQUEST_EXPLICIT}) {
    auto inst = generated(11, 2.5, kind);
    const std::string path = (dir / "inst.json").string();
    REQUIRE(bgnd_instance_write(inst.get(), path.c_str()) == BGND_OK);
    bgnd_instance* raw = nullptr;
    REQUIRE(bgnd_instance_load(path.c_str(), &raw) == BGND_OK);
    InstancePtr loaded(raw);
    char* a = nullptr;
    char* b = nullptr;
    REQUIRE(bgnd_instance_to_json(inst.get(), &a) == BGND_OK);
    REQUIRE(bgnd_instance_to_json(loaded.get(), &b) == BGND_OK);
    CHECK(take(a) == take(b));

    auto r1 = solve(loaded.get());
    auto r2 = solve(loaded.get());
    const std::string rep = (dir / "rep.json").string();
    REQUIRE(bgnd_report_write(r1.get(), rep.c_str()) == BGND_OK);
    bgnd_report* rraw = nullptr;
    REQUIRE(bgnd_report_load(loaded.get(), rep.c_str(), &rraw) == BGND_OK);
    ReportPtr r3(rraw);
    REQUIRE(bgnd_report_to_json(r2.get(), &a) == BGND_OK);
    REQUIRE(bgnd_report_to_json(r3.get(), &b) == BGND_OK);
    CHECK(take(a) == take(b));

    bgnd_evaluation ev;
    CHECK(bgnd_evaluate(loaded.get(), r1.get(), nullptr, 2, &ev) == BGND_OK);
    CHECK(ev.empirical_bcr >= 1.0 - 1e-12);
  }
  bgnd_report* raw = nullptr;
  auto inst = parse(kTwoEdges);
  CHECK(bgnd_report_load(inst.get(), (dir / "missing.json").string().c_str(), &raw) == BGND_ERR_IO);
  fs::remove_all(dir);
}
