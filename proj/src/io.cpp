#include "bgnd/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <unistd.h>

#include "bgnd/error.hpp"

namespace bgnd {

namespace {

// Typed access into a JSON document that reports failures as JSON pointers.
class Cursor {
public:
  Cursor(const Json& node, std::string path) : node_(node), path_(std::move(path)) {}

  const Json& node() const { return node_; }
  const std::string& path() const { return path_; }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(path_.empty() ? "/" : path_, what); }

  Cursor field(const char* key) const {
    expect_object();
    auto it = node_.find(key);
    if (it == node_.end()) throw ParseError(path_ + "/" + key, "missing required field");
    return {*it, path_ + "/" + key};
  }

  std::optional<Cursor> optional_field(const char* key) const {
    expect_object();
    auto it = node_.find(key);
    if (it == node_.end() || it->is_null()) return std::nullopt;
    return Cursor{*it, path_ + "/" + key};
  }

  Cursor at(std::size_t k) const { return {node_[k], path_ + "/" + std::to_string(k)}; }

  void expect_object() const {
    if (!node_.is_object()) fail("expected an object");
  }

  std::size_t array_size() const {
    if (!node_.is_array()) fail("expected an array");
    return node_.size();
  }

  double number() const {
    if (!node_.is_number()) fail("expected a number");
    return node_.get<double>();
  }

  std::uint64_t count() const {
    if (!node_.is_number_unsigned() && !(node_.is_number_integer() && node_.get<std::int64_t>() >= 0))
      fail("expected a nonnegative integer");
    return node_.get<std::uint64_t>();
  }

  bool boolean() const {
    if (!node_.is_boolean()) fail("expected a boolean");
    return node_.get<bool>();
  }

  std::string string() const {
    if (!node_.is_string()) fail("expected a string");
    return node_.get<std::string>();
  }

private:
  const Json& node_;
  std::string path_;
};

using IdIndex = std::map<std::string, ResourceIndex>;

// Resolves resource ids, recording unknown ones as violations.
Action parse_action(const Cursor& cursor, const IdIndex& ids, std::vector<std::string>& violations) {
  std::vector<ResourceIndex> out;
  const std::size_t n = cursor.array_size();
  for (std::size_t k = 0; k < n; ++k) {
    const auto id = cursor.at(k).string();
    auto it = ids.find(id);
    if (it == ids.end())
      violations.push_back(cursor.at(k).path() + ": unknown resource id '" + id + "'");
    else
      out.push_back(it->second);
  }
  return Action(std::move(out));
}

Request parse_request(const Cursor& cursor, const IdIndex& ids, std::vector<std::string>& violations) {
  const auto kind_cursor = cursor.field("kind");
  const auto kind = kind_cursor.string();
  if (kind == "routing") {
    return RoutingRequest{cursor.field("source").count(), cursor.field("target").count()};
  }
  if (kind == "set_connectivity") {
    const auto terminals = cursor.field("terminals");
    SetConnectivityRequest req;
    for (std::size_t k = 0; k < terminals.array_size(); ++k) req.terminals.push_back(terminals.at(k).count());
    return req;
  }
  if (kind == "explicit") {
    const auto actions = cursor.field("actions");
    ExplicitRequest req;
    for (std::size_t k = 0; k < actions.array_size(); ++k)
      req.actions.push_back(parse_action(actions.at(k), ids, violations));
    return req;
  }
  kind_cursor.fail("unknown request kind '" + kind + "'");
}

Json action_to_json(const Instance& instance, const Action& action) {
  Json out = Json::array();
  for (ResourceIndex e : action) out.push_back(instance.resources[e].id);
  return out;
}

Json request_to_json(const Instance& instance, const Request& request) {
  return std::visit(
      [&](const auto& req) -> Json {
        using T = std::decay_t<decltype(req)>;
        if constexpr (std::is_same_v<T, RoutingRequest>) {
          return {{"kind", "routing"}, {"source", req.source}, {"target", req.target}};
        } else if constexpr (std::is_same_v<T, SetConnectivityRequest>) {
          return {{"kind", "set_connectivity"}, {"terminals", req.terminals}};
        } else {
          Json actions = Json::array();
          for (const auto& action : req.actions) actions.push_back(action_to_json(instance, action));
          return {{"kind", "explicit"}, {"actions", actions}};
        }
      },
      request);
}

Json diagnostics_to_json(const Diagnostics& d) {
  return {{"potential", d.potential}, {"social_cost", d.social_cost}};
}

Diagnostics diagnostics_from_json(const Cursor& cursor) {
  return {cursor.field("potential").number(), cursor.field("social_cost").number()};
}

// Uniform draws built directly on the engine's 64-bit output.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::size_t below(std::size_t n) {
    const std::uint64_t bound = n;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do x = engine_();
    while (x >= limit);
    return static_cast<std::size_t>(x % bound);
  }

  bool coin() { return (engine_() >> 63) != 0; }

  double exponential() { return -std::log(1.0 - uniform()); }

private:
  std::mt19937_64 engine_;
};

std::string resource_name(std::size_t k, std::size_t total) {
  std::size_t width = 2;
  for (std::size_t x = total; x >= 100; x /= 10) ++width;
  std::string digits = std::to_string(k);
  return "e" + std::string(width > digits.size() ? width - digits.size() : 0, '0') + digits;
}

std::vector<double> dirichlet_prior(Rng& rng, std::size_t n) {
  std::vector<double> out(n);
  double total = 0.0;
  for (double& x : out) total += (x = rng.exponential() + 1e-300);
  for (double& x : out) x /= total;
  return out;
}

std::vector<std::size_t> sample_distinct(Rng& rng, std::size_t n, std::size_t k) {
  std::vector<std::size_t> pool(n);
  for (std::size_t v = 0; v < n; ++v) pool[v] = v;
  for (std::size_t j = 0; j < k; ++j) std::swap(pool[j], pool[j + rng.below(n - j)]);
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace

Instance parse_instance(const Json& document) {
  const Cursor root(document, "");
  root.expect_object();
  std::vector<std::string> violations;

  const auto resources = root.field("resources");
  Instance instance;
  for (std::size_t k = 0; k < resources.array_size(); ++k) {
    const auto entry = resources.at(k);
    Resource resource;
    resource.id = entry.field("id").string();
    const auto terms = entry.field("terms");
    for (std::size_t j = 0; j < terms.array_size(); ++j)
      resource.cost.terms.push_back({terms.at(j).field("xi").number(), terms.at(j).field("alpha").number()});
    instance.resources.push_back(std::move(resource));
  }
  std::stable_sort(instance.resources.begin(), instance.resources.end(),
                   [](const Resource& a, const Resource& b) { return a.id < b.id; });
  IdIndex ids;
  for (std::size_t e = 0; e < instance.resources.size(); ++e) ids.emplace(instance.resources[e].id, e);

  if (auto graph = root.optional_field("graph")) {
    Graph g;
    g.node_count = graph->field("nodes").count();
    if (auto directed = graph->optional_field("directed")) g.directed = directed->boolean();
    const auto edges = graph->field("edges");
    for (std::size_t k = 0; k < edges.array_size(); ++k) {
      const auto edge = edges.at(k);
      Edge parsed{edge.field("from").count(), edge.field("to").count(), 0};
      const auto rid = edge.field("resource");
      auto it = ids.find(rid.string());
      if (it == ids.end()) {
        violations.push_back(rid.path() + ": unknown resource id '" + rid.string() + "'");
        continue;
      }
      parsed.resource = it->second;
      g.edges.push_back(parsed);
    }
    instance.graph = std::move(g);
  }

  const auto agents = root.field("agents");
  for (std::size_t i = 0; i < agents.array_size(); ++i) {
    const auto entry = agents.at(i);
    Agent agent;
    const auto types = entry.field("types");
    for (std::size_t t = 0; t < types.array_size(); ++t)
      agent.types.push_back(parse_request(types.at(t), ids, violations));
    const auto prior = entry.field("prior");
    for (std::size_t t = 0; t < prior.array_size(); ++t) agent.prior.push_back(prior.at(t).number());
    instance.agents.push_back(std::move(agent));
  }

  auto more = instance.violations();
  violations.insert(violations.end(), more.begin(), more.end());
  if (!violations.empty()) throw ValidationError(std::move(violations));
  return instance;
}

Instance parse_instance_text(const std::string& text) {
  Json document;
  try {
    document = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError("", std::string("malformed JSON: ") + e.what());
  }
  return parse_instance(document);
}

Json instance_to_json(const Instance& instance) {
  Json resources = Json::array();
  for (const auto& resource : instance.resources) {
    Json terms = Json::array();
    for (const auto& term : resource.cost.terms)
      terms.push_back({{"xi", term.coefficient}, {"alpha", term.exponent}});
    resources.push_back({{"id", resource.id}, {"terms", terms}});
  }
  Json agents = Json::array();
  for (const auto& agent : instance.agents) {
    Json types = Json::array();
    for (const auto& request : agent.types) types.push_back(request_to_json(instance, request));
    agents.push_back({{"types", types}, {"prior", agent.prior}});
  }
  Json out = {{"resources", resources}, {"agents", agents}};
  if (instance.graph) {
    Json edges = Json::array();
    for (const auto& edge : instance.graph->edges)
      edges.push_back({{"from", edge.from}, {"to", edge.to}, {"resource", instance.resources[edge.resource].id}});
    out["graph"] = {{"nodes", instance.graph->node_count},
                    {"directed", instance.graph->directed},
                    {"edges", edges}};
  }
  return out;
}

RunReport make_report(const DynamicsTrace& trace, OracleKind oracle) {
  RunReport report;
  report.oracle = oracle;
  report.constants = trace.constants;
  report.rounds_executed = trace.rounds.size();
  report.round_cap = trace.round_cap;
  report.termination = trace.termination;
  for (const auto& round : trace.rounds) {
    if (round.chosen) report.steps.push_back({round.round, *round.chosen, round.delta[*round.chosen]});
    if (round.after) report.round_diagnostics.push_back(*round.after);
  }
  report.initial_diagnostics = trace.initial_diagnostics;
  report.strategies = trace.final_profile;
  return report;
}

Json constants_to_json(const GameConstants& c) {
  return {{"rho", c.rho},
          {"eta_low", c.eta_low},
          {"eta_high", c.eta_high},
          {"alpha_max", c.alpha_max},
          {"agents", c.agents},
          {"lambda", c.smoothness.lambda},
          {"mu", c.smoothness.mu},
          {"gamma", c.smoothness.gamma},
          {"scale", c.smoothness.scale},
          {"K", c.K},
          {"Q", c.Q},
          {"R", c.R},
          {"bcr_bound", c.bcr_bound()}};
}

Json report_to_json(const Instance& instance, const RunReport& report) {
  Json steps = Json::array();
  for (const auto& step : report.steps)
    steps.push_back({{"round", step.round}, {"agent", step.agent}, {"delta", step.delta}});
  Json trace = {{"rounds_executed", report.rounds_executed},
                {"round_cap", report.round_cap},
                {"termination", to_string(report.termination)},
                {"steps", steps}};
  if (report.initial_diagnostics) {
    Json rounds = Json::array();
    for (const auto& d : report.round_diagnostics) rounds.push_back(diagnostics_to_json(d));
    trace["diagnostics"] = {{"initial", diagnostics_to_json(*report.initial_diagnostics)}, {"rounds", rounds}};
  }
  Json strategies = Json::array();
  for (const auto& strategy : report.strategies) {
    Json per_type = Json::array();
    for (const auto& action : strategy) per_type.push_back(action_to_json(instance, action));
    strategies.push_back(per_type);
  }
  Json out = {{"oracle", to_string(report.oracle)},
              {"constants", constants_to_json(report.constants)},
              {"trace", trace},
              {"strategies", strategies}};
  if (report.bcr) {
    out["bcr"] = {{"exact_cost", report.bcr->exact_cost},
                  {"expected_opt", report.bcr->expected_opt},
                  {"empirical_bcr", report.bcr->empirical_bcr},
                  {"theoretical_bound", report.bcr->theoretical_bound}};
  }
  return out;
}

RunReport parse_report(const Instance& instance, const Json& document) {
  const Cursor root(document, "");
  root.expect_object();
  RunReport report;
  const auto oracle = root.field("oracle");
  try {
    report.oracle = oracle_kind_from_string(oracle.string());
  } catch (const UnsupportedError&) {
    oracle.fail("unknown oracle '" + oracle.string() + "'");
  }

  const auto c = root.field("constants");
  auto& k = report.constants;
  k.rho = c.field("rho").number();
  k.eta_low = c.field("eta_low").number();
  k.eta_high = c.field("eta_high").number();
  k.alpha_max = c.field("alpha_max").number();
  k.agents = c.field("agents").count();
  k.smoothness.lambda = c.field("lambda").number();
  k.smoothness.mu = c.field("mu").number();
  k.smoothness.gamma = c.field("gamma").number();
  k.smoothness.scale = c.field("scale").number();
  k.K = c.field("K").count();
  k.Q = c.field("Q").number();
  k.R = c.field("R").count();

  const auto trace = root.field("trace");
  report.rounds_executed = trace.field("rounds_executed").count();
  report.round_cap = trace.field("round_cap").count();
  const auto termination = trace.field("termination");
  const auto reason = termination.string();
  if (reason == "converged")
    report.termination = Termination::Converged;
  else if (reason == "round-cap")
    report.termination = Termination::RoundCap;
  else
    termination.fail("unknown termination reason '" + reason + "'");
  const auto steps = trace.field("steps");
  for (std::size_t s = 0; s < steps.array_size(); ++s) {
    const auto step = steps.at(s);
    report.steps.push_back({step.field("round").count(), step.field("agent").count(),
                            step.field("delta").number()});
  }
  if (auto diag = trace.optional_field("diagnostics")) {
    report.initial_diagnostics = diagnostics_from_json(diag->field("initial"));
    const auto rounds = diag->field("rounds");
    for (std::size_t r = 0; r < rounds.array_size(); ++r)
      report.round_diagnostics.push_back(diagnostics_from_json(rounds.at(r)));
  }

  IdIndex ids;
  for (std::size_t e = 0; e < instance.resources.size(); ++e) ids.emplace(instance.resources[e].id, e);
  std::vector<std::string> violations;
  const auto strategies = root.field("strategies");
  for (std::size_t i = 0; i < strategies.array_size(); ++i) {
    const auto per_type = strategies.at(i);
    Strategy strategy;
    for (std::size_t t = 0; t < per_type.array_size(); ++t)
      strategy.push_back(parse_action(per_type.at(t), ids, violations));
    report.strategies.push_back(std::move(strategy));
  }
  if (!violations.empty()) throw ValidationError(std::move(violations));
  check_strategy_profile(instance, report.strategies);

  if (auto bcr = root.optional_field("bcr")) {
    BcrReport b;
    b.exact_cost = bcr->field("exact_cost").number();
    b.expected_opt = bcr->field("expected_opt").number();
    b.empirical_bcr = bcr->field("empirical_bcr").number();
    b.theoretical_bound = bcr->field("theoretical_bound").number();
    report.bcr = b;
  }
  return report;
}

std::string to_canonical_text(const Json& document) { return document.dump(2) + "\n"; }

RequestKind request_kind_from_string(const std::string& name) {
  if (name == "routing") return RequestKind::Routing;
  if (name == "set_connectivity") return RequestKind::SetConnectivity;
  if (name == "explicit") return RequestKind::Explicit;
  throw UnsupportedError("unknown request kind '" + name + "'");
}

const char* to_string(RequestKind kind) {
  switch (kind) {
    case RequestKind::Routing: return "routing";
    case RequestKind::SetConnectivity: return "set_connectivity";
    case RequestKind::Explicit: return "explicit";
  }
  return "routing";
}

Instance generate_instance(const GeneratorParams& params) {
  if (params.agents == 0 || params.types_per_agent == 0)
    throw UnsupportedError("generator needs at least one agent and one type");
  if (params.alphas.empty()) throw UnsupportedError("generator needs at least one exponent");
  if (!(params.xi_min > 0.0 && params.xi_max >= params.xi_min))
    throw UnsupportedError("generator needs 0 < xi_min <= xi_max");
  const bool graph_based = params.request_kind != RequestKind::Explicit;
  if (graph_based && params.nodes < 2) throw UnsupportedError("generator needs at least 2 nodes");

  Rng rng(params.seed);
  Instance instance;

  std::size_t resource_total = params.explicit_resources;
  if (graph_based) {
    Graph graph;
    graph.node_count = params.nodes;
    graph.directed = params.directed;
    std::vector<std::pair<NodeIndex, NodeIndex>> pairs;
    for (NodeIndex v = 1; v < params.nodes; ++v) pairs.emplace_back(rng.below(v), v);
    for (NodeIndex u = 0; u < params.nodes; ++u) {
      for (NodeIndex v = u + 1; v < params.nodes; ++v) {
        const bool present = std::find(pairs.begin(), pairs.end(), std::make_pair(u, v)) != pairs.end();
        if (!present && rng.uniform() < params.edge_density && pairs.size() < params.max_edges)
          pairs.emplace_back(u, v);
      }
    }
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      auto [u, v] = pairs[k];
      if (params.directed && rng.coin()) std::swap(u, v);
      graph.edges.push_back({u, v, k});
    }
    resource_total = graph.edges.size();
    instance.graph = std::move(graph);
  }
  if (resource_total == 0) throw UnsupportedError("generator produced no resources");

  for (std::size_t k = 0; k < resource_total; ++k) {
    Resource resource{resource_name(k, resource_total), {}};
    for (double alpha : params.alphas)
      resource.cost.terms.push_back({rng.uniform(params.xi_min, params.xi_max), alpha});
    instance.resources.push_back(std::move(resource));
  }

  std::vector<ResourceIndex> every_edge(resource_total);
  for (std::size_t k = 0; k < resource_total; ++k) every_edge[k] = k;
  const Action whole(every_edge);

  for (std::size_t i = 0; i < params.agents; ++i) {
    Agent agent;
    for (std::size_t t = 0; t < params.types_per_agent; ++t) {
      std::optional<Request> request;
      for (int attempt = 0; attempt < 1000 && !request; ++attempt) {
        Request candidate;
        switch (params.request_kind) {
          case RequestKind::Routing: {
            const auto ends = sample_distinct(rng, params.nodes, 2);
            NodeIndex s = ends[0], d = ends[1];
            if (rng.coin()) std::swap(s, d);
            candidate = RoutingRequest{s, d};
            break;
          }
          case RequestKind::SetConnectivity: {
            const std::size_t k = 2 + rng.below(std::min<std::size_t>(2, params.nodes - 1));
            candidate = SetConnectivityRequest{sample_distinct(rng, params.nodes, k)};
            break;
          }
          case RequestKind::Explicit: {
            ExplicitRequest req;
            // Number of subsets of size 1..3.
            const std::size_t m = resource_total;
            const std::size_t distinct = m + (m >= 2 ? m * (m - 1) / 2 : 0) +
                                         (m >= 3 ? m * (m - 1) * (m - 2) / 6 : 0);
            const std::size_t count = std::min(
                distinct, 1 + rng.below(std::max<std::size_t>(1, params.max_explicit_actions)));
            while (req.actions.size() < count) {
              const std::size_t size = 1 + rng.below(std::min<std::size_t>(3, resource_total));
              Action action(sample_distinct(rng, resource_total, size));
              if (std::find(req.actions.begin(), req.actions.end(), action) == req.actions.end())
                req.actions.push_back(std::move(action));
            }
            candidate = std::move(req);
            break;
          }
        }
        // Explicit requests are satisfiable by construction (nonempty action list).
        if (std::holds_alternative<ExplicitRequest>(candidate) ||
            feasible(candidate, whole, instance.graph_ptr()))
          request = std::move(candidate);
      }
      if (!request) throw UnsatisfiableError("generator could not draw a satisfiable request");
      agent.types.push_back(std::move(*request));
    }
    agent.prior = dirichlet_prior(rng, params.types_per_agent);
    instance.agents.push_back(std::move(agent));
  }
  instance.validate();
  return instance;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("failed reading '" + path + "'");
  return buffer.str();
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path temp = target;
  temp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + temp.string() + "' for writing");
    out << contents;
    out.flush();
    if (!out) {
      out.close();
      std::error_code ignored;
      fs::remove(temp, ignored);
      throw IoError("failed writing '" + temp.string() + "'");
    }
  }
  std::error_code ec;
  fs::rename(temp, target, ec);
  if (ec) {
    std::error_code ignored;
    fs::remove(temp, ignored);
    throw IoError("cannot move output into place at '" + path + "': " + ec.message());
  }
}

}  // namespace bgnd
