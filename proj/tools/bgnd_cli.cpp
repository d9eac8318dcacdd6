// Command-line front end. Talks to the solver exclusively through the C API.

#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bgnd/bgnd.h"

namespace {

struct InstanceDeleter {
  void operator()(bgnd_instance* p) const { bgnd_instance_free(p); }
};
struct ReportDeleter {
  void operator()(bgnd_report* p) const { bgnd_report_free(p); }
};
struct StringDeleter {
  void operator()(char* p) const { bgnd_string_free(p); }
};
using InstancePtr = std::unique_ptr<bgnd_instance, InstanceDeleter>;
using ReportPtr = std::unique_ptr<bgnd_report, ReportDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

// 0 ok, 1 i/o or resource limits, 2 invalid input, 3 bound violated.
int exit_code(bgnd_status status) {
  switch (status) {
    case BGND_OK: return 0;
    case BGND_ERR_BOUND_VIOLATED: return 3;
    case BGND_ERR_VALIDATION:
    case BGND_ERR_UNSATISFIABLE:
    case BGND_ERR_UNSUPPORTED:
    case BGND_ERR_INVALID_ARGUMENT: return 2;
    case BGND_ERR_IO:
    case BGND_ERR_TOO_LARGE:
    case BGND_ERR_INTERNAL: return 1;
  }
  return 1;
}

int report_failure(bgnd_status status) {
  std::fprintf(stderr, "bgnd: %s: %s\n", bgnd_status_string(status), bgnd_last_error());
  return exit_code(status);
}

struct GlobalOptions {
  std::uint64_t cap_profiles = 0;
  std::uint64_t cap_actions = 0;
  std::size_t threads = 0;

  bgnd_caps caps() const { return {cap_profiles, cap_actions}; }
};

bgnd_status load_instance(const std::string& path, InstancePtr& out) {
  bgnd_instance* raw = nullptr;
  const bgnd_status status = bgnd_instance_load(path.c_str(), &raw);
  out.reset(raw);
  return status;
}

void print_constants(const bgnd_constants& c) {
  std::printf("rho       = %.12g\n", c.rho);
  std::printf("eta_low   = %.12g\n", c.eta_low);
  std::printf("eta_high  = %.12g\n", c.eta_high);
  std::printf("alpha_max = %.12g\n", c.alpha_max);
  std::printf("gamma     = %.12g\n", c.gamma);
  std::printf("lambda    = %.12g\n", c.lambda);
  std::printf("mu        = %.12g\n", c.mu);
  std::printf("K         = %llu\n", static_cast<unsigned long long>(c.K));
  std::printf("Q         = %.12g\n", c.Q);
  std::printf("R         = %llu\n", static_cast<unsigned long long>(c.R));
  std::printf("bcr_bound = %.12g\n", c.bcr_bound);
}

int run_solve(const GlobalOptions& global, const std::string& instance_path,
              const std::string& oracle_name, long long rounds, bool diagnostics,
              const std::string& output) {
  InstancePtr instance;
  if (auto s = load_instance(instance_path, instance); s != BGND_OK) return report_failure(s);
  bgnd_solve_options options;
  bgnd_solve_options_init(&options);
  if (auto s = bgnd_oracle_from_string(oracle_name.c_str(), &options.oracle); s != BGND_OK)
    return report_failure(s);
  options.rounds = rounds;
  options.diagnostics = diagnostics ? 1 : 0;
  options.threads = global.threads;
  bgnd_report* raw = nullptr;
  const bgnd_status status = bgnd_solve(instance.get(), &options, &raw);
  ReportPtr report(raw);
  if (status != BGND_OK) return report_failure(status);
  if (auto s = bgnd_report_write(report.get(), output.c_str()); s != BGND_OK) return report_failure(s);
  bgnd_run_summary summary;
  bgnd_report_summary(report.get(), &summary);
  std::printf("%s after %llu of at most %llu rounds (%zu updates); report written to %s\n",
              summary.converged ? "converged" : "stopped at the round cap",
              static_cast<unsigned long long>(summary.rounds_executed),
              static_cast<unsigned long long>(summary.round_cap), summary.updates, output.c_str());
  return 0;
}

int run_eval(const GlobalOptions& global, const std::string& instance_path,
             const std::string& report_path) {
  InstancePtr instance;
  if (auto s = load_instance(instance_path, instance); s != BGND_OK) return report_failure(s);
  bgnd_report* raw = nullptr;
  const bgnd_status loaded = bgnd_report_load(instance.get(), report_path.c_str(), &raw);
  ReportPtr report(raw);
  if (loaded != BGND_OK) return report_failure(loaded);
  const bgnd_caps caps = global.caps();
  bgnd_evaluation result{};
  const bgnd_status status = bgnd_evaluate(instance.get(), report.get(), &caps, global.threads, &result);
  if (status != BGND_OK && status != BGND_ERR_BOUND_VIOLATED) return report_failure(status);
  std::printf("exact_cost        = %.12g\n", result.exact_cost);
  std::printf("expected_opt      = %.12g\n", result.expected_opt);
  std::printf("empirical_bcr     = %.12g\n", result.empirical_bcr);
  std::printf("theoretical_bound = %.12g\n", result.theoretical_bound);
  std::printf("bound_holds       = %s\n", result.bound_holds ? "yes" : "no");
  if (status == BGND_ERR_BOUND_VIOLATED) return report_failure(status);
  return 0;
}

int run_bound(const std::string& instance_path, const std::string& oracle_name) {
  InstancePtr instance;
  if (auto s = load_instance(instance_path, instance); s != BGND_OK) return report_failure(s);
  bgnd_oracle oracle;
  if (auto s = bgnd_oracle_from_string(oracle_name.c_str(), &oracle); s != BGND_OK)
    return report_failure(s);
  bgnd_constants constants;
  if (auto s = bgnd_constants_compute(instance.get(), oracle, &constants); s != BGND_OK)
    return report_failure(s);
  print_constants(constants);
  return 0;
}

int run_opt(const GlobalOptions& global, const std::string& instance_path) {
  InstancePtr instance;
  if (auto s = load_instance(instance_path, instance); s != BGND_OK) return report_failure(s);
  const bgnd_caps caps = global.caps();
  char* raw = nullptr;
  const bgnd_status status = bgnd_expected_opt_json(instance.get(), &caps, global.threads, &raw);
  StringPtr text(raw);
  if (status != BGND_OK) return report_failure(status);
  std::fputs(text.get(), stdout);
  return 0;
}

struct GenOptions {
  std::uint64_t seed = 1;
  std::size_t agents = 3;
  std::size_t nodes = 6;
  double density = 0.3;
  std::size_t max_edges = 12;
  std::size_t types = 2;
  std::vector<double> alphas{2.0};
  double xi_min = 1.0;
  double xi_max = 1.0;
  std::string kind = "routing";
  bool directed = false;
  std::size_t resources = 6;
  std::string output;
};

int run_gen(const GenOptions& o) {
  bgnd_generator_params params;
  bgnd_generator_params_init(&params);
  params.seed = o.seed;
  params.agents = o.agents;
  params.nodes = o.nodes;
  params.edge_density = o.density;
  params.max_edges = o.max_edges;
  params.types_per_agent = o.types;
  params.alphas = o.alphas.data();
  params.alpha_count = o.alphas.size();
  params.xi_min = o.xi_min;
  params.xi_max = o.xi_max;
  if (auto s = bgnd_request_kind_from_string(o.kind.c_str(), &params.request_kind); s != BGND_OK)
    return report_failure(s);
  params.directed = o.directed ? 1 : 0;
  params.explicit_resources = o.resources;
  bgnd_instance* raw = nullptr;
  const bgnd_status status = bgnd_instance_generate(&params, &raw);
  InstancePtr instance(raw);
  if (status != BGND_OK) return report_failure(status);
  if (auto s = bgnd_instance_write(instance.get(), o.output.c_str()); s != BGND_OK) return report_failure(s);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayesian network design: strategy tables via approximate best-response dynamics"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions global;
  app.add_option("--cap-profiles", global.cap_profiles, "Maximum number of type profiles to enumerate");
  app.add_option("--cap-actions", global.cap_actions, "Maximum action-profile space per type profile");
  app.add_option("--threads", global.threads, "Worker threads (0 = BGND_THREADS or all cores)");

  std::string instance_path, report_path, output, oracle = "auto";
  long long rounds = -1;
  bool diagnostics = false;

  auto* solve = app.add_subcommand("solve", "Compute strategy tables and write a run report");
  solve->add_option("instance", instance_path, "Instance JSON")->required();
  solve->add_option("--oracle", oracle, "auto | shortest-path | steiner | explicit")
      ->check(CLI::IsMember({"auto", "shortest-path", "steiner", "explicit"}));
  solve->add_option("--rounds", rounds, "Override the computed round bound");
  solve->add_flag("--diagnostics", diagnostics, "Record exact potential and cost per round");
  solve->add_option("-o,--output", output, "Report path")->required();

  auto* eval = app.add_subcommand("eval", "Exact cost, E[OPT], and ratio against the bound");
  eval->add_option("instance", instance_path, "Instance JSON")->required();
  eval->add_option("report", report_path, "Run report JSON")->required();

  auto* bound = app.add_subcommand("bound", "Print the game constants");
  bound->add_option("instance", instance_path, "Instance JSON")->required();
  bound->add_option("--oracle", oracle, "auto | shortest-path | steiner | explicit")
      ->check(CLI::IsMember({"auto", "shortest-path", "steiner", "explicit"}));

  auto* opt = app.add_subcommand("opt", "Brute-force E[OPT] with a per-profile breakdown");
  opt->add_option("instance", instance_path, "Instance JSON")->required();

  GenOptions gen_options;
  auto* gen = app.add_subcommand("gen", "Generate a random instance");
  gen->add_option("--seed", gen_options.seed, "PRNG seed");
  gen->add_option("--n", gen_options.agents, "Number of agents");
  gen->add_option("--nodes", gen_options.nodes, "Number of graph nodes");
  gen->add_option("--density", gen_options.density, "Probability of each extra non-tree edge");
  gen->add_option("--max-edges", gen_options.max_edges, "Edge budget");
  gen->add_option("--types", gen_options.types, "Types per agent");
  gen->add_option("--alpha", gen_options.alphas, "Cost exponent (repeat for several terms)");
  gen->add_option("--xi-min", gen_options.xi_min, "Smallest cost coefficient");
  gen->add_option("--xi-max", gen_options.xi_max, "Largest cost coefficient");
  gen->add_option("--kind", gen_options.kind, "routing | set_connectivity | explicit")
      ->check(CLI::IsMember({"routing", "set_connectivity", "explicit"}));
  gen->add_flag("--directed", gen_options.directed, "Directed graph");
  gen->add_option("--resources", gen_options.resources, "Resource count for explicit instances");
  gen->add_option("-o,--output", gen_options.output, "Instance path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (solve->parsed()) return run_solve(global, instance_path, oracle, rounds, diagnostics, output);
  if (eval->parsed()) return run_eval(global, instance_path, report_path);
  if (bound->parsed()) return run_bound(instance_path, oracle);
  if (opt->parsed()) return run_opt(global, instance_path);
  if (gen->parsed()) return run_gen(gen_options);
  return 2;
}
