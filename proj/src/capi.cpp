#include "bgnd/bgnd.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "bgnd/dynamics.hpp"
#include "bgnd/error.hpp"
#include "bgnd/eval.hpp"
#include "bgnd/io.hpp"

struct bgnd_instance {
  std::shared_ptr<const bgnd::Instance> instance;
};

struct bgnd_report {
  std::shared_ptr<const bgnd::Instance> instance;
  bgnd::RunReport report;
};

namespace {

thread_local std::string last_error;

bgnd_status fail(bgnd_status status, const std::string& message) {
  last_error = message;
  return status;
}

template <class Fn>
bgnd_status guarded(Fn&& fn) {
  try {
    last_error.clear();
    return fn();
  } catch (const bgnd::ParseError& e) {
    return fail(BGND_ERR_VALIDATION, e.what());
  } catch (const bgnd::ValidationError& e) {
    return fail(BGND_ERR_VALIDATION, e.what());
  } catch (const bgnd::IoError& e) {
    return fail(BGND_ERR_IO, e.what());
  } catch (const bgnd::UnsatisfiableError& e) {
    return fail(BGND_ERR_UNSATISFIABLE, e.what());
  } catch (const bgnd::UnsupportedError& e) {
    return fail(BGND_ERR_UNSUPPORTED, e.what());
  } catch (const bgnd::TooLargeError& e) {
    return fail(BGND_ERR_TOO_LARGE, e.what());
  } catch (const bgnd::InvariantViolation& e) {
    return fail(BGND_ERR_INTERNAL, std::string("invariant violation: ") + e.what());
  } catch (const std::bad_alloc&) {
    return fail(BGND_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(BGND_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(BGND_ERR_INTERNAL, "unknown error");
  }
}

char* copy_string(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

bgnd::OracleKind to_kind(bgnd_oracle oracle) {
  switch (oracle) {
    case BGND_ORACLE_AUTO: return bgnd::OracleKind::Auto;
    case BGND_ORACLE_SHORTEST_PATH: return bgnd::OracleKind::ShortestPath;
    case BGND_ORACLE_STEINER: return bgnd::OracleKind::SteinerMst;
    case BGND_ORACLE_EXPLICIT: return bgnd::OracleKind::Explicit;
  }
  throw bgnd::UnsupportedError("unknown oracle value");
}

void fill_constants(const bgnd::GameConstants& c, bgnd_constants* out) {
  out->rho = c.rho;
  out->eta_low = c.eta_low;
  out->eta_high = c.eta_high;
  out->alpha_max = c.alpha_max;
  out->lambda = c.smoothness.lambda;
  out->mu = c.smoothness.mu;
  out->gamma = c.smoothness.gamma;
  out->scale = c.smoothness.scale;
  out->K = c.K;
  out->Q = c.Q;
  out->R = c.R;
  out->bcr_bound = c.bcr_bound();
}

bgnd::EnumerationCaps to_caps(const bgnd_caps* caps) {
  bgnd::EnumerationCaps out;
  if (caps != nullptr) {
    if (caps->max_profiles != 0) out.max_profiles = caps->max_profiles;
    if (caps->max_action_product != 0) out.max_action_product = caps->max_action_product;
  }
  return out;
}

bgnd_status new_instance(bgnd::Instance instance, bgnd_instance** out) {
  *out = new bgnd_instance{std::make_shared<const bgnd::Instance>(std::move(instance))};
  return BGND_OK;
}

#define BGND_REQUIRE(cond)                                                      \
  do {                                                                          \
    if (!(cond)) return fail(BGND_ERR_INVALID_ARGUMENT, "null argument: " #cond); \
  } while (0)

}  // namespace

extern "C" {

const char* bgnd_status_string(bgnd_status status) {
  switch (status) {
    case BGND_OK: return "ok";
    case BGND_ERR_IO: return "i/o error";
    case BGND_ERR_VALIDATION: return "validation error";
    case BGND_ERR_BOUND_VIOLATED: return "theoretical bound violated";
    case BGND_ERR_UNSATISFIABLE: return "unsatisfiable request";
    case BGND_ERR_UNSUPPORTED: return "unsupported";
    case BGND_ERR_TOO_LARGE: return "enumeration cap exceeded";
    case BGND_ERR_INVALID_ARGUMENT: return "invalid argument";
    case BGND_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* bgnd_last_error(void) { return last_error.c_str(); }

void bgnd_string_free(char* text) { std::free(text); }

void bgnd_solve_options_init(bgnd_solve_options* options) {
  if (options == nullptr) return;
  options->oracle = BGND_ORACLE_AUTO;
  options->rounds = -1;
  options->diagnostics = 0;
  options->threads = 0;
}

void bgnd_generator_params_init(bgnd_generator_params* params) {
  if (params == nullptr) return;
  static const double kDefaultAlpha = 2.0;
  const bgnd::GeneratorParams d;
  params->seed = d.seed;
  params->agents = d.agents;
  params->nodes = d.nodes;
  params->edge_density = d.edge_density;
  params->max_edges = d.max_edges;
  params->types_per_agent = d.types_per_agent;
  params->alphas = &kDefaultAlpha;
  params->alpha_count = 1;
  params->xi_min = d.xi_min;
  params->xi_max = d.xi_max;
  params->request_kind = BGND_REQUEST_ROUTING;
  params->directed = 0;
  params->explicit_resources = d.explicit_resources;
}

bgnd_status bgnd_oracle_from_string(const char* name, bgnd_oracle* out) {
  BGND_REQUIRE(name && out);
  return guarded([&] {
    switch (bgnd::oracle_kind_from_string(name)) {
      case bgnd::OracleKind::Auto: *out = BGND_ORACLE_AUTO; break;
      case bgnd::OracleKind::ShortestPath: *out = BGND_ORACLE_SHORTEST_PATH; break;
      case bgnd::OracleKind::SteinerMst: *out = BGND_ORACLE_STEINER; break;
      case bgnd::OracleKind::Explicit: *out = BGND_ORACLE_EXPLICIT; break;
    }
    return BGND_OK;
  });
}

bgnd_status bgnd_request_kind_from_string(const char* name, bgnd_request_kind* out) {
  BGND_REQUIRE(name && out);
  return guarded([&] {
    switch (bgnd::request_kind_from_string(name)) {
      case bgnd::RequestKind::Routing: *out = BGND_REQUEST_ROUTING; break;
      case bgnd::RequestKind::SetConnectivity: *out = BGND_REQUEST_SET_CONNECTIVITY; break;
      case bgnd::RequestKind::Explicit: *out = BGND_REQUEST_EXPLICIT; break;
    }
    return BGND_OK;
  });
}

bgnd_status bgnd_instance_load(const char* path, bgnd_instance** out) {
  BGND_REQUIRE(path && out);
  return guarded([&] { return new_instance(bgnd::parse_instance_text(bgnd::read_file(path)), out); });
}

bgnd_status bgnd_instance_parse(const char* json, bgnd_instance** out) {
  BGND_REQUIRE(json && out);
  return guarded([&] { return new_instance(bgnd::parse_instance_text(json), out); });
}

bgnd_status bgnd_instance_generate(const bgnd_generator_params* params, bgnd_instance** out) {
  BGND_REQUIRE(params && out);
  BGND_REQUIRE(params->alphas || params->alpha_count == 0);
  return guarded([&] {
    bgnd::GeneratorParams p;
    p.seed = params->seed;
    p.agents = params->agents;
    p.nodes = params->nodes;
    p.edge_density = params->edge_density;
    p.max_edges = params->max_edges;
    p.types_per_agent = params->types_per_agent;
    p.alphas.assign(params->alphas, params->alphas + params->alpha_count);
    p.xi_min = params->xi_min;
    p.xi_max = params->xi_max;
    switch (params->request_kind) {
      case BGND_REQUEST_ROUTING: p.request_kind = bgnd::RequestKind::Routing; break;
      case BGND_REQUEST_SET_CONNECTIVITY: p.request_kind = bgnd::RequestKind::SetConnectivity; break;
      case BGND_REQUEST_EXPLICIT: p.request_kind = bgnd::RequestKind::Explicit; break;
      default: throw bgnd::UnsupportedError("unknown request kind value");
    }
    p.directed = params->directed != 0;
    p.explicit_resources = params->explicit_resources;
    return new_instance(bgnd::generate_instance(p), out);
  });
}

bgnd_status bgnd_instance_to_json(const bgnd_instance* instance, char** out) {
  BGND_REQUIRE(instance && out);
  return guarded([&] {
    *out = copy_string(bgnd::to_canonical_text(bgnd::instance_to_json(*instance->instance)));
    return BGND_OK;
  });
}

bgnd_status bgnd_instance_write(const bgnd_instance* instance, const char* path) {
  BGND_REQUIRE(instance && path);
  return guarded([&] {
    bgnd::write_file_atomic(path, bgnd::to_canonical_text(bgnd::instance_to_json(*instance->instance)));
    return BGND_OK;
  });
}

size_t bgnd_instance_agent_count(const bgnd_instance* instance) {
  return instance ? instance->instance->agent_count() : 0;
}

size_t bgnd_instance_resource_count(const bgnd_instance* instance) {
  return instance ? instance->instance->resource_count() : 0;
}

void bgnd_instance_free(bgnd_instance* instance) { delete instance; }

bgnd_status bgnd_constants_compute(const bgnd_instance* instance, bgnd_oracle oracle,
                                   bgnd_constants* out) {
  BGND_REQUIRE(instance && out);
  return guarded([&] {
    const bgnd::ActionOracle o(to_kind(oracle));
    fill_constants(bgnd::game_constants(*instance->instance, o.describe(*instance->instance).rho), out);
    return BGND_OK;
  });
}

bgnd_status bgnd_solve(const bgnd_instance* instance, const bgnd_solve_options* options,
                       bgnd_report** out) {
  BGND_REQUIRE(instance && out);
  return guarded([&] {
    bgnd_solve_options opts;
    bgnd_solve_options_init(&opts);
    if (options != nullptr) opts = *options;
    const bgnd::ActionOracle oracle(to_kind(opts.oracle));
    bgnd::DynamicsConfig config;
    if (opts.rounds >= 0) config.rounds = static_cast<std::uint64_t>(opts.rounds);
    config.diagnostics = opts.diagnostics != 0;
    config.threads = opts.threads;
    const auto trace = bgnd::run_dynamics(*instance->instance, oracle, config);
    *out = new bgnd_report{instance->instance, bgnd::make_report(trace, oracle.kind())};
    return BGND_OK;
  });
}

bgnd_status bgnd_report_parse(const bgnd_instance* instance, const char* json, bgnd_report** out) {
  BGND_REQUIRE(instance && json && out);
  return guarded([&] {
    bgnd::Json document;
    try {
      document = bgnd::Json::parse(json);
    } catch (const bgnd::Json::parse_error& e) {
      throw bgnd::ParseError("", std::string("malformed JSON: ") + e.what());
    }
    *out = new bgnd_report{instance->instance, bgnd::parse_report(*instance->instance, document)};
    return BGND_OK;
  });
}

bgnd_status bgnd_report_load(const bgnd_instance* instance, const char* path, bgnd_report** out) {
  BGND_REQUIRE(instance && path && out);
  std::string text;
  const bgnd_status status = guarded([&] {
    text = bgnd::read_file(path);
    return BGND_OK;
  });
  if (status != BGND_OK) return status;
  return bgnd_report_parse(instance, text.c_str(), out);
}

bgnd_status bgnd_report_to_json(const bgnd_report* report, char** out) {
  BGND_REQUIRE(report && out);
  return guarded([&] {
    *out = copy_string(bgnd::to_canonical_text(bgnd::report_to_json(*report->instance, report->report)));
    return BGND_OK;
  });
}

bgnd_status bgnd_report_write(const bgnd_report* report, const char* path) {
  BGND_REQUIRE(report && path);
  return guarded([&] {
    bgnd::write_file_atomic(
        path, bgnd::to_canonical_text(bgnd::report_to_json(*report->instance, report->report)));
    return BGND_OK;
  });
}

bgnd_status bgnd_report_summary(const bgnd_report* report, bgnd_run_summary* out) {
  BGND_REQUIRE(report && out);
  out->rounds_executed = report->report.rounds_executed;
  out->round_cap = report->report.round_cap;
  out->converged = report->report.termination == bgnd::Termination::Converged;
  out->updates = report->report.steps.size();
  return BGND_OK;
}

bgnd_status bgnd_report_constants(const bgnd_report* report, bgnd_constants* out) {
  BGND_REQUIRE(report && out);
  fill_constants(report->report.constants, out);
  return BGND_OK;
}

void bgnd_report_free(bgnd_report* report) { delete report; }

bgnd_status bgnd_evaluate(const bgnd_instance* instance, const bgnd_report* report,
                          const bgnd_caps* caps, size_t threads, bgnd_evaluation* out) {
  BGND_REQUIRE(instance && report && out);
  return guarded([&] {
    const auto& inst = *instance->instance;
    bgnd::check_strategy_profile(inst, report->report.strategies);
    const bgnd::ActionOracle oracle(report->report.oracle);
    const auto constants = bgnd::game_constants(inst, oracle.describe(inst).rho);
    const auto bcr = bgnd::bcr_report(inst, report->report.strategies, constants, to_caps(caps), threads);
    out->exact_cost = bcr.exact_cost;
    out->expected_opt = bcr.expected_opt;
    out->empirical_bcr = bcr.empirical_bcr;
    out->theoretical_bound = bcr.theoretical_bound;
    out->bound_holds = bcr.bound_holds() ? 1 : 0;
    if (!bcr.bound_holds())
      return fail(BGND_ERR_BOUND_VIOLATED, "empirical ratio exceeds the theoretical bound");
    return BGND_OK;
  });
}

bgnd_status bgnd_expected_opt_json(const bgnd_instance* instance, const bgnd_caps* caps,
                                   size_t threads, char** out) {
  BGND_REQUIRE(instance && out);
  return guarded([&] {
    const auto opt = bgnd::expected_opt(*instance->instance, to_caps(caps), threads);
    bgnd::Json profiles = bgnd::Json::array();
    for (const auto& p : opt.profiles)
      profiles.push_back({{"types", p.types}, {"probability", p.probability}, {"opt", p.opt}});
    const bgnd::Json document = {{"expected_opt", opt.value}, {"profiles", profiles}};
    *out = copy_string(bgnd::to_canonical_text(document));
    return BGND_OK;
  });
}

}  // extern "C"
