#ifndef BGND_BGND_H
#define BGND_BGND_H

/*
 * C interface to the Bayesian network design solver.
 *
 * Objects are opaque handles created by bgnd_*_load / parse / generate /
 * solve and released with the matching bgnd_*_free. Every fallible call
 * returns a bgnd_status; on failure a human-readable message for the calling
 * thread is available from bgnd_last_error(). Strings returned through
 * `char**` out-parameters are owned by the caller and released with
 * bgnd_string_free().
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(BGND_BUILDING_LIBRARY)
#    define BGND_API __declspec(dllexport)
#  else
#    define BGND_API __declspec(dllimport)
#  endif
#else
#  define BGND_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bgnd_status {
  BGND_OK = 0,
  BGND_ERR_IO = 1,
  BGND_ERR_VALIDATION = 2,       /* malformed document or violated invariant */
  BGND_ERR_BOUND_VIOLATED = 3,   /* evaluated ratio exceeds the theoretical bound */
  BGND_ERR_UNSATISFIABLE = 4,    /* some request has no feasible action */
  BGND_ERR_UNSUPPORTED = 5,      /* oracle cannot serve a request kind */
  BGND_ERR_TOO_LARGE = 6,        /* enumeration cap exceeded */
  BGND_ERR_INVALID_ARGUMENT = 7,
  BGND_ERR_INTERNAL = 8
} bgnd_status;

typedef enum bgnd_oracle {
  BGND_ORACLE_AUTO = 0,
  BGND_ORACLE_SHORTEST_PATH = 1,
  BGND_ORACLE_STEINER = 2,
  BGND_ORACLE_EXPLICIT = 3
} bgnd_oracle;

typedef enum bgnd_request_kind {
  BGND_REQUEST_ROUTING = 0,
  BGND_REQUEST_SET_CONNECTIVITY = 1,
  BGND_REQUEST_EXPLICIT = 2
} bgnd_request_kind;

typedef struct bgnd_instance bgnd_instance;
typedef struct bgnd_report bgnd_report;

typedef struct bgnd_constants {
  double rho;
  double eta_low;
  double eta_high;
  double alpha_max;
  double lambda;
  double mu;
  double gamma;
  double scale; /* rho * (eta_low * eta_high)^2 */
  uint64_t K;
  double Q;
  uint64_t R;
  double bcr_bound;
} bgnd_constants;

typedef struct bgnd_caps {
  uint64_t max_profiles;       /* 0 selects the default (1e5) */
  uint64_t max_action_product; /* 0 selects the default (1e7) */
} bgnd_caps;

typedef struct bgnd_solve_options {
  bgnd_oracle oracle;
  int64_t rounds;      /* < 0 keeps the computed round bound R */
  int diagnostics;     /* nonzero records exact potential and cost per round */
  size_t threads;      /* 0 = BGND_THREADS or hardware concurrency */
} bgnd_solve_options;

typedef struct bgnd_generator_params {
  uint64_t seed;
  size_t agents;
  size_t nodes;
  double edge_density;
  size_t max_edges;
  size_t types_per_agent;
  const double* alphas;
  size_t alpha_count;
  double xi_min;
  double xi_max;
  bgnd_request_kind request_kind;
  int directed;
  size_t explicit_resources;
} bgnd_generator_params;

typedef struct bgnd_run_summary {
  uint64_t rounds_executed;
  uint64_t round_cap;
  int converged;
  size_t updates;
} bgnd_run_summary;

typedef struct bgnd_evaluation {
  double exact_cost;
  double expected_opt;
  double empirical_bcr;
  double theoretical_bound;
  int bound_holds;
} bgnd_evaluation;

BGND_API const char* bgnd_status_string(bgnd_status status);
BGND_API const char* bgnd_last_error(void);
BGND_API void bgnd_string_free(char* text);

BGND_API void bgnd_solve_options_init(bgnd_solve_options* options);
BGND_API void bgnd_generator_params_init(bgnd_generator_params* params);
BGND_API bgnd_status bgnd_oracle_from_string(const char* name, bgnd_oracle* out);
BGND_API bgnd_status bgnd_request_kind_from_string(const char* name, bgnd_request_kind* out);

BGND_API bgnd_status bgnd_instance_load(const char* path, bgnd_instance** out);
BGND_API bgnd_status bgnd_instance_parse(const char* json, bgnd_instance** out);
BGND_API bgnd_status bgnd_instance_generate(const bgnd_generator_params* params, bgnd_instance** out);
BGND_API bgnd_status bgnd_instance_to_json(const bgnd_instance* instance, char** out);
BGND_API bgnd_status bgnd_instance_write(const bgnd_instance* instance, const char* path);
BGND_API size_t bgnd_instance_agent_count(const bgnd_instance* instance);
BGND_API size_t bgnd_instance_resource_count(const bgnd_instance* instance);
BGND_API void bgnd_instance_free(bgnd_instance* instance);

BGND_API bgnd_status bgnd_constants_compute(const bgnd_instance* instance, bgnd_oracle oracle,
                                            bgnd_constants* out);

BGND_API bgnd_status bgnd_solve(const bgnd_instance* instance, const bgnd_solve_options* options,
                                bgnd_report** out);
BGND_API bgnd_status bgnd_report_load(const bgnd_instance* instance, const char* path,
                                      bgnd_report** out);
BGND_API bgnd_status bgnd_report_parse(const bgnd_instance* instance, const char* json,
                                       bgnd_report** out);
BGND_API bgnd_status bgnd_report_to_json(const bgnd_report* report, char** out);
BGND_API bgnd_status bgnd_report_write(const bgnd_report* report, const char* path);
BGND_API bgnd_status bgnd_report_summary(const bgnd_report* report, bgnd_run_summary* out);
BGND_API bgnd_status bgnd_report_constants(const bgnd_report* report, bgnd_constants* out);
BGND_API void bgnd_report_free(bgnd_report* report);

/* Exact expected cost of the report's strategy tables against E[OPT].
 * Returns BGND_ERR_BOUND_VIOLATED (with `out` filled) when the empirical
 * ratio exceeds the theoretical bound. `caps` may be NULL. */
BGND_API bgnd_status bgnd_evaluate(const bgnd_instance* instance, const bgnd_report* report,
                                   const bgnd_caps* caps, size_t threads, bgnd_evaluation* out);

/* E[OPT] with one entry per type profile, as a JSON document. */
BGND_API bgnd_status bgnd_expected_opt_json(const bgnd_instance* instance, const bgnd_caps* caps,
                                            size_t threads, char** out);

#ifdef __cplusplus
}
#endif

#endif /* BGND_BGND_H */
