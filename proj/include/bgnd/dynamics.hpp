#pragma once

// Approximate-best-response dynamics over Bayesian strategy tables. Every
// round each agent computes an approximate best response against the
// current profile; one agent whose estimated gain is at least the average
// gain commits it. The run stops on convergence or after R rounds.

#include <cstdint>
#include <optional>
#include <vector>

#include "bgnd/gametheory.hpp"
#include "bgnd/model.hpp"
#include "bgnd/oracle.hpp"

namespace bgnd {

struct AbrResult {
  Strategy strategy;
  double estimated_cost = 0.0;     // estimated C_i(abr, s_-i)
  double estimated_current = 0.0;  // estimated C_i(s) under the same weights
};

struct DynamicsConfig {
  std::optional<std::uint64_t> rounds;  // overrides the computed R
  bool diagnostics = false;             // exact potential and cost per round
  std::size_t threads = 1;              // 0 = default_thread_count()
};

struct Diagnostics {
  double potential = 0.0;
  double social_cost = 0.0;
};

struct RoundRecord {
  std::uint64_t round = 0;
  std::vector<double> delta;
  std::optional<std::size_t> chosen;  // empty when the round converged
  std::vector<double> estimated_current;
  std::vector<double> estimated_abr;
  std::optional<Diagnostics> after;  // of the profile at the end of the round
};

enum class Termination { Converged, RoundCap };

const char* to_string(Termination reason);

struct DynamicsTrace {
  StrategyProfile initial;
  std::optional<Diagnostics> initial_diagnostics;
  std::vector<RoundRecord> rounds;
  StrategyProfile final_profile;
  Termination termination = Termination::RoundCap;
  std::uint64_t round_cap = 0;
  GameConstants constants;
};

// Every type answered under the play-alone weights sum_j coefficient_j.
StrategyProfile initial_profile(const Instance& instance, const ActionOracle& oracle);

AbrResult compute_abr(const Instance& instance, std::size_t agent,
                      const StrategyProfile& strategies, const ActionOracle& oracle);

// Index of the agent that commits its response: the smallest i with
// delta_i > 0 and delta_i >= sum(delta) / N. Empty when every delta is <= 0.
// Throws InvariantViolation if some delta is positive but none qualifies.
std::optional<std::size_t> select_agent(const std::vector<double>& delta);

DynamicsTrace run_dynamics(const Instance& instance, const ActionOracle& oracle,
                           const DynamicsConfig& config = {});

}  // namespace bgnd
