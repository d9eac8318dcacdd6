#include "bgnd/dynamics.hpp"

#include "bgnd/error.hpp"
#include "bgnd/estimate.hpp"
#include "bgnd/eval.hpp"
#include "bgnd/parallel.hpp"

namespace bgnd {

namespace {

Diagnostics diagnose(const Instance& instance, const StrategyProfile& strategies) {
  return {potential_expected(instance, strategies), exact_social_cost(instance, strategies)};
}

}  // namespace

const char* to_string(Termination reason) {
  return reason == Termination::Converged ? "converged" : "round-cap";
}

StrategyProfile initial_profile(const Instance& instance, const ActionOracle& oracle) {
  WeightVector solo(instance.resource_count());
  for (std::size_t e = 0; e < solo.size(); ++e) solo[e] = instance.resources[e].cost.solo_share();
  StrategyProfile out(instance.agent_count());
  for (std::size_t i = 0; i < out.size(); ++i)
    for (const auto& request : instance.agents[i].types)
      out[i].push_back(oracle.best_action(request, solo, instance.graph_ptr()));
  return out;
}

AbrResult compute_abr(const Instance& instance, std::size_t agent,
                      const StrategyProfile& strategies, const ActionOracle& oracle) {
  const auto weights = estimated_share_weights(instance, agent, strategies);
  const auto& types = instance.agents[agent].types;
  const auto& prior = instance.agents[agent].prior;
  AbrResult out;
  out.strategy.reserve(types.size());
  for (std::size_t t = 0; t < types.size(); ++t) {
    out.strategy.push_back(oracle.best_action(types[t], weights, instance.graph_ptr()));
    out.estimated_cost += prior[t] * total_weight(out.strategy.back(), weights);
    out.estimated_current += prior[t] * total_weight(strategies[agent][t], weights);
  }
  return out;
}

std::optional<std::size_t> select_agent(const std::vector<double>& delta) {
  // Extended precision keeps N * delta_i exact and the sum monotone, so the
  // largest positive delta always clears the average.
  long double total = 0.0L;
  bool any_positive = false;
  for (double d : delta) {
    total += d;
    any_positive = any_positive || d > 0.0;
  }
  if (!any_positive) return std::nullopt;
  const long double n = static_cast<long double>(delta.size());
  for (std::size_t i = 0; i < delta.size(); ++i)
    if (delta[i] > 0.0 && static_cast<long double>(delta[i]) * n >= total) return i;
  throw InvariantViolation("no agent reaches the average improvement although one improves");
}

DynamicsTrace run_dynamics(const Instance& instance, const ActionOracle& oracle,
                           const DynamicsConfig& config) {
  instance.validate();
  DynamicsTrace trace;
  trace.constants = game_constants(instance, oracle.describe(instance).rho);
  trace.round_cap = config.rounds.value_or(trace.constants.R);
  const double eta = trace.constants.eta_product();
  const std::size_t n = instance.agent_count();

  StrategyProfile current = initial_profile(instance, oracle);
  trace.initial = current;
  if (config.diagnostics) trace.initial_diagnostics = diagnose(instance, current);

  std::vector<AbrResult> responses(n);
  for (std::uint64_t r = 1; r <= trace.round_cap; ++r) {
    parallel_for(n, config.threads,
                 [&](std::size_t i) { responses[i] = compute_abr(instance, i, current, oracle); });
    RoundRecord record;
    record.round = r;
    record.delta.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      record.estimated_current.push_back(responses[i].estimated_current);
      record.estimated_abr.push_back(responses[i].estimated_cost);
      record.delta[i] = responses[i].estimated_current - eta * responses[i].estimated_cost;
    }
    record.chosen = select_agent(record.delta);
    if (record.chosen) current[*record.chosen] = std::move(responses[*record.chosen].strategy);
    if (config.diagnostics) record.after = diagnose(instance, current);
    const bool converged = !record.chosen;
    trace.rounds.push_back(std::move(record));
    if (converged) {
      trace.termination = Termination::Converged;
      break;
    }
  }
  trace.final_profile = std::move(current);
  return trace;
}

}  // namespace bgnd
