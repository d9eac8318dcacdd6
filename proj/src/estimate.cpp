#include "bgnd/estimate.hpp"

#include <algorithm>
#include <cmath>

#include "bgnd/error.hpp"

namespace bgnd {

namespace {

double share_at(const CostFunction& cost, double load) {
  double total = 0.0;
  for (const auto& term : cost.terms) total += term.coefficient * std::pow(load, term.exponent - 1.0);
  return total;
}

std::vector<double> others_inclusion(const Instance& instance, std::size_t agent, ResourceIndex e,
                                     const StrategyProfile& strategies) {
  std::vector<double> probs;
  probs.reserve(instance.agent_count());
  for (std::size_t other = 0; other < instance.agent_count(); ++other)
    if (other != agent) probs.push_back(inclusion_prob(instance, other, strategies[other], e));
  return probs;
}

}  // namespace

std::vector<double> poisson_binomial(std::span<const double> probs) {
  std::vector<double> dist(probs.size() + 1, 0.0);
  dist[0] = 1.0;
  std::size_t used = 0;
  for (double p : probs) {
    ++used;
    for (std::size_t k = used; k > 0; --k) dist[k] = dist[k] * (1.0 - p) + dist[k - 1] * p;
    dist[0] *= 1.0 - p;
  }
  return dist;
}

double inclusion_prob(const Instance& instance, std::size_t agent, const Strategy& strategy,
                      ResourceIndex e) {
  const auto& prior = instance.agents[agent].prior;
  double total = 0.0;
  for (std::size_t t = 0; t < strategy.size(); ++t)
    if (strategy[t].contains(e)) total += prior[t];
  return std::min(total, 1.0);
}

std::vector<std::vector<double>> inclusion_table(const Instance& instance,
                                                 const StrategyProfile& strategies) {
  std::vector<std::vector<double>> table(instance.agent_count(),
                                         std::vector<double>(instance.resource_count(), 0.0));
  for (std::size_t i = 0; i < instance.agent_count(); ++i) {
    const auto& prior = instance.agents[i].prior;
    for (std::size_t t = 0; t < strategies[i].size(); ++t)
      for (ResourceIndex e : strategies[i][t]) table[i][e] += prior[t];
    for (double& p : table[i]) p = std::min(p, 1.0);
  }
  return table;
}

double estimate_cost_share(const Instance& instance, std::size_t agent, ResourceIndex e,
                           const StrategyProfile& strategies) {
  double expected_others = 0.0;
  for (std::size_t other = 0; other < instance.agent_count(); ++other)
    if (other != agent) expected_others += inclusion_prob(instance, other, strategies[other], e);
  return share_at(instance.resources[e].cost, 1.0 + expected_others);
}

WeightVector estimated_share_weights(const Instance& instance, std::size_t agent,
                                     const StrategyProfile& strategies) {
  std::vector<double> expected_others(instance.resource_count(), 0.0);
  for (std::size_t other = 0; other < instance.agent_count(); ++other) {
    if (other == agent) continue;
    const auto& prior = instance.agents[other].prior;
    for (std::size_t t = 0; t < strategies[other].size(); ++t)
      for (ResourceIndex e : strategies[other][t]) expected_others[e] += prior[t];
  }
  WeightVector weights(instance.resource_count());
  for (std::size_t e = 0; e < weights.size(); ++e)
    weights[e] = share_at(instance.resources[e].cost, 1.0 + expected_others[e]);
  return weights;
}

double exact_cost_share(const Instance& instance, std::size_t agent, ResourceIndex e,
                        const StrategyProfile& strategies) {
  const auto probs = others_inclusion(instance, agent, e, strategies);
  const auto dist = poisson_binomial(probs);
  const auto& cost = instance.resources[e].cost;
  double total = 0.0;
  for (std::size_t k = 0; k < dist.size(); ++k) total += dist[k] * cost.share(k + 1);
  return total;
}

double bell_fractional(double z) {
  // e^-1 * sum_{k>=1} k^z / k!, summed in log space. Terms rise to a single
  // peak and then decay super-exponentially.
  double sum = 0.0;
  int small_run = 0;
  for (int k = 1; k < 10000; ++k) {
    const double term = std::exp(z * std::log(static_cast<double>(k)) - std::lgamma(k + 1.0) - 1.0);
    sum += term;
    if (term < 1e-15 * sum) {
      if (++small_run == 3) break;
    } else {
      small_run = 0;
    }
  }
  return sum;
}

double b_const_root(double z) {
  if (!(z > 0.0 && z < 1.0)) throw UnsupportedError("b_const: z must lie in (0, 1)");
  const auto cubic = [z](double b) { return 2.0 * b * b * b - (z + 2.0) * b * b - 2.0; };
  double lo = 1.0 + 1e-9;
  double hi = z + 3.0;
  if (!(cubic(lo) < 0.0 && cubic(hi) > 0.0))
    throw InvariantViolation("b_const: bracket does not straddle the root");
  for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
    const double mid = 0.5 * (lo + hi);
    (cubic(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double b_const(double z) {
  const double beta = b_const_root(z);
  return (beta * beta + 1.0) * std::pow(1.0 - 1.0 / beta, -z);
}

EstimationParams estimation_params(const Instance& instance) {
  EstimationParams out;
  for (const auto& resource : instance.resources) {
    for (const auto& term : resource.cost.terms) {
      const double a = term.exponent;
      if (a > 1.0 && a < 2.0) out.eta_low = std::max(out.eta_low, b_const(a - 1.0));
      if (a >= 2.0) out.eta_high = std::max(out.eta_high, bell_fractional(a - 1.0));
    }
  }
  return out;
}

double estimated_individual_cost(const Instance& instance, std::size_t agent, std::size_t type,
                                 const StrategyProfile& strategies) {
  const auto weights = estimated_share_weights(instance, agent, strategies);
  return total_weight(strategies[agent][type], weights);
}

double estimated_type_averaged_cost(const Instance& instance, std::size_t agent,
                                    const StrategyProfile& strategies) {
  const auto weights = estimated_share_weights(instance, agent, strategies);
  const auto& prior = instance.agents[agent].prior;
  double total = 0.0;
  for (std::size_t t = 0; t < prior.size(); ++t)
    total += prior[t] * total_weight(strategies[agent][t], weights);
  return total;
}

double exact_individual_cost(const Instance& instance, std::size_t agent,
                             const StrategyProfile& strategies) {
  std::vector<double> share(instance.resource_count(), -1.0);
  const auto& prior = instance.agents[agent].prior;
  double total = 0.0;
  for (std::size_t t = 0; t < prior.size(); ++t) {
    for (ResourceIndex e : strategies[agent][t]) {
      if (share[e] < 0.0) share[e] = exact_cost_share(instance, agent, e, strategies);
      total += prior[t] * share[e];
    }
  }
  return total;
}

}  // namespace bgnd
