#pragma once

// Expected cost-share estimation. The closed-form estimator replaces the
// random load of the other agents on a resource by its mean; the exact
// counterpart integrates over the Poisson-binomial load distribution.

#include <span>
#include <vector>

#include "bgnd/model.hpp"
#include "bgnd/oracle.hpp"

namespace bgnd {

struct EstimationParams {
  double eta_low = 1.0;   // estimate / eta_low <= exact
  double eta_high = 1.0;  // exact <= estimate * eta_high
};

// P[S = k] for k = 0..probs.size(), S a sum of independent Bernoulli(probs).
std::vector<double> poisson_binomial(std::span<const double> probs);

// Probability that agent `agent` (playing `strategy`) uses resource e.
double inclusion_prob(const Instance& instance, std::size_t agent, const Strategy& strategy,
                      ResourceIndex e);

// Row per agent, column per resource.
std::vector<std::vector<double>> inclusion_table(const Instance& instance,
                                                 const StrategyProfile& strategies);

// Estimated expected share of `agent` on e given the others' strategies.
// strategies[agent] is ignored.
double estimate_cost_share(const Instance& instance, std::size_t agent, ResourceIndex e,
                           const StrategyProfile& strategies);

// The estimate for every resource at once, in a single pass over the other
// agents' types: O(q * M + sum_i |T_i| * |action|).
WeightVector estimated_share_weights(const Instance& instance, std::size_t agent,
                                     const StrategyProfile& strategies);

// Exact expected share of `agent` on e when it uses e; strategies[agent] is
// ignored.
double exact_cost_share(const Instance& instance, std::size_t agent, ResourceIndex e,
                        const StrategyProfile& strategies);

// Fractional Bell number: E[P^z] for P ~ Poisson(1), by Dobinski's series.
double bell_fractional(double z);

// Root in (1, inf) of 2b^3 - (z + 2)b^2 - 2 = 0, z in (0, 1).
double b_const_root(double z);

// (beta^2 + 1)(1 - 1/beta)^-z at the root above; throws UnsupportedError
// for z outside (0, 1).
double b_const(double z);

EstimationParams estimation_params(const Instance& instance);

double estimated_individual_cost(const Instance& instance, std::size_t agent,
                                 std::size_t type, const StrategyProfile& strategies);
double estimated_type_averaged_cost(const Instance& instance, std::size_t agent,
                                    const StrategyProfile& strategies);

// Exact expected individual cost C_i(s).
double exact_individual_cost(const Instance& instance, std::size_t agent,
                             const StrategyProfile& strategies);

}  // namespace bgnd
