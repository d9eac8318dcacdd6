#include "bgnd/gametheory.hpp"

#include <algorithm>
#include <cmath>

#include "bgnd/error.hpp"

namespace bgnd {

namespace {

// Bisection for a function that is positive at lo and negative at hi.
template <class F>
double bisect_sign_change(F&& f, double lo, double hi) {
  if (!(f(lo) > 0.0 && f(hi) < 0.0)) throw InvariantViolation("bisection bracket has no sign change");
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (f(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double GameConstants::bcr_bound() const {
  const double s = smoothness.scale;
  return 2.0 * static_cast<double>(K) * s * smoothness.lambda / (1.0 - s * smoothness.mu);
}

double GameConstants::converged_bound() const {
  const double s = smoothness.scale;
  return s * smoothness.lambda / (1.0 - s * smoothness.mu);
}

double gamma_root(double alpha_max) {
  if (!(alpha_max > 1.0)) throw UnsupportedError("gamma_root: alpha_max must exceed 1");
  const auto f = [alpha_max](double x) {
    return std::pow(x + 1.0, alpha_max - 1.0) - std::pow(x, alpha_max);
  };
  return bisect_sign_change(f, 1e-9, std::max(4.0, 2.0 * alpha_max));
}

SmoothnessParams smoothness_params(double alpha_max, double rho, double eta_low, double eta_high) {
  if (!(alpha_max > 1.0)) throw UnsupportedError("smoothness_params: alpha_max must exceed 1");
  if (!(rho >= 1.0 && eta_low >= 1.0 && eta_high >= 1.0))
    throw UnsupportedError("smoothness_params: rho and eta must be at least 1");
  const double a = alpha_max;
  SmoothnessParams out;
  out.scale = rho * (eta_low * eta_high) * (eta_low * eta_high);
  out.gamma = gamma_root(a);
  const double x0 = out.scale * out.gamma;
  out.mu = (a - 1.0) * std::pow(x0 + 1.0, a - 2.0) / (a * std::pow(x0, a - 1.0));
  out.lambda = std::pow(x0 + 1.0, a - 1.0) - out.mu * std::pow(x0, a);
  if (!(out.scale * out.mu < 1.0 - 1.0 / a))
    throw InvariantViolation("smoothness: rho (eta_low eta_high)^2 mu >= 1 - 1/alpha_max");
  if (!(out.lambda / (1.0 - out.mu) >= 1.0))
    throw InvariantViolation("smoothness: lambda / (1 - mu) < 1");
  return out;
}

GameConstants game_constants(double alpha_max, std::size_t agents, double rho,
                             const EstimationParams& eta) {
  if (agents == 0) throw UnsupportedError("game_constants: no agents");
  GameConstants out;
  out.rho = rho;
  out.eta_low = eta.eta_low;
  out.eta_high = eta.eta_high;
  out.alpha_max = alpha_max;
  out.agents = agents;
  out.smoothness = smoothness_params(alpha_max, rho, eta.eta_low, eta.eta_high);
  out.K = static_cast<std::uint64_t>(std::ceil(alpha_max));
  const double n = static_cast<double>(agents);
  out.Q = 2.0 * out.eta_product() * n / (1.0 - out.smoothness.scale * out.smoothness.mu);
  const double log_term = std::log(static_cast<double>(out.K)) + (alpha_max - 1.0) * std::log(n);
  out.R = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(out.Q * log_term)));
  return out;
}

GameConstants game_constants(const Instance& instance, double rho) {
  return game_constants(instance.max_exponent(), instance.agent_count(), rho,
                        estimation_params(instance));
}

bool verify_smoothness_inequality(double lambda, double mu, std::span<const double> alphas,
                                  int x_max) {
  for (double a : alphas) {
    for (int xi = 0; xi <= x_max; ++xi) {
      for (int yi = 0; yi <= x_max; ++yi) {
        const double x = xi;
        const double y = yi;
        const double lhs = yi == 0 ? 0.0 : y * std::pow(x + y, a - 1.0);
        const double rhs = lambda * std::pow(y, a) + mu * std::pow(x, a);
        if (rhs - lhs < -1e-9 * std::max(1.0, lhs)) return false;
      }
    }
  }
  return true;
}

double potential_realized(const Instance& instance, const TypeProfile& types,
                          const ActionProfile& profile) {
  if (types.size() != instance.agent_count() || profile.size() != instance.agent_count())
    throw ValidationError({"type or action profile does not cover every agent"});
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const auto& agent = instance.agents[i];
    if (types[i] >= agent.types.size() ||
        !feasible(agent.types[types[i]], profile[i], instance.graph_ptr()))
      throw ValidationError({"agent " + std::to_string(i) + " plays an infeasible action"});
  }
  const auto l = loads(instance, profile);
  double total = 0.0;
  for (std::size_t e = 0; e < l.size(); ++e)
    for (std::size_t k = 1; k <= l[e]; ++k) total += instance.resources[e].cost.share(k);
  return total;
}

double potential_expected(const Instance& instance, const StrategyProfile& strategies) {
  const auto table = inclusion_table(instance, strategies);
  std::vector<double> probs(instance.agent_count());
  double total = 0.0;
  for (std::size_t e = 0; e < instance.resource_count(); ++e) {
    for (std::size_t i = 0; i < probs.size(); ++i) probs[i] = table[i][e];
    const auto dist = poisson_binomial(probs);
    const auto& cost = instance.resources[e].cost;
    double partial = 0.0;  // sum_{k=1}^{L} share(k)
    for (std::size_t l = 1; l < dist.size(); ++l) {
      partial += cost.share(l);
      total += dist[l] * partial;
    }
  }
  return total;
}

}  // namespace bgnd
