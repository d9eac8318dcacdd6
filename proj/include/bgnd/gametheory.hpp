#pragma once

#include <cstdint>
#include <span>

#include "bgnd/estimate.hpp"
#include "bgnd/model.hpp"

namespace bgnd {

struct SmoothnessParams {
  double lambda = 0.0;
  double mu = 0.0;
  double gamma = 0.0;  // positive root of (x + 1)^(a - 1) = x^a
  double scale = 1.0;  // rho * (eta_low * eta_high)^2
};

// Everything the round bound and the competitive-ratio bound depend on.
struct GameConstants {
  double rho = 1.0;
  double eta_low = 1.0;
  double eta_high = 1.0;
  double alpha_max = 2.0;
  std::size_t agents = 1;
  SmoothnessParams smoothness;
  std::uint64_t K = 2;  // ceil(alpha_max)
  double Q = 0.0;
  std::uint64_t R = 1;

  double eta_product() const noexcept { return eta_low * eta_high; }

  // 2 K scale lambda / (1 - scale mu): guaranteed ratio of the dynamics'
  // output cost to the expected omniscient optimum.
  double bcr_bound() const;

  // scale lambda / (1 - scale mu): ratio guaranteed when the dynamics converge.
  double converged_bound() const;
};

double gamma_root(double alpha_max);

SmoothnessParams smoothness_params(double alpha_max, double rho, double eta_low, double eta_high);

GameConstants game_constants(double alpha_max, std::size_t agents, double rho,
                             const EstimationParams& eta);

GameConstants game_constants(const Instance& instance, double rho);

// y (x + y)^(a - 1) <= lambda y^a + mu x^a on the integer grid [0, x_max]^2
// for every exponent, up to a relative slack of 1e-9.
bool verify_smoothness_inequality(double lambda, double mu, std::span<const double> alphas,
                                  int x_max = 50);

// sum_e sum_{l=1}^{load_e} sum_j coefficient_j l^(exponent_j - 1). Throws
// ValidationError when the profile is not feasible for the type profile.
double potential_realized(const Instance& instance, const TypeProfile& types,
                          const ActionProfile& profile);

// Expected potential over the prior, exact via per-resource load distributions.
double potential_expected(const Instance& instance, const StrategyProfile& strategies);

}  // namespace bgnd
