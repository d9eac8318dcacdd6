#pragma once

// Exact desk-scale evaluation: expected social cost of strategy tables,
// brute-force omniscient optimum per type profile, and the empirical
// competitive ratio against its theoretical bound.

#include <cstdint>
#include <functional>
#include <vector>

#include "bgnd/gametheory.hpp"
#include "bgnd/model.hpp"

namespace bgnd {

struct EnumerationCaps {
  std::uint64_t max_profiles = 100'000;            // type profiles in E[OPT]
  std::uint64_t max_action_product = 10'000'000;   // action profiles per OPT(t)
  std::size_t max_subset_edges = 20;               // set-connectivity subset scan
};

// E_t[ sum_e F_e(load_e) ] via per-resource Poisson-binomial load laws.
double exact_social_cost(const Instance& instance, const StrategyProfile& strategies);

// Every candidate action that can be optimal for `request`, sorted:
// listed actions, all simple paths, or all minimal connecting edge sets.
std::vector<Action> candidate_actions(const Instance& instance, const Request& request,
                                      const EnumerationCaps& caps = {});

std::uint64_t type_profile_count(const Instance& instance);

// Calls fn(types, probability) for every type profile, last agent fastest.
void for_each_type_profile(const Instance& instance,
                           const std::function<void(const TypeProfile&, double)>& fn);

struct OptResult {
  ActionProfile profile;
  double cost = 0.0;
};

// Exhaustive minimum of the realized social cost over the action sets of
// `types`; the lexicographically first minimizer wins ties.
OptResult brute_force_opt(const Instance& instance, const TypeProfile& types,
                          const EnumerationCaps& caps = {});

struct ProfileOpt {
  TypeProfile types;
  double probability = 0.0;
  double opt = 0.0;
};

struct ExpectedOpt {
  double value = 0.0;
  std::vector<ProfileOpt> profiles;
};

ExpectedOpt expected_opt(const Instance& instance, const EnumerationCaps& caps = {},
                         std::size_t threads = 1);

struct BcrReport {
  double exact_cost = 0.0;
  double expected_opt = 0.0;
  double empirical_bcr = 1.0;
  double theoretical_bound = 0.0;
  std::vector<ProfileOpt> profiles;

  bool bound_holds() const { return empirical_bcr <= theoretical_bound + 1e-6; }
};

BcrReport bcr_report(const Instance& instance, const StrategyProfile& strategies,
                     const GameConstants& constants, const EnumerationCaps& caps = {},
                     std::size_t threads = 1);

}  // namespace bgnd
