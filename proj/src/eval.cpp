#include "bgnd/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bgnd/error.hpp"
#include "bgnd/estimate.hpp"
#include "bgnd/parallel.hpp"

namespace bgnd {

namespace {

void simple_paths(const std::vector<std::vector<std::pair<NodeIndex, ResourceIndex>>>& arcs,
                  NodeIndex node, NodeIndex target, std::vector<bool>& on_path,
                  std::vector<ResourceIndex>& edges, std::vector<Action>& out,
                  std::uint64_t cap) {
  if (node == target) {
    out.emplace_back(edges);
    if (out.size() > cap) throw TooLargeError("too many simple paths to enumerate");
    return;
  }
  for (const auto& [next, resource] : arcs[node]) {
    if (on_path[next]) continue;
    on_path[next] = true;
    edges.push_back(resource);
    simple_paths(arcs, next, target, on_path, edges, out, cap);
    edges.pop_back();
    on_path[next] = false;
  }
}

std::vector<Action> routing_candidates(const Graph& graph, const RoutingRequest& req,
                                       const EnumerationCaps& caps) {
  if (req.source == req.target) return {Action{}};
  std::vector<std::vector<std::pair<NodeIndex, ResourceIndex>>> arcs(graph.node_count);
  for (const auto& edge : graph.edges) {
    arcs[edge.from].emplace_back(edge.to, edge.resource);
    if (!graph.directed) arcs[edge.to].emplace_back(edge.from, edge.resource);
  }
  std::vector<bool> on_path(graph.node_count, false);
  std::vector<ResourceIndex> edges;
  std::vector<Action> out;
  on_path[req.source] = true;
  simple_paths(arcs, req.source, req.target, on_path, edges, out, caps.max_action_product);
  return out;
}

std::vector<Action> connectivity_candidates(const Graph& graph, const SetConnectivityRequest& req,
                                            const EnumerationCaps& caps) {
  const std::size_t m = graph.edges.size();
  if (m > caps.max_subset_edges || m >= 63)
    throw TooLargeError("graph has too many edges for set-connectivity enumeration");
  const Request request = req;
  const auto as_action = [&](std::uint64_t mask) {
    std::vector<ResourceIndex> ids;
    for (std::size_t k = 0; k < m; ++k)
      if (mask >> k & 1U) ids.push_back(graph.edges[k].resource);
    return Action(std::move(ids));
  };
  std::vector<Action> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    if (!feasible(request, as_action(mask), &graph)) continue;
    bool minimal = true;
    for (std::size_t k = 0; k < m && minimal; ++k)
      if (mask >> k & 1U) minimal = !feasible(request, as_action(mask & ~(std::uint64_t{1} << k)), &graph);
    if (minimal) {
      out.push_back(as_action(mask));
      if (out.size() > caps.max_action_product)
        throw TooLargeError("too many connecting edge sets to enumerate");
    }
  }
  return out;
}

// Depth-first search over agents with incremental loads. A partial
// assignment's cost is a lower bound on any completion because every cost
// function is nondecreasing in its load.
class OptSearch {
public:
  OptSearch(const Instance& instance, const std::vector<const std::vector<Action>*>& candidates)
      : instance_(instance), candidates_(candidates), loads_(instance.resource_count(), 0),
        choice_(candidates.size(), 0) {}

  OptResult run() {
    descend(0, 0.0);
    OptResult out;
    out.cost = best_cost_;
    for (std::size_t i = 0; i < best_choice_.size(); ++i)
      out.profile.push_back((*candidates_[i])[best_choice_[i]]);
    return out;
  }

private:
  void descend(std::size_t agent, double partial) {
    if (found_ && partial > best_cost_ * (1.0 + 1e-12) + 1e-12) return;
    if (agent == candidates_.size()) {
      double cost = 0.0;
      for (std::size_t e = 0; e < loads_.size(); ++e) cost += instance_.resources[e].cost(loads_[e]);
      if (!found_ || cost < best_cost_) {
        found_ = true;
        best_cost_ = cost;
        best_choice_ = choice_;
      }
      return;
    }
    const auto& options = *candidates_[agent];
    for (std::size_t k = 0; k < options.size(); ++k) {
      double added = 0.0;
      for (ResourceIndex e : options[k]) {
        const auto& cost = instance_.resources[e].cost;
        added += cost(loads_[e] + 1) - cost(loads_[e]);
        ++loads_[e];
      }
      choice_[agent] = k;
      descend(agent + 1, partial + added);
      for (ResourceIndex e : options[k]) --loads_[e];
    }
  }

  const Instance& instance_;
  const std::vector<const std::vector<Action>*>& candidates_;
  std::vector<std::size_t> loads_;
  std::vector<std::size_t> choice_;
  std::vector<std::size_t> best_choice_;
  double best_cost_ = 0.0;
  bool found_ = false;
};

using CandidateTable = std::vector<std::vector<std::vector<Action>>>;  // [agent][type]

CandidateTable all_candidates(const Instance& instance, const EnumerationCaps& caps) {
  CandidateTable table(instance.agent_count());
  for (std::size_t i = 0; i < instance.agent_count(); ++i) {
    for (std::size_t t = 0; t < instance.agents[i].types.size(); ++t) {
      table[i].push_back(candidate_actions(instance, instance.agents[i].types[t], caps));
      if (table[i].back().empty())
        throw UnsatisfiableError("agent " + std::to_string(i) + " type " + std::to_string(t) +
                                 " has no feasible action");
    }
  }
  return table;
}

OptResult solve_profile(const Instance& instance, const CandidateTable& table,
                        const TypeProfile& types, const EnumerationCaps& caps) {
  std::vector<const std::vector<Action>*> options;
  double product = 1.0;
  for (std::size_t i = 0; i < types.size(); ++i) {
    options.push_back(&table[i][types[i]]);
    product *= static_cast<double>(options.back()->size());
  }
  if (product > static_cast<double>(caps.max_action_product))
    throw TooLargeError("action-profile space exceeds the enumeration cap");
  return OptSearch(instance, options).run();
}

}  // namespace

double exact_social_cost(const Instance& instance, const StrategyProfile& strategies) {
  const auto table = inclusion_table(instance, strategies);
  std::vector<double> probs(instance.agent_count());
  double total = 0.0;
  for (std::size_t e = 0; e < instance.resource_count(); ++e) {
    for (std::size_t i = 0; i < probs.size(); ++i) probs[i] = table[i][e];
    const auto dist = poisson_binomial(probs);
    for (std::size_t l = 1; l < dist.size(); ++l) total += dist[l] * instance.resources[e].cost(l);
  }
  return total;
}

std::vector<Action> candidate_actions(const Instance& instance, const Request& request,
                                      const EnumerationCaps& caps) {
  std::vector<Action> out = std::visit(
      [&](const auto& req) -> std::vector<Action> {
        using T = std::decay_t<decltype(req)>;
        if constexpr (std::is_same_v<T, ExplicitRequest>) {
          return req.actions;
        } else {
          if (!instance.graph) throw UnsupportedError("graph-based request without a graph");
          if constexpr (std::is_same_v<T, RoutingRequest>)
            return routing_candidates(*instance.graph, req, caps);
          else
            return connectivity_candidates(*instance.graph, req, caps);
        }
      },
      request);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::uint64_t type_profile_count(const Instance& instance) {
  std::uint64_t count = 1;
  for (const auto& agent : instance.agents) {
    const std::uint64_t k = agent.types.size();
    if (k != 0 && count > std::numeric_limits<std::uint64_t>::max() / k)
      return std::numeric_limits<std::uint64_t>::max();
    count *= k;
  }
  return count;
}

void for_each_type_profile(const Instance& instance,
                           const std::function<void(const TypeProfile&, double)>& fn) {
  const std::size_t n = instance.agent_count();
  TypeProfile types(n, 0);
  while (true) {
    double p = 1.0;
    for (std::size_t i = 0; i < n; ++i) p *= instance.agents[i].prior[types[i]];
    fn(types, p);
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++types[i] < instance.agents[i].types.size()) break;
      types[i] = 0;
      if (i == 0) return;
    }
    if (n == 0) return;
  }
}

OptResult brute_force_opt(const Instance& instance, const TypeProfile& types,
                          const EnumerationCaps& caps) {
  if (types.size() != instance.agent_count())
    throw ValidationError({"type profile does not cover every agent"});
  CandidateTable table(instance.agent_count());
  for (std::size_t i = 0; i < types.size(); ++i) {
    table[i].resize(instance.agents[i].types.size());
    table[i][types[i]] = candidate_actions(instance, instance.agents[i].types[types[i]], caps);
    if (table[i][types[i]].empty())
      throw UnsatisfiableError("agent " + std::to_string(i) + " has no feasible action");
  }
  return solve_profile(instance, table, types, caps);
}

ExpectedOpt expected_opt(const Instance& instance, const EnumerationCaps& caps,
                         std::size_t threads) {
  if (type_profile_count(instance) > caps.max_profiles)
    throw TooLargeError("number of type profiles exceeds the enumeration cap");
  const auto table = all_candidates(instance, caps);
  ExpectedOpt out;
  for_each_type_profile(instance, [&](const TypeProfile& types, double p) {
    out.profiles.push_back({types, p, 0.0});
  });
  parallel_for(out.profiles.size(), threads, [&](std::size_t k) {
    out.profiles[k].opt = solve_profile(instance, table, out.profiles[k].types, caps).cost;
  });
  for (const auto& profile : out.profiles) out.value += profile.probability * profile.opt;
  return out;
}

BcrReport bcr_report(const Instance& instance, const StrategyProfile& strategies,
                     const GameConstants& constants, const EnumerationCaps& caps,
                     std::size_t threads) {
  BcrReport out;
  out.exact_cost = exact_social_cost(instance, strategies);
  auto opt = expected_opt(instance, caps, threads);
  out.expected_opt = opt.value;
  out.profiles = std::move(opt.profiles);
  if (out.expected_opt > 0.0)
    out.empirical_bcr = out.exact_cost / out.expected_opt;
  else
    out.empirical_bcr = out.exact_cost > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
  out.theoretical_bound = constants.bcr_bound();
  return out;
}

}  // namespace bgnd
