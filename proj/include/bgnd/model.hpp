#pragma once

// Core domain types for Bayesian generalized network design instances and
// the exact arithmetic of a realized action profile (loads, costs, shares).

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace bgnd {

using ResourceIndex = std::size_t;
using NodeIndex = std::size_t;

struct CostTerm {
  double coefficient = 1.0;  // > 0
  double exponent = 1.0;     // >= 1
  friend bool operator==(const CostTerm&, const CostTerm&) = default;
};

// F(l) = sum_j coefficient_j * l^exponent_j.
struct CostFunction {
  std::vector<CostTerm> terms;

  double operator()(std::size_t load) const;

  // Equal share of one user when `load` users are present:
  // sum_j coefficient_j * load^(exponent_j - 1). Zero when load == 0.
  double share(std::size_t load) const;

  // sum_j coefficient_j, the share of an agent using the resource alone.
  double solo_share() const;

  double max_exponent() const;

  friend bool operator==(const CostFunction&, const CostFunction&) = default;
};

double eval_cost(const CostFunction& cost, std::size_t load);

struct Resource {
  std::string id;
  CostFunction cost;
  friend bool operator==(const Resource&, const Resource&) = default;
};

struct Edge {
  NodeIndex from = 0;
  NodeIndex to = 0;
  ResourceIndex resource = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Graph {
  std::size_t node_count = 0;
  bool directed = false;
  std::vector<Edge> edges;
  friend bool operator==(const Graph&, const Graph&) = default;
};

// An action is a set of resources, kept sorted and duplicate free.
class Action {
public:
  Action() = default;
  explicit Action(std::vector<ResourceIndex> resources);

  const std::vector<ResourceIndex>& resources() const noexcept { return resources_; }
  bool contains(ResourceIndex e) const;
  bool empty() const noexcept { return resources_.empty(); }
  std::size_t size() const noexcept { return resources_.size(); }

  auto begin() const noexcept { return resources_.begin(); }
  auto end() const noexcept { return resources_.end(); }

  friend bool operator==(const Action&, const Action&) = default;
  friend auto operator<=>(const Action&, const Action&) = default;

private:
  std::vector<ResourceIndex> resources_;
};

struct RoutingRequest {
  NodeIndex source = 0;
  NodeIndex target = 0;
  friend bool operator==(const RoutingRequest&, const RoutingRequest&) = default;
};

struct SetConnectivityRequest {
  std::vector<NodeIndex> terminals;  // size >= 2
  friend bool operator==(const SetConnectivityRequest&, const SetConnectivityRequest&) = default;
};

struct ExplicitRequest {
  std::vector<Action> actions;  // nonempty, each action nonempty
  friend bool operator==(const ExplicitRequest&, const ExplicitRequest&) = default;
};

using Request = std::variant<RoutingRequest, SetConnectivityRequest, ExplicitRequest>;

struct Agent {
  std::vector<Request> types;
  std::vector<double> prior;
  friend bool operator==(const Agent&, const Agent&) = default;
};

struct Instance {
  std::vector<Resource> resources;
  std::optional<Graph> graph;
  std::vector<Agent> agents;

  std::size_t agent_count() const noexcept { return agents.size(); }
  std::size_t resource_count() const noexcept { return resources.size(); }
  const Graph* graph_ptr() const noexcept { return graph ? &*graph : nullptr; }

  // Largest exponent over every term of every resource.
  double max_exponent() const;

  // Every invariant violation found, empty when the instance is valid.
  std::vector<std::string> violations() const;

  // Throws ValidationError listing every violation.
  void validate() const;

  friend bool operator==(const Instance&, const Instance&) = default;
};

using ActionProfile = std::vector<Action>;  // one action per agent
using TypeProfile = std::vector<std::size_t>;  // one type index per agent
using Strategy = std::vector<Action>;  // indexed by type
using StrategyProfile = std::vector<Strategy>;  // indexed by agent

std::size_t load(const ActionProfile& profile, ResourceIndex e);

// Loads of every resource under `profile`.
std::vector<std::size_t> loads(const Instance& instance, const ActionProfile& profile);

double cost_share(const Instance& instance, std::size_t agent, const ActionProfile& profile,
                  ResourceIndex e);

double realized_social_cost(const Instance& instance, const ActionProfile& profile);

// Membership of `action` in the action set of `request`.
// Throws UnsupportedError for graph-based requests when `graph` is null.
bool feasible(const Request& request, const Action& action, const Graph* graph);

// The action profile a strategy profile plays under the type profile `types`.
ActionProfile realize(const StrategyProfile& strategies, const TypeProfile& types);

// Throws ValidationError unless `strategies` maps every type of every agent
// to a feasible action.
void check_strategy_profile(const Instance& instance, const StrategyProfile& strategies);

}  // namespace bgnd
