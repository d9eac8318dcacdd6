#pragma once

#include <vector>

#include "bgnd/model.hpp"

namespace bgnd {

// Nonnegative weight per resource, indexed by ResourceIndex.
using WeightVector = std::vector<double>;

double total_weight(const Action& action, const WeightVector& weights);

enum class OracleKind {
  Auto,          // dispatch per request kind
  ShortestPath,  // routing, exact
  SteinerMst,    // undirected set connectivity, factor 2
  Explicit,      // explicit action lists, exact
};

const char* to_string(OracleKind kind);
OracleKind oracle_kind_from_string(const std::string& name);

struct OracleDescriptor {
  OracleKind kind = OracleKind::Auto;
  double rho = 1.0;
};

// Minimum-weight u->v path. Among minimum-weight paths the one with the
// fewest edges wins, then the lexicographically smallest node sequence,
// then the smallest resource index on parallel edges.
// Throws UnsatisfiableError when v is unreachable from u.
Action shortest_path(const Graph& graph, NodeIndex source, NodeIndex target,
                     const WeightVector& weights);

// Metric-closure MST approximation of the minimum Steiner tree spanning
// `terminals`, with non-terminal leaves pruned. Weight is at most twice the
// optimum. Throws UnsupportedError on directed graphs and UnsatisfiableError
// when the terminals are not connected.
Action steiner_mst(const Graph& graph, const std::vector<NodeIndex>& terminals,
                   const WeightVector& weights);

// Cheapest listed action; ties go to the lexicographically smallest action.
Action explicit_argmin(const ExplicitRequest& request, const WeightVector& weights);

// Action rho-oracle. Explicit requests are always answered exactly; graph
// requests need the matching kind (or Auto).
class ActionOracle {
public:
  explicit ActionOracle(OracleKind kind = OracleKind::Auto) : kind_(kind) {}

  OracleKind kind() const noexcept { return kind_; }

  // Approximation guarantee this oracle offers on the requests of `instance`.
  // Throws UnsupportedError if some request cannot be served.
  OracleDescriptor describe(const Instance& instance) const;

  bool supports(const Request& request, const Graph* graph) const;

  Action best_action(const Request& request, const WeightVector& weights,
                     const Graph* graph) const;

private:
  OracleKind kind_;
};

}  // namespace bgnd
