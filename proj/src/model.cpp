#include "bgnd/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "bgnd/error.hpp"

namespace bgnd {

namespace {

std::string format_real(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", value);
  return buf;
}

// Nodes reachable from `start` using only the edges in `action`.
std::vector<bool> reachable(const Graph& graph, const Action& action, NodeIndex start,
                            bool reverse) {
  std::vector<std::vector<NodeIndex>> adjacency(graph.node_count);
  for (const auto& edge : graph.edges) {
    if (!action.contains(edge.resource)) continue;
    if (graph.directed) {
      if (reverse)
        adjacency[edge.to].push_back(edge.from);
      else
        adjacency[edge.from].push_back(edge.to);
    } else {
      adjacency[edge.from].push_back(edge.to);
      adjacency[edge.to].push_back(edge.from);
    }
  }
  std::vector<bool> seen(graph.node_count, false);
  std::vector<NodeIndex> stack{start};
  seen[start] = true;
  while (!stack.empty()) {
    NodeIndex node = stack.back();
    stack.pop_back();
    for (NodeIndex next : adjacency[node]) {
      if (!seen[next]) {
        seen[next] = true;
        stack.push_back(next);
      }
    }
  }
  return seen;
}

}  // namespace

double CostFunction::operator()(std::size_t load) const {
  if (load == 0) return 0.0;
  const double l = static_cast<double>(load);
  double total = 0.0;
  for (const auto& term : terms) total += term.coefficient * std::pow(l, term.exponent);
  return total;
}

double CostFunction::share(std::size_t load) const {
  if (load == 0) return 0.0;
  const double l = static_cast<double>(load);
  double total = 0.0;
  for (const auto& term : terms) total += term.coefficient * std::pow(l, term.exponent - 1.0);
  return total;
}

double CostFunction::solo_share() const {
  double total = 0.0;
  for (const auto& term : terms) total += term.coefficient;
  return total;
}

double CostFunction::max_exponent() const {
  double best = 0.0;
  for (const auto& term : terms) best = std::max(best, term.exponent);
  return best;
}

double eval_cost(const CostFunction& cost, std::size_t load) { return cost(load); }

Action::Action(std::vector<ResourceIndex> resources) : resources_(std::move(resources)) {
  std::sort(resources_.begin(), resources_.end());
  resources_.erase(std::unique(resources_.begin(), resources_.end()), resources_.end());
}

bool Action::contains(ResourceIndex e) const {
  return std::binary_search(resources_.begin(), resources_.end(), e);
}

double Instance::max_exponent() const {
  double best = 0.0;
  for (const auto& resource : resources) best = std::max(best, resource.cost.max_exponent());
  return best;
}

std::vector<std::string> Instance::violations() const {
  std::vector<std::string> out;
  const std::size_t m = resources.size();

  std::set<std::string> ids;
  for (std::size_t e = 0; e < m; ++e) {
    const auto& resource = resources[e];
    const std::string where = "resource '" + resource.id + "'";
    if (!ids.insert(resource.id).second) out.push_back("duplicate resource id '" + resource.id + "'");
    if (resource.cost.terms.empty()) out.push_back(where + " has no cost terms");
    for (const auto& term : resource.cost.terms) {
      if (!(term.coefficient > 0.0) || !std::isfinite(term.coefficient))
        out.push_back(where + " has non-positive coefficient " + format_real(term.coefficient));
      if (!(term.exponent >= 1.0) || !std::isfinite(term.exponent))
        out.push_back(where + " has exponent " + format_real(term.exponent) + " below 1");
    }
  }
  if (m > 0 && !(max_exponent() > 1.0))
    out.push_back("maximum exponent must exceed 1, got " + format_real(max_exponent()));

  if (graph) {
    std::vector<int> used(m, 0);
    for (std::size_t k = 0; k < graph->edges.size(); ++k) {
      const auto& edge = graph->edges[k];
      const std::string where = "edge " + std::to_string(k);
      if (edge.from >= graph->node_count || edge.to >= graph->node_count)
        out.push_back(where + " has an endpoint out of range");
      if (edge.resource >= m)
        out.push_back(where + " references an unknown resource");
      else if (++used[edge.resource] > 1)
        out.push_back("resource '" + resources[edge.resource].id + "' is used by more than one edge");
    }
  }

  if (agents.empty()) out.push_back("instance has no agents");
  for (std::size_t i = 0; i < agents.size(); ++i) {
    const auto& agent = agents[i];
    const std::string where = "agent " + std::to_string(i);
    if (agent.types.empty()) out.push_back(where + " has no types");
    if (agent.prior.size() != agent.types.size())
      out.push_back(where + " has " + std::to_string(agent.prior.size()) + " prior entries for " +
                    std::to_string(agent.types.size()) + " types");
    double sum = 0.0;
    bool finite = true;
    for (double p : agent.prior) {
      if (!(p >= 0.0)) out.push_back(where + " has negative probability " + format_real(p));
      finite = finite && std::isfinite(p);
      sum += p;
    }
    if (!finite || std::abs(sum - 1.0) > 1e-12)
      out.push_back(where + " prior sums to " + format_real(sum));

    for (std::size_t t = 0; t < agent.types.size(); ++t) {
      const std::string twhere = where + " type " + std::to_string(t);
      std::visit(
          [&](const auto& request) {
            using T = std::decay_t<decltype(request)>;
            if constexpr (std::is_same_v<T, RoutingRequest>) {
              if (!graph)
                out.push_back(twhere + ": routing request requires a graph");
              else if (request.source >= graph->node_count || request.target >= graph->node_count)
                out.push_back(twhere + ": routing node out of range");
            } else if constexpr (std::is_same_v<T, SetConnectivityRequest>) {
              if (!graph)
                out.push_back(twhere + ": set-connectivity request requires a graph");
              if (request.terminals.size() < 2)
                out.push_back(twhere + ": set-connectivity request needs at least 2 terminals");
              for (NodeIndex v : request.terminals)
                if (graph && v >= graph->node_count)
                  out.push_back(twhere + ": terminal out of range");
            } else {
              if (request.actions.empty()) out.push_back(twhere + ": explicit request lists no actions");
              for (const auto& action : request.actions) {
                if (action.empty()) out.push_back(twhere + ": explicit action is empty");
                for (ResourceIndex e : action)
                  if (e >= m) out.push_back(twhere + ": explicit action references unknown resource");
              }
            }
          },
          agent.types[t]);
    }
  }
  return out;
}

void Instance::validate() const {
  auto found = violations();
  if (!found.empty()) throw ValidationError(std::move(found));
}

std::size_t load(const ActionProfile& profile, ResourceIndex e) {
  return static_cast<std::size_t>(
      std::count_if(profile.begin(), profile.end(), [e](const Action& a) { return a.contains(e); }));
}

std::vector<std::size_t> loads(const Instance& instance, const ActionProfile& profile) {
  std::vector<std::size_t> out(instance.resource_count(), 0);
  for (const auto& action : profile)
    for (ResourceIndex e : action) ++out[e];
  return out;
}

double cost_share(const Instance& instance, std::size_t agent, const ActionProfile& profile,
                  ResourceIndex e) {
  if (!profile[agent].contains(e)) return 0.0;
  return instance.resources[e].cost.share(load(profile, e));
}

double realized_social_cost(const Instance& instance, const ActionProfile& profile) {
  const auto l = loads(instance, profile);
  double total = 0.0;
  for (std::size_t e = 0; e < l.size(); ++e) total += instance.resources[e].cost(l[e]);
  return total;
}

bool feasible(const Request& request, const Action& action, const Graph* graph) {
  return std::visit(
      [&](const auto& req) -> bool {
        using T = std::decay_t<decltype(req)>;
        if constexpr (std::is_same_v<T, ExplicitRequest>) {
          return std::find(req.actions.begin(), req.actions.end(), action) != req.actions.end();
        } else {
          if (graph == nullptr) throw UnsupportedError("graph-based request without a graph");
          if constexpr (std::is_same_v<T, RoutingRequest>) {
            if (req.source == req.target) return true;
            return reachable(*graph, action, req.source, false)[req.target];
          } else {
            if (req.terminals.empty()) return false;
            const NodeIndex root = req.terminals.front();
            const auto forward = reachable(*graph, action, root, false);
            const bool all_forward = std::all_of(req.terminals.begin(), req.terminals.end(),
                                                 [&](NodeIndex v) { return forward[v]; });
            if (!graph->directed || !all_forward) return all_forward;
            const auto backward = reachable(*graph, action, root, true);
            return std::all_of(req.terminals.begin(), req.terminals.end(),
                               [&](NodeIndex v) { return backward[v]; });
          }
        }
      },
      request);
}

ActionProfile realize(const StrategyProfile& strategies, const TypeProfile& types) {
  ActionProfile out;
  out.reserve(strategies.size());
  for (std::size_t i = 0; i < strategies.size(); ++i) out.push_back(strategies[i][types[i]]);
  return out;
}

void check_strategy_profile(const Instance& instance, const StrategyProfile& strategies) {
  std::vector<std::string> problems;
  if (strategies.size() != instance.agent_count()) {
    problems.push_back("strategy profile covers " + std::to_string(strategies.size()) +
                       " agents, instance has " + std::to_string(instance.agent_count()));
    throw ValidationError(std::move(problems));
  }
  for (std::size_t i = 0; i < strategies.size(); ++i) {
    const auto& agent = instance.agents[i];
    if (strategies[i].size() != agent.types.size()) {
      problems.push_back("agent " + std::to_string(i) + " strategy covers " +
                         std::to_string(strategies[i].size()) + " of " +
                         std::to_string(agent.types.size()) + " types");
      continue;
    }
    for (std::size_t t = 0; t < agent.types.size(); ++t) {
      const auto& action = strategies[i][t];
      bool ids_ok = std::all_of(action.begin(), action.end(),
                                [&](ResourceIndex e) { return e < instance.resource_count(); });
      if (!ids_ok || !feasible(agent.types[t], action, instance.graph_ptr()))
        problems.push_back("agent " + std::to_string(i) + " type " + std::to_string(t) +
                           " is mapped to an infeasible action");
    }
  }
  if (!problems.empty()) throw ValidationError(std::move(problems));
}

}  // namespace bgnd
