#include "bgnd/oracle.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>
#include <tuple>

#include "bgnd/error.hpp"

namespace bgnd {

namespace {

struct Arc {
  NodeIndex head;
  ResourceIndex resource;
};

// Arcs leaving each node; undirected edges yield one arc per direction.
std::vector<std::vector<Arc>> out_arcs(const Graph& graph, bool reverse) {
  std::vector<std::vector<Arc>> arcs(graph.node_count);
  for (const auto& edge : graph.edges) {
    if (!graph.directed || !reverse) arcs[edge.from].push_back({edge.to, edge.resource});
    if (!graph.directed || reverse) arcs[edge.to].push_back({edge.from, edge.resource});
  }
  return arcs;
}

void check_weights(const Graph& graph, const WeightVector& weights) {
  for (const auto& edge : graph.edges) {
    if (edge.resource >= weights.size())
      throw UnsupportedError("weight vector does not cover every edge resource");
    if (!(weights[edge.resource] >= 0.0))
      throw UnsupportedError("negative or NaN edge weight");
  }
}

class DisjointSets {
public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

private:
  std::vector<std::size_t> parent_;
};

}  // namespace

double total_weight(const Action& action, const WeightVector& weights) {
  double total = 0.0;
  for (ResourceIndex e : action) total += weights[e];
  return total;
}

const char* to_string(OracleKind kind) {
  switch (kind) {
    case OracleKind::Auto: return "auto";
    case OracleKind::ShortestPath: return "shortest-path";
    case OracleKind::SteinerMst: return "steiner";
    case OracleKind::Explicit: return "explicit";
  }
  return "auto";
}

OracleKind oracle_kind_from_string(const std::string& name) {
  if (name == "auto") return OracleKind::Auto;
  if (name == "shortest-path") return OracleKind::ShortestPath;
  if (name == "steiner") return OracleKind::SteinerMst;
  if (name == "explicit") return OracleKind::Explicit;
  throw UnsupportedError("unknown oracle '" + name + "'");
}

Action shortest_path(const Graph& graph, NodeIndex source, NodeIndex target,
                     const WeightVector& weights) {
  if (source >= graph.node_count || target >= graph.node_count)
    throw UnsupportedError("shortest_path: node out of range");
  check_weights(graph, weights);
  if (source == target) return Action{};

  constexpr double kInf = std::numeric_limits<double>::infinity();
  constexpr std::size_t kNoHops = std::numeric_limits<std::size_t>::max();
  std::vector<double> dist(graph.node_count, kInf);
  std::vector<std::size_t> hops(graph.node_count, kNoHops);
  std::vector<bool> done(graph.node_count, false);

  // Label-setting search towards the target on reversed arcs, keyed by
  // (weight, hop count).
  const auto incoming = out_arcs(graph, true);
  using Key = std::tuple<double, std::size_t, NodeIndex>;
  std::priority_queue<Key, std::vector<Key>, std::greater<>> queue;
  dist[target] = 0.0;
  hops[target] = 0;
  queue.emplace(0.0, 0, target);
  while (!queue.empty()) {
    auto [d, h, node] = queue.top();
    queue.pop();
    if (done[node]) continue;
    done[node] = true;
    for (const Arc& arc : incoming[node]) {
      const double nd = d + weights[arc.resource];
      const std::size_t nh = h + 1;
      if (nd < dist[arc.head] || (nd == dist[arc.head] && nh < hops[arc.head])) {
        dist[arc.head] = nd;
        hops[arc.head] = nh;
        queue.emplace(nd, nh, arc.head);
      }
    }
  }
  if (!done[source]) throw UnsatisfiableError("no path between the requested nodes");

  // Walk forward along tight arcs, preferring the smallest next node.
  const auto outgoing = out_arcs(graph, false);
  std::vector<ResourceIndex> path;
  NodeIndex node = source;
  while (node != target) {
    const Arc* best = nullptr;
    for (const Arc& arc : outgoing[node]) {
      if (!done[arc.head]) continue;
      if (dist[arc.head] + weights[arc.resource] != dist[node] || hops[arc.head] + 1 != hops[node])
        continue;
      if (best == nullptr || std::tie(arc.head, arc.resource) < std::tie(best->head, best->resource))
        best = &arc;
    }
    if (best == nullptr) throw InvariantViolation("shortest_path: no tight arc on a labelled node");
    path.push_back(best->resource);
    node = best->head;
  }
  return Action(std::move(path));
}

Action steiner_mst(const Graph& graph, const std::vector<NodeIndex>& terminals,
                   const WeightVector& weights) {
  if (graph.directed) throw UnsupportedError("steiner_mst requires an undirected graph");
  check_weights(graph, weights);
  std::vector<NodeIndex> nodes = terminals;
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  for (NodeIndex v : nodes)
    if (v >= graph.node_count) throw UnsupportedError("steiner_mst: terminal out of range");
  if (nodes.size() <= 1) return Action{};

  // Metric closure restricted to the terminals.
  const std::size_t k = nodes.size();
  std::vector<std::vector<Action>> paths(k, std::vector<Action>(k));
  std::vector<std::vector<double>> closure(k, std::vector<double>(k, 0.0));
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b < k; ++b) {
      paths[a][b] = shortest_path(graph, nodes[a], nodes[b], weights);
      closure[a][b] = closure[b][a] = total_weight(paths[a][b], weights);
    }
  }

  // Prim on the closure; ties go to the smaller terminal pair.
  std::vector<bool> in_tree(k, false);
  std::vector<double> best(k, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> via(k, 0);
  std::vector<ResourceIndex> union_edges;
  best[0] = 0.0;
  for (std::size_t step = 0; step < k; ++step) {
    std::size_t pick = k;
    for (std::size_t v = 0; v < k; ++v)
      if (!in_tree[v] && (pick == k || best[v] < best[pick])) pick = v;
    in_tree[pick] = true;
    if (step > 0) {
      const auto& p = pick < via[pick] ? paths[pick][via[pick]] : paths[via[pick]][pick];
      union_edges.insert(union_edges.end(), p.begin(), p.end());
    }
    for (std::size_t v = 0; v < k; ++v) {
      if (!in_tree[v] && closure[pick][v] < best[v]) {
        best[v] = closure[pick][v];
        via[v] = pick;
      }
    }
  }
  const Action expanded(std::move(union_edges));

  // Spanning tree of the expanded subgraph, then strip non-terminal leaves.
  std::vector<std::size_t> candidates;
  for (std::size_t idx = 0; idx < graph.edges.size(); ++idx)
    if (expanded.contains(graph.edges[idx].resource)) candidates.push_back(idx);
  std::sort(candidates.begin(), candidates.end(), [&](std::size_t x, std::size_t y) {
    const auto& ex = graph.edges[x];
    const auto& ey = graph.edges[y];
    return std::make_pair(weights[ex.resource], ex.resource) <
           std::make_pair(weights[ey.resource], ey.resource);
  });
  DisjointSets sets(graph.node_count);
  std::vector<std::size_t> tree;
  for (std::size_t idx : candidates)
    if (sets.unite(graph.edges[idx].from, graph.edges[idx].to)) tree.push_back(idx);

  std::vector<bool> is_terminal(graph.node_count, false);
  for (NodeIndex v : nodes) is_terminal[v] = true;
  std::vector<bool> kept(tree.size(), true);
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<std::size_t> degree(graph.node_count, 0);
    for (std::size_t t = 0; t < tree.size(); ++t) {
      if (!kept[t]) continue;
      ++degree[graph.edges[tree[t]].from];
      ++degree[graph.edges[tree[t]].to];
    }
    for (std::size_t t = 0; t < tree.size(); ++t) {
      if (!kept[t]) continue;
      const auto& edge = graph.edges[tree[t]];
      if ((degree[edge.from] == 1 && !is_terminal[edge.from]) ||
          (degree[edge.to] == 1 && !is_terminal[edge.to])) {
        kept[t] = false;
        changed = true;
      }
    }
  }
  std::vector<ResourceIndex> result;
  for (std::size_t t = 0; t < tree.size(); ++t)
    if (kept[t]) result.push_back(graph.edges[tree[t]].resource);
  return Action(std::move(result));
}

Action explicit_argmin(const ExplicitRequest& request, const WeightVector& weights) {
  if (request.actions.empty()) throw UnsatisfiableError("explicit request lists no actions");
  const Action* best = nullptr;
  double best_weight = 0.0;
  for (const auto& action : request.actions) {
    const double w = total_weight(action, weights);
    if (best == nullptr || w < best_weight || (w == best_weight && action < *best)) {
      best = &action;
      best_weight = w;
    }
  }
  return *best;
}

bool ActionOracle::supports(const Request& request, const Graph* graph) const {
  return std::visit(
      [&](const auto& req) -> bool {
        using T = std::decay_t<decltype(req)>;
        if constexpr (std::is_same_v<T, ExplicitRequest>) {
          return true;
        } else if constexpr (std::is_same_v<T, RoutingRequest>) {
          return graph != nullptr && (kind_ == OracleKind::Auto || kind_ == OracleKind::ShortestPath);
        } else {
          return graph != nullptr && !graph->directed &&
                 (kind_ == OracleKind::Auto || kind_ == OracleKind::SteinerMst);
        }
      },
      request);
}

OracleDescriptor ActionOracle::describe(const Instance& instance) const {
  OracleDescriptor out{kind_, kind_ == OracleKind::SteinerMst ? 2.0 : 1.0};
  for (std::size_t i = 0; i < instance.agent_count(); ++i) {
    for (std::size_t t = 0; t < instance.agents[i].types.size(); ++t) {
      const auto& request = instance.agents[i].types[t];
      if (!supports(request, instance.graph_ptr()))
        throw UnsupportedError(std::string("oracle '") + to_string(kind_) +
                               "' cannot serve agent " + std::to_string(i) + " type " +
                               std::to_string(t));
      if (std::holds_alternative<SetConnectivityRequest>(request)) out.rho = 2.0;
    }
  }
  return out;
}

Action ActionOracle::best_action(const Request& request, const WeightVector& weights,
                                 const Graph* graph) const {
  if (!supports(request, graph))
    throw UnsupportedError(std::string("oracle '") + to_string(kind_) +
                           "' does not support this request");
  return std::visit(
      [&](const auto& req) -> Action {
        using T = std::decay_t<decltype(req)>;
        if constexpr (std::is_same_v<T, ExplicitRequest>)
          return explicit_argmin(req, weights);
        else if constexpr (std::is_same_v<T, RoutingRequest>)
          return shortest_path(*graph, req.source, req.target, weights);
        else
          return steiner_mst(*graph, req.terminals, weights);
      },
      request);
}

}  // namespace bgnd
