// Shared fixtures, random generators and brute-force oracles for the test
// suites. Oracles here deliberately avoid the library's solver code paths.
#ifndef WARMFLOW_TESTS_SUPPORT_H_
#define WARMFLOW_TESTS_SUPPORT_H_

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "warmflow/flow_core.h"

namespace warmflow::testing {

// s -> a (cap 2), a -> t (cap 1).
inline FlowNetwork n1() { return FlowNetwork(3, 0, 2, {{0, 1, 2}, {1, 2, 1}}); }

// s->a, s->b, a->t, b->t, all cap 1.
inline FlowNetwork diamond() {
  return FlowNetwork(4, 0, 3, {{0, 1, 1}, {0, 2, 1}, {1, 3, 1}, {2, 3, 1}});
}

// s -> a -> b -> t with the given capacity on each edge.
inline FlowNetwork chain(Amount cap) {
  return FlowNetwork(4, 0, 3, {{0, 1, cap}, {1, 2, cap}, {2, 3, cap}});
}

struct RandomNetworkSpec {
  int min_nodes = 2;
  int max_nodes = 12;
  int max_edges = 30;
  Amount max_cap = 8;
};

// s = 0, t = n - 1. Parallel and anti-parallel edges occur naturally.
inline FlowNetwork random_network(std::mt19937_64& rng,
                                  const RandomNetworkSpec& spec = {}) {
  std::uniform_int_distribution<int> nodes(spec.min_nodes, spec.max_nodes);
  const int n = nodes(rng);
  std::uniform_int_distribution<int> edge_count(1, spec.max_edges);
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::uniform_int_distribution<Amount> cap(0, spec.max_cap);
  const int m = edge_count(rng);
  std::vector<Edge> edges;
  for (int i = 0; i < m; ++i) {
    int u = pick(rng);
    int v = pick(rng);
    if (u == v) v = (u + 1) % n;
    edges.push_back({u, v, cap(rng)});
  }
  return FlowNetwork(n, 0, n - 1, std::move(edges));
}

enum class PredictionKind { kUniformWide, kWithinCapacity, kNearFlow };

// Arbitrary non-negative vector. kUniformWide draws from [0, 2c + 2] so
// capacities and conservation are both usually broken.
inline Flow random_prediction(std::mt19937_64& rng, const FlowNetwork& net,
                              PredictionKind kind,
                              const Flow* near = nullptr) {
  std::vector<Amount> values;
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    const Amount c = net.capacity(e);
    Amount v = 0;
    switch (kind) {
      case PredictionKind::kUniformWide:
        v = std::uniform_int_distribution<Amount>(0, 2 * c + 2)(rng);
        break;
      case PredictionKind::kWithinCapacity:
        v = std::uniform_int_distribution<Amount>(0, c)(rng);
        break;
      case PredictionKind::kNearFlow: {
        const Amount base = near ? (*near)[e] : 0;
        v = std::max<Amount>(
            0, base + std::uniform_int_distribution<Amount>(-2, 2)(rng));
        break;
      }
    }
    values.push_back(v);
  }
  return Flow(std::move(values));
}

// Max-flow value as the minimum over every s-t cut (2^(n-2) subsets).
inline Amount brute_force_max_flow_value(const FlowNetwork& net) {
  const int n = net.node_count();
  std::vector<int> free_nodes;
  for (int v = 0; v < n; ++v) {
    if (v != net.source() && v != net.sink()) free_nodes.push_back(v);
  }
  Amount best = std::numeric_limits<Amount>::max();
  const std::uint64_t subsets = std::uint64_t{1} << free_nodes.size();
  std::vector<bool> side(static_cast<std::size_t>(n));
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    std::fill(side.begin(), side.end(), false);
    side[net.source()] = true;
    for (std::size_t i = 0; i < free_nodes.size(); ++i) {
      if (mask >> i & 1) side[free_nodes[i]] = true;
    }
    Amount cut = 0;
    for (const Edge& e : net.edges()) {
      if (side[e.tail] && !side[e.head]) cut += e.capacity;
    }
    best = std::min(best, cut);
  }
  return best;
}

inline bool oracle_feasible(const FlowNetwork& net, std::span<const Amount> f) {
  std::vector<Amount> bal(static_cast<std::size_t>(net.node_count()), 0);
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    if (f[e] < 0 || f[e] > net.capacity(e)) return false;
    bal[net.edge(e).tail] -= f[e];
    bal[net.edge(e).head] += f[e];
  }
  for (NodeId v = 0; v < net.node_count(); ++v) {
    if (v != net.source() && v != net.sink() && bal[v] != 0) return false;
  }
  return true;
}

inline Amount oracle_value(const FlowNetwork& net, std::span<const Amount> f) {
  Amount v = 0;
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    if (net.edge(e).tail == net.source()) v += f[e];
    if (net.edge(e).head == net.source()) v -= f[e];
  }
  return v;
}

// Calls visit for every integer vector in prod [0, c_e] (odometer order).
inline void for_each_box_vector(
    const std::vector<Amount>& upper,
    const std::function<void(const std::vector<Amount>&)>& visit) {
  std::vector<Amount> x(upper.size(), 0);
  while (true) {
    visit(x);
    std::size_t i = 0;
    while (i < x.size() && x[i] == upper[i]) x[i++] = 0;
    if (i == x.size()) return;
    ++x[i];
  }
}

inline std::vector<Amount> capacities_of(const FlowNetwork& net) {
  std::vector<Amount> c;
  for (const Edge& e : net.edges()) c.push_back(e.capacity);
  return c;
}

// All feasible maximum flows, by plain enumeration of the capacity box.
inline std::vector<std::vector<Amount>> all_max_flows(const FlowNetwork& net) {
  std::vector<std::vector<Amount>> best;
  Amount best_value = std::numeric_limits<Amount>::min();
  for_each_box_vector(capacities_of(net), [&](const std::vector<Amount>& f) {
    if (!oracle_feasible(net, f)) return;
    const Amount v = oracle_value(net, f);
    if (v > best_value) {
      best_value = v;
      best.clear();
    }
    if (v == best_value) best.push_back(f);
  });
  return best;
}

inline Amount oracle_eta(const FlowNetwork& net, const Flow& f_hat) {
  Amount best = std::numeric_limits<Amount>::max();
  for (const auto& g : all_max_flows(net)) {
    Amount d = 0;
    for (std::size_t e = 0; e < g.size(); ++e) {
      d += std::abs(g[e] - f_hat[static_cast<EdgeId>(e)]);
    }
    best = std::min(best, d);
  }
  return best;
}

inline double box_size(const FlowNetwork& net) {
  double states = 1;
  for (const Edge& e : net.edges()) states *= static_cast<double>(e.capacity + 1);
  return states;
}

// Reachability in the residual graph of f from a set of start nodes.
inline std::vector<bool> residual_reach(const FlowNetwork& net,
                                        std::span<const Amount> f,
                                        const std::vector<NodeId>& starts,
                                        bool reverse_direction = false) {
  std::vector<bool> seen(static_cast<std::size_t>(net.node_count()), false);
  std::vector<NodeId> stack;
  for (NodeId v : starts) {
    seen[v] = true;
    stack.push_back(v);
  }
  while (!stack.empty()) {
    const NodeId u = stack.back();
    stack.pop_back();
    for (EdgeId e = 0; e < net.edge_count(); ++e) {
      const Edge& edge = net.edge(e);
      // Residual arcs: tail->head if f < c, head->tail if f > 0.
      auto relax = [&](NodeId from, NodeId to, bool positive) {
        if (!positive) return;
        const NodeId a = reverse_direction ? to : from;
        const NodeId b = reverse_direction ? from : to;
        if (a == u && !seen[b]) {
          seen[b] = true;
          stack.push_back(b);
        }
      };
      relax(edge.tail, edge.head, f[e] < edge.capacity);
      relax(edge.head, edge.tail, f[e] > 0);
    }
  }
  return seen;
}

// Unweighted residual distance from -> to, or nullopt.
inline std::optional<int> residual_distance(const FlowNetwork& net,
                                            std::span<const Amount> f,
                                            NodeId from, NodeId to) {
  std::vector<int> dist(static_cast<std::size_t>(net.node_count()), -1);
  dist[from] = 0;
  for (int round = 0; round < net.node_count(); ++round) {
    for (EdgeId e = 0; e < net.edge_count(); ++e) {
      const Edge& edge = net.edge(e);
      auto relax = [&](NodeId a, NodeId b) {
        if (dist[a] >= 0 && (dist[b] < 0 || dist[b] > dist[a] + 1)) {
          dist[b] = dist[a] + 1;
        }
      };
      if (f[e] < edge.capacity) relax(edge.tail, edge.head);
      if (f[e] > 0) relax(edge.head, edge.tail);
    }
  }
  if (dist[to] < 0) return std::nullopt;
  return dist[to];
}

// Net inflow per node (inflow minus outflow), terminals included.
inline std::vector<Amount> net_inflow(const FlowNetwork& net,
                                      std::span<const Amount> f) {
  std::vector<Amount> bal(static_cast<std::size_t>(net.node_count()), 0);
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    bal[net.edge(e).tail] -= f[e];
    bal[net.edge(e).head] += f[e];
  }
  return bal;
}

struct OracleImbalance {
  std::vector<NodeId> excess_nodes;
  std::vector<NodeId> deficit_nodes;
  Amount total_excess = 0;
  Amount total_deficit = 0;
};

inline OracleImbalance oracle_imbalance(const FlowNetwork& net,
                                        std::span<const Amount> f) {
  OracleImbalance out;
  const auto bal = net_inflow(net, f);
  for (NodeId v = 0; v < net.node_count(); ++v) {
    if (v == net.source() || v == net.sink()) continue;
    if (bal[v] > 0) {
      out.excess_nodes.push_back(v);
      out.total_excess += bal[v];
    } else if (bal[v] < 0) {
      out.deficit_nodes.push_back(v);
      out.total_deficit -= bal[v];
    }
  }
  return out;
}

// True if some excess node reaches some deficit node in the residual graph.
inline bool has_excess_to_deficit_path(const FlowNetwork& net,
                                       std::span<const Amount> f) {
  const OracleImbalance imb = oracle_imbalance(net, f);
  if (imb.excess_nodes.empty() || imb.deficit_nodes.empty()) return false;
  const auto seen = residual_reach(net, f, imb.excess_nodes);
  for (NodeId v : imb.deficit_nodes) {
    if (seen[v]) return true;
  }
  return false;
}

// Every excess node reaches some node with net outflow, and every deficit
// node is reachable from some node with net inflow. Terminals count here.
inline bool imbalance_routable(const FlowNetwork& net,
                               std::span<const Amount> f) {
  const OracleImbalance imb = oracle_imbalance(net, f);
  const auto bal = net_inflow(net, f);
  std::vector<NodeId> gaining, losing;
  for (NodeId v = 0; v < net.node_count(); ++v) {
    if (bal[v] > 0) gaining.push_back(v);
    if (bal[v] < 0) losing.push_back(v);
  }
  const auto back = residual_reach(net, f, losing, true);
  for (NodeId u : imb.excess_nodes) {
    if (!back[u]) return false;
  }
  const auto fwd = residual_reach(net, f, gaining);
  for (NodeId v : imb.deficit_nodes) {
    if (!fwd[v]) return false;
  }
  return true;
}

// Feasible flow built from random forward s-t paths, one unit at a time.
inline Flow random_feasible_flow(std::mt19937_64& rng, const FlowNetwork& net,
                                 int attempts = 8) {
  std::vector<Amount> f(static_cast<std::size_t>(net.edge_count()), 0);
  for (int a = 0; a < attempts; ++a) {
    std::vector<bool> seen(static_cast<std::size_t>(net.node_count()), false);
    std::vector<EdgeId> path;
    NodeId u = net.source();
    seen[u] = true;
    while (u != net.sink()) {
      std::vector<EdgeId> options;
      for (EdgeId e = 0; e < net.edge_count(); ++e) {
        const Edge& edge = net.edge(e);
        if (edge.tail == u && !seen[edge.head] && f[e] < edge.capacity) {
          options.push_back(e);
        }
      }
      if (options.empty()) break;
      const EdgeId e = options[std::uniform_int_distribution<std::size_t>(
          0, options.size() - 1)(rng)];
      path.push_back(e);
      u = net.edge(e).head;
      seen[u] = true;
    }
    if (u != net.sink()) continue;
    for (EdgeId e : path) ++f[e];
  }
  return Flow(std::move(f));
}

}  // namespace warmflow::testing

#endif  // WARMFLOW_TESTS_SUPPORT_H_
