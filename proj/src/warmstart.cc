#include "warmflow/warmstart.h"

#include <algorithm>
#include <sstream>

namespace warmflow {

std::string_view round_name(ProjectionRound round) {
  switch (round) {
    case ProjectionRound::kExcessToDeficit:
      return "excess-to-deficit";
    case ProjectionRound::kExcessToSource:
      return "excess-to-source";
    case ProjectionRound::kSinkToDeficit:
      return "sink-to-deficit";
  }
  return "unknown";
}

ClampResult clamp_to_capacity(const FlowNetwork& net, const Flow& f_hat) {
  require_indexed(net, f_hat);
  std::vector<Amount> out(f_hat.values().begin(), f_hat.values().end());
  Amount clamp_total = 0;
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    if (out[e] > net.capacity(e)) {
      clamp_total += out[e] - net.capacity(e);
      out[e] = net.capacity(e);
    }
  }
  return {Flow(std::move(out)), clamp_total};
}

namespace {

// Inflow minus outflow at a single node.
Amount net_inflow(const FlowNetwork& net, const Flow& f, NodeId v) {
  Amount bal = 0;
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    if (net.edge(e).head == v) bal += f[e];
    if (net.edge(e).tail == v) bal -= f[e];
  }
  return bal;
}

}  // namespace

ProjectionAux build_projection_aux(const FlowNetwork& net, const Flow& f,
                                   ProjectionRound round) {
  const Imbalance imb = imbalance(net, f);
  const NodeId n = net.node_count();
  const NodeId s_star = n;
  const NodeId t_star = n + 1;

  std::vector<Edge> edges;
  edges.reserve(2 * static_cast<std::size_t>(net.edge_count()) +
                imb.a_prime.size() + imb.b_prime.size() + 1);
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    const Edge& edge = net.edge(e);
    edges.push_back({edge.tail, edge.head, edge.capacity - f[e]});
    edges.push_back({edge.head, edge.tail, f[e]});
  }
  const bool from_excess = round != ProjectionRound::kSinkToDeficit;
  const bool to_deficit = round != ProjectionRound::kExcessToSource;
  if (from_excess) {
    for (const NodeId u : imb.a_prime) {
      edges.push_back({s_star, u, imb.excess[u]});
    }
  } else {
    edges.push_back({s_star, net.sink(), imb.total_deficit});
    const Amount source_excess = net_inflow(net, f, net.source());
    if (source_excess > 0) edges.push_back({s_star, net.source(), source_excess});
  }
  if (to_deficit) {
    for (const NodeId v : imb.b_prime) {
      edges.push_back({v, t_star, imb.deficit[v]});
    }
  } else {
    edges.push_back({net.source(), t_star, imb.total_excess});
    const Amount sink_deficit = -net_inflow(net, f, net.sink());
    if (sink_deficit > 0) edges.push_back({net.sink(), t_star, sink_deficit});
  }
  return {FlowNetwork(n + 2, s_star, t_star, std::move(edges)),
          net.edge_count(), s_star, t_star};
}

namespace {

bool round_applies(ProjectionRound round, const Imbalance& imb) {
  switch (round) {
    case ProjectionRound::kExcessToDeficit:
      return !imb.a_prime.empty() && !imb.b_prime.empty();
    case ProjectionRound::kExcessToSource:
      return !imb.a_prime.empty();
    case ProjectionRound::kSinkToDeficit:
      return !imb.b_prime.empty();
  }
  return false;
}

// Folds the auxiliary flow back onto the base flow.
void apply_aux_flow(std::span<const Amount> aux_flow, EdgeId base_edges,
                    std::vector<Amount>& flow) {
  for (EdgeId e = 0; e < base_edges; ++e) {
    flow[e] += aux_flow[2 * e] - aux_flow[2 * e + 1];
  }
}

}  // namespace

ProjectionResult feasibility_projection(const FlowNetwork& net, const Flow& f,
                                        const ProjectionObserver& observer) {
  require_indexed(net, f);
  std::vector<Amount> current(f.values().begin(), f.values().end());
  ProjectionResult result;

  for (const ProjectionRound round : kProjectionRounds) {
    const Flow round_start(current);
    const Imbalance imb = imbalance(net, round_start);
    if (!round_applies(round, imb)) continue;

    const ProjectionAux aux = build_projection_aux(net, round_start, round);
    ResidualGraph g(aux.network);
    BfsSearcher searcher(aux.network.node_count());
    PathStats& stats = result.round_stats[static_cast<int>(round)];
    std::vector<Amount> snapshot;
    std::vector<NodeId> inner;
    while (auto path = searcher.find(g, aux.super_source, aux.super_sink, stats)) {
      augment_along(g, *path);
      // First and last arcs are super arcs.
      stats.record_path(path->length() - 2);
      if (observer) {
        snapshot = current;
        apply_aux_flow(g.flow_values(), aux.base_edge_count, snapshot);
        inner.assign(path->nodes.begin() + 1, path->nodes.end() - 1);
        observer({round, inner, path->bottleneck, snapshot});
      }
    }
    apply_aux_flow(g.flow_values(), aux.base_edge_count, current);
  }

  result.flow = Flow(std::move(current));
  for (const PathStats& s : result.round_stats) result.stats += s;
  const Imbalance left = imbalance(net, result.flow);
  if (!left.balanced()) {
    std::ostringstream msg;
    msg << "feasibility projection left excess " << left.total_excess
        << " and deficit " << left.total_deficit;
    throw ProjectionInvariantError(msg.str());
  }
  return result;
}

WarmStartResult warm_start_solve(const FlowNetwork& net, const Flow& f_hat,
                                 Subroutine sub) {
  using Clock = std::chrono::steady_clock;
  WarmStartReport report;

  auto t0 = Clock::now();
  ClampResult clamped = clamp_to_capacity(net, f_hat);
  report.clamp_total = clamped.clamp_total;
  auto t1 = Clock::now();
  report.phase_durations.clamp = t1 - t0;

  const Imbalance imb = imbalance(net, clamped.flow);
  report.post_clamp_excess = imb.total_excess;
  report.post_clamp_deficit = imb.total_deficit;
  ProjectionResult projected = feasibility_projection(net, clamped.flow);
  report.projection_stats = projected.stats;
  report.round_stats = projected.round_stats;
  report.feasible_value = flow_value(net, projected.flow);
  auto t2 = Clock::now();
  report.phase_durations.projection = t2 - t1;

  ResidualGraph g(net, projected.flow);
  const SolveReport solve = augment_to_optimality(g, sub);
  report.augment_stats = solve.stats;
  report.optimal_value = solve.value;
  report.phase_durations.optimize = Clock::now() - t2;
  return {g.flow(), report};
}

}  // namespace warmflow
