#include "warmflow/augment.h"

#include <algorithm>
#include <limits>

namespace warmflow {

std::string_view subroutine_name(Subroutine sub) {
  return sub == Subroutine::kEdmondsKarp ? "ek" : "dinic";
}

Subroutine parse_subroutine(std::string_view name) {
  if (name == "ek") return Subroutine::kEdmondsKarp;
  if (name == "dinic") return Subroutine::kDinic;
  throw Error("unknown subroutine '" + std::string(name) + "'");
}

ResidualGraph::ResidualGraph(const FlowNetwork& net, const Flow& flow)
    : net_(&net), flow_(flow.values().begin(), flow.values().end()) {
  require_indexed(net, flow);
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    if (flow_[e] > net.capacity(e)) {
      throw Error("residual graph needs a capacity-respecting flow");
    }
  }
  const auto n = static_cast<std::size_t>(net.node_count());
  offsets_.assign(n + 1, 0);
  for (const Edge& e : net.edges()) {
    ++offsets_[e.tail + 1];
    ++offsets_[e.head + 1];
  }
  for (std::size_t v = 0; v < n; ++v) offsets_[v + 1] += offsets_[v];
  arcs_.resize(static_cast<std::size_t>(offsets_[n]));
  std::vector<std::int32_t> fill(offsets_.begin(), offsets_.end() - 1);
  // Arc ids increase with edge index, so filling in edge order keeps every
  // adjacency list sorted.
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    const Edge& edge = net.edge(e);
    arcs_[fill[edge.tail]++] = 2 * e;
    arcs_[fill[edge.head]++] = 2 * e + 1;
  }
}

ResidualGraph::ResidualGraph(const FlowNetwork& net)
    : ResidualGraph(net, Flow::zeros(net.edge_count())) {}

ResidualView ResidualGraph::view() const {
  ResidualView out;
  out.forward.reserve(flow_.size());
  out.reverse.reserve(flow_.size());
  for (EdgeId e = 0; e < net_->edge_count(); ++e) {
    out.forward.push_back(net_->capacity(e) - flow_[e]);
    out.reverse.push_back(flow_[e]);
  }
  return out;
}

BfsSearcher::BfsSearcher(NodeId node_count)
    : seen_(static_cast<std::size_t>(node_count), 0),
      parent_(static_cast<std::size_t>(node_count), -1) {
  queue_.reserve(static_cast<std::size_t>(node_count));
}

std::optional<AugPath> BfsSearcher::find(const ResidualGraph& g, NodeId from,
                                         NodeId to, PathStats& stats) {
  if (from == to) throw Error("path search needs distinct endpoints");
  if (++epoch_ == 0) {
    std::fill(seen_.begin(), seen_.end(), 0);
    epoch_ = 1;
  }
  queue_.clear();
  queue_.push_back(from);
  seen_[from] = epoch_;
  bool found = false;
  for (std::size_t head = 0; head < queue_.size() && !found; ++head) {
    const NodeId u = queue_[head];
    ++stats.node_expansions;
    for (const ArcId a : g.out_arcs(u)) {
      if (g.residual(a) <= 0) continue;
      const NodeId v = g.arc_head(a);
      if (seen_[v] == epoch_) continue;
      seen_[v] = epoch_;
      parent_[v] = a;
      if (v == to) {
        found = true;
        break;
      }
      queue_.push_back(v);
    }
  }
  if (!found) return std::nullopt;

  AugPath path;
  path.bottleneck = std::numeric_limits<Amount>::max();
  for (NodeId v = to; v != from;) {
    const ArcId a = parent_[v];
    path.arcs.push_back(a);
    path.nodes.push_back(v);
    path.bottleneck = std::min(path.bottleneck, g.residual(a));
    v = g.arc_tail(a);
  }
  path.nodes.push_back(from);
  std::reverse(path.arcs.begin(), path.arcs.end());
  std::reverse(path.nodes.begin(), path.nodes.end());
  return path;
}

std::optional<AugPath> bfs_path(const ResidualGraph& g, NodeId from, NodeId to,
                                PathStats& stats) {
  BfsSearcher searcher(g.node_count());
  return searcher.find(g, from, to, stats);
}

void augment_along(ResidualGraph& g, const AugPath& path) {
  for (const ArcId a : path.arcs) g.push(a, path.bottleneck);
}

Amount dinic_phase(ResidualGraph& g, NodeId s, NodeId t, PathStats& stats) {
  const auto n = static_cast<std::size_t>(g.node_count());
  std::vector<std::int32_t> level(n, -1);
  std::vector<NodeId> queue;
  queue.reserve(n);
  queue.push_back(s);
  level[s] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const NodeId u = queue[head];
    ++stats.node_expansions;
    for (const ArcId a : g.out_arcs(u)) {
      if (g.residual(a) <= 0) continue;
      const NodeId v = g.arc_head(a);
      if (level[v] >= 0) continue;
      level[v] = level[u] + 1;
      queue.push_back(v);
    }
  }
  if (level[t] < 0) return 0;

  // Blocking flow by iterative DFS with current-arc pointers. Dead-end nodes
  // get level -1 so they are never entered again this phase.
  std::vector<std::size_t> next_arc(n, 0);
  std::vector<ArcId> stack;
  Amount pushed = 0;
  NodeId u = s;
  while (true) {
    if (u == t) {
      Amount bottleneck = std::numeric_limits<Amount>::max();
      for (const ArcId a : stack) bottleneck = std::min(bottleneck, g.residual(a));
      for (const ArcId a : stack) g.push(a, bottleneck);
      pushed += bottleneck;
      stats.record_path(static_cast<std::int64_t>(stack.size()));
      // Retreat to the tail of the first saturated arc.
      std::size_t keep = 0;
      while (keep < stack.size() && g.residual(stack[keep]) > 0) ++keep;
      stack.resize(keep);
      u = stack.empty() ? s : g.arc_head(stack.back());
      continue;
    }
    const auto arcs = g.out_arcs(u);
    bool advanced = false;
    for (std::size_t& i = next_arc[u]; i < arcs.size(); ++i) {
      const ArcId a = arcs[i];
      const NodeId v = g.arc_head(a);
      if (g.residual(a) > 0 && level[v] == level[u] + 1) {
        stack.push_back(a);
        u = v;
        ++stats.node_expansions;
        advanced = true;
        break;
      }
    }
    if (advanced) continue;
    if (u == s) break;
    level[u] = -1;
    const ArcId back = stack.back();
    stack.pop_back();
    u = g.arc_tail(back);
    ++next_arc[u];
  }
  return pushed;
}

SolveReport augment_to_optimality(ResidualGraph& g, Subroutine sub) {
  const auto start = std::chrono::steady_clock::now();
  const FlowNetwork& net = g.network();
  const NodeId s = net.source();
  const NodeId t = net.sink();
  SolveReport report;
  report.initial_value = flow_value(net, g.flow());
  Amount value = report.initial_value;
  if (sub == Subroutine::kEdmondsKarp) {
    BfsSearcher searcher(g.node_count());
    while (auto path = searcher.find(g, s, t, report.stats)) {
      augment_along(g, *path);
      report.stats.record_path(path->length());
      value += path->bottleneck;
    }
  } else {
    while (const Amount pushed = dinic_phase(g, s, t, report.stats)) {
      value += pushed;
      ++report.phases;
    }
  }
  report.value = value;
  report.duration = std::chrono::steady_clock::now() - start;
  return report;
}

MaxFlowResult max_flow(const FlowNetwork& net, const Flow& init,
                       Subroutine sub) {
  require_indexed(net, init);
  if (!check_feasible(net, init).feasible()) {
    throw Error("max_flow: initial flow is infeasible");
  }
  ResidualGraph g(net, init);
  SolveReport report = augment_to_optimality(g, sub);
  return {g.flow(), report};
}

MaxFlowResult max_flow(const FlowNetwork& net, Subroutine sub) {
  return max_flow(net, Flow::zeros(net.edge_count()), sub);
}

std::vector<bool> min_cut(const FlowNetwork& net, const Flow& maxflow) {
  require_indexed(net, maxflow);
  if (!check_feasible(net, maxflow).feasible()) {
    throw Error("min_cut: flow is infeasible");
  }
  const ResidualGraph g(net, maxflow);
  std::vector<bool> side(static_cast<std::size_t>(net.node_count()), false);
  std::vector<NodeId> queue{net.source()};
  side[net.source()] = true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (const ArcId a : g.out_arcs(queue[head])) {
      if (g.residual(a) <= 0) continue;
      const NodeId v = g.arc_head(a);
      if (side[v]) continue;
      side[v] = true;
      queue.push_back(v);
    }
  }
  if (side[net.sink()]) throw Error("min_cut: flow is not maximum");
  return side;
}

Amount cut_capacity(const FlowNetwork& net, const std::vector<bool>& side) {
  Amount total = 0;
  for (const Edge& e : net.edges()) {
    if (side[e.tail] && !side[e.head]) total += e.capacity;
  }
  return total;
}

}  // namespace warmflow
