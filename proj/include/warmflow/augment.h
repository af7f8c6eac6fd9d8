#ifndef WARMFLOW_AUGMENT_H_
#define WARMFLOW_AUGMENT_H_

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "warmflow/flow_core.h"

namespace warmflow {

enum class Subroutine { kEdmondsKarp, kDinic };

std::string_view subroutine_name(Subroutine sub);
// Accepts "ek" and "dinic".
Subroutine parse_subroutine(std::string_view name);

// Residual arcs are numbered 2e (forward along edge e) and 2e + 1 (reverse).
using ArcId = std::int32_t;

// A network plus a mutable capacity-respecting flow on it. Holds a
// reference to the network, which must outlive the graph.
class ResidualGraph {
 public:
  ResidualGraph(const FlowNetwork& net, const Flow& flow);
  explicit ResidualGraph(const FlowNetwork& net);

  const FlowNetwork& network() const { return *net_; }
  NodeId node_count() const { return net_->node_count(); }

  // Outgoing residual arcs of v, ascending by edge index.
  std::span<const ArcId> out_arcs(NodeId v) const {
    return {arcs_.data() + offsets_[v], arcs_.data() + offsets_[v + 1]};
  }

  NodeId arc_tail(ArcId a) const {
    const Edge& e = net_->edge(a >> 1);
    return (a & 1) ? e.head : e.tail;
  }
  NodeId arc_head(ArcId a) const {
    const Edge& e = net_->edge(a >> 1);
    return (a & 1) ? e.tail : e.head;
  }
  Amount residual(ArcId a) const {
    const EdgeId e = a >> 1;
    return (a & 1) ? flow_[e] : net_->capacity(e) - flow_[e];
  }
  void push(ArcId a, Amount amount) {
    flow_[a >> 1] += (a & 1) ? -amount : amount;
  }

  std::span<const Amount> flow_values() const { return flow_; }
  Flow flow() const { return Flow(flow_); }
  ResidualView view() const;

 private:
  const FlowNetwork* net_;
  std::vector<Amount> flow_;
  std::vector<std::int32_t> offsets_;
  std::vector<ArcId> arcs_;
};

// Residual path with every arc positive; bottleneck is the smallest residual.
struct AugPath {
  std::vector<NodeId> nodes;
  std::vector<ArcId> arcs;
  Amount bottleneck = 0;

  std::int64_t length() const { return static_cast<std::int64_t>(arcs.size()); }
};

// Breadth-first search that reuses its buffers across calls, so a search
// that stops early only pays for the nodes it touched.
class BfsSearcher {
 public:
  explicit BfsSearcher(NodeId node_count);

  // Fewest-arc path from -> to. Arcs are scanned in ascending edge order and
  // nodes are visited FIFO, so ties always break the same way. Adds queue
  // pops to stats.node_expansions.
  std::optional<AugPath> find(const ResidualGraph& g, NodeId from, NodeId to,
                              PathStats& stats);

 private:
  std::uint32_t epoch_ = 0;
  std::vector<std::uint32_t> seen_;
  std::vector<ArcId> parent_;
  std::vector<NodeId> queue_;
};

std::optional<AugPath> bfs_path(const ResidualGraph& g, NodeId from, NodeId to,
                                PathStats& stats);

// Sends bottleneck units along path.
void augment_along(ResidualGraph& g, const AugPath& path);

// One Dinic phase: BFS levels from s, then a blocking flow in the level
// graph. Returns the amount pushed (0 when t is unreachable).
Amount dinic_phase(ResidualGraph& g, NodeId s, NodeId t, PathStats& stats);

struct SolveReport {
  Amount initial_value = 0;
  Amount value = 0;
  PathStats stats;
  std::int64_t phases = 0;  // Dinic phases that pushed flow
  std::chrono::nanoseconds duration{0};
};

struct MaxFlowResult {
  Flow flow;
  SolveReport report;
};

// Ford-Fulkerson from the flow currently held by g until no s-t path
// remains.
SolveReport augment_to_optimality(ResidualGraph& g, Subroutine sub);

// init must be feasible; otherwise Error.
MaxFlowResult max_flow(const FlowNetwork& net, const Flow& init,
                       Subroutine sub);
MaxFlowResult max_flow(const FlowNetwork& net, Subroutine sub);

// Source side of the residual cut: nodes reachable from s. Throws Error if
// t is reachable (flow not maximum) or the flow is infeasible.
std::vector<bool> min_cut(const FlowNetwork& net, const Flow& maxflow);

// Sum of capacities on edges from the set to its complement.
Amount cut_capacity(const FlowNetwork& net, const std::vector<bool>& side);

}  // namespace warmflow

#endif  // WARMFLOW_AUGMENT_H_
