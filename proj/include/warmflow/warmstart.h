#ifndef WARMFLOW_WARMSTART_H_
#define WARMFLOW_WARMSTART_H_

#include <array>
#include <chrono>
#include <functional>
#include <span>
#include <string_view>

#include "warmflow/augment.h"
#include "warmflow/flow_core.h"

namespace warmflow {

// Projection rounds, always run in this order.
enum class ProjectionRound {
  kExcessToDeficit = 0,  // A' -> B'
  kExcessToSource = 1,   // A' -> s
  kSinkToDeficit = 2,    // t -> B'
};

inline constexpr std::array<ProjectionRound, 3> kProjectionRounds = {
    ProjectionRound::kExcessToDeficit, ProjectionRound::kExcessToSource,
    ProjectionRound::kSinkToDeficit};

std::string_view round_name(ProjectionRound round);

// Thrown when projection finishes with excess or deficit left over. Every
// excess node can always reach a deficit node or s in the residual graph,
// so this indicates a bug rather than bad input.
class ProjectionInvariantError : public Error {
 public:
  using Error::Error;
};

struct ClampResult {
  Flow flow;
  Amount clamp_total = 0;
};

// f_e <- min(f_hat_e, c_e).
ClampResult clamp_to_capacity(const FlowNetwork& net, const Flow& f_hat);

// Residual graph of f recast as a network, plus super terminals.
//
// Nodes 0..n-1 are the original nodes, super_source = n, super_sink = n + 1.
// Edge 2e carries the forward residual c_e - f_e of original edge e and edge
// 2e + 1 its reverse residual f_e (head -> tail). The super arcs follow in
// ascending node order:
//   kExcessToDeficit: s* -> u (cap ex(u)) for u in A', v -> t* (cap def(v))
//                     for v in B'.
//   kExcessToSource:  s* -> u for u in A', s -> t* with cap sum ex.
//   kSinkToDeficit:   s* -> t with cap sum def, v -> t* for v in B'.
// Networks with flow leaving t or entering s can leave t with a deficit or s
// with an excess; kExcessToSource then adds t -> t* (cap def(t)) and
// kSinkToDeficit adds s* -> s (cap ex(s)).
struct ProjectionAux {
  FlowNetwork network;
  EdgeId base_edge_count = 0;
  NodeId super_source = 0;
  NodeId super_sink = 0;
};

ProjectionAux build_projection_aux(const FlowNetwork& net, const Flow& f,
                                   ProjectionRound round);

// Passed to the projection observer after every push. path is expressed in
// the original network (super arcs stripped); flow is the full current flow.
struct ProjectionEvent {
  ProjectionRound round;
  std::span<const NodeId> path;
  Amount pushed;
  std::span<const Amount> flow;
};

using ProjectionObserver = std::function<void(const ProjectionEvent&)>;

struct ProjectionResult {
  Flow flow;
  PathStats stats;
  std::array<PathStats, 3> round_stats;
};

// Restores conservation on a capacity-respecting flow. Each round repeatedly
// saturates fewest-arc s*-t* paths in its auxiliary graph. Path lengths are
// recorded in original arcs. Throws ProjectionInvariantError if imbalance
// survives all three rounds.
ProjectionResult feasibility_projection(
    const FlowNetwork& net, const Flow& f,
    const ProjectionObserver& observer = nullptr);

struct PhaseDurations {
  std::chrono::nanoseconds clamp{0};
  std::chrono::nanoseconds projection{0};
  std::chrono::nanoseconds optimize{0};
};

struct WarmStartReport {
  Amount clamp_total = 0;
  Amount post_clamp_excess = 0;
  Amount post_clamp_deficit = 0;
  PathStats projection_stats;
  std::array<PathStats, 3> round_stats;
  Amount feasible_value = 0;
  Amount optimal_value = 0;
  PathStats augment_stats;
  PhaseDurations phase_durations;
};

struct WarmStartResult {
  Flow flow;
  WarmStartReport report;
};

// Clamp, project, then augment with sub until optimal.
WarmStartResult warm_start_solve(const FlowNetwork& net, const Flow& f_hat,
                                 Subroutine sub);

}  // namespace warmflow

#endif  // WARMFLOW_WARMSTART_H_
