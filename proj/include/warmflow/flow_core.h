#ifndef WARMFLOW_FLOW_CORE_H_
#define WARMFLOW_FLOW_CORE_H_

#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace warmflow {

using NodeId = std::int32_t;
using EdgeId = std::int32_t;
using Amount = std::int64_t;

// Raised on malformed input: bad ids, length mismatches, capacity
// violations where a feasible flow is required.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Edge {
  NodeId tail;
  NodeId head;
  Amount capacity;

  bool operator==(const Edge&) const = default;
};

// Directed network with integer capacities. The edge list order is the
// index space every Flow vector refers to. Parallel and anti-parallel edges
// are distinct entries.
class FlowNetwork {
 public:
  FlowNetwork(NodeId node_count, NodeId source, NodeId sink,
              std::vector<Edge> edges);

  NodeId node_count() const { return node_count_; }
  NodeId source() const { return source_; }
  NodeId sink() const { return sink_; }
  EdgeId edge_count() const { return static_cast<EdgeId>(edges_.size()); }
  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }
  Amount capacity(EdgeId e) const { return edges_[e].capacity; }

  // Same topology, new capacity vector.
  FlowNetwork with_capacities(std::span<const Amount> capacities) const;

  // True when both networks have identical node counts, terminals and
  // (tail, head) sequences, so flow vectors can be carried across.
  bool same_structure(const FlowNetwork& other) const;

  bool operator==(const FlowNetwork&) const = default;

 private:
  NodeId node_count_;
  NodeId source_;
  NodeId sink_;
  std::vector<Edge> edges_;
};

// Integer value per edge index. Only non-negativity is enforced; a Flow may
// break capacities and conservation (predictions usually do).
class Flow {
 public:
  Flow() = default;
  explicit Flow(std::vector<Amount> values);
  Flow(std::initializer_list<Amount> values);

  static Flow zeros(EdgeId edge_count);

  std::size_t size() const { return values_.size(); }
  Amount operator[](EdgeId e) const { return values_[e]; }
  std::span<const Amount> values() const { return values_; }
  std::vector<Amount> release() && { return std::move(values_); }

  bool operator==(const Flow&) const = default;

 private:
  std::vector<Amount> values_;
};

struct FeasibilityReport {
  std::vector<EdgeId> capacity_violations;
  std::vector<NodeId> conservation_violations;

  bool feasible() const {
    return capacity_violations.empty() && conservation_violations.empty();
  }
};

// Per-edge residual capacities: forward c_e - f_e, reverse f_e.
struct ResidualView {
  std::vector<Amount> forward;
  std::vector<Amount> reverse;
};

// Excess/deficit per node. Terminals always carry zero of both.
struct Imbalance {
  std::vector<Amount> excess;
  std::vector<Amount> deficit;
  std::vector<NodeId> a_prime;  // excess > 0, ascending
  std::vector<NodeId> b_prime;  // deficit > 0, ascending
  Amount total_excess = 0;
  Amount total_deficit = 0;

  bool balanced() const { return a_prime.empty() && b_prime.empty(); }
};

// Path-search instrumentation. node_expansions counts queue pops (and DFS
// advances for blocking flow) across every search, failed ones included.
struct PathStats {
  std::int64_t path_count = 0;
  std::int64_t total_length = 0;
  std::int64_t max_length = 0;
  std::int64_t node_expansions = 0;

  void record_path(std::int64_t length);
  double mean_length() const;
  PathStats& operator+=(const PathStats& other);
};

Amount flow_value(const FlowNetwork& net, const Flow& f);
FeasibilityReport check_feasible(const FlowNetwork& net, const Flow& f);
Imbalance imbalance(const FlowNetwork& net, const Flow& f);
ResidualView residual(const FlowNetwork& net, const Flow& f);
Amount l1_distance(const Flow& f, const Flow& g);

enum class EtaMode { kExact, kUpperBound };

// Above this many candidate assignments (product of c_e + 1) exact eta
// refuses to enumerate.
inline constexpr double kEtaEnumerationBudget = 1e7;

// L1 distance from f_hat to the nearest feasible maximum flow. kExact
// enumerates every integral feasible flow; kUpperBound measures against the
// canonical optimum only.
Amount eta(const FlowNetwork& net, const Flow& f_hat, EtaMode mode);

// Throws Error unless f has one entry per edge of net.
void require_indexed(const FlowNetwork& net, const Flow& f);

}  // namespace warmflow

#endif  // WARMFLOW_FLOW_CORE_H_
