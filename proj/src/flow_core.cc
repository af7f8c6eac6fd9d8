#include "warmflow/flow_core.h"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <sstream>

#include "warmflow/learn.h"

namespace warmflow {

FlowNetwork::FlowNetwork(NodeId node_count, NodeId source, NodeId sink,
                         std::vector<Edge> edges)
    : node_count_(node_count),
      source_(source),
      sink_(sink),
      edges_(std::move(edges)) {
  if (node_count_ <= 0) throw Error("network needs at least one node");
  auto in_range = [&](NodeId v) { return v >= 0 && v < node_count_; };
  if (!in_range(source_) || !in_range(sink_)) {
    throw Error("terminal id out of range");
  }
  if (source_ == sink_) throw Error("source and sink coincide");
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if (!in_range(e.tail) || !in_range(e.head)) {
      std::ostringstream msg;
      msg << "edge " << i << " has an endpoint out of range";
      throw Error(msg.str());
    }
    if (e.tail == e.head) {
      std::ostringstream msg;
      msg << "edge " << i << " is a self-loop";
      throw Error(msg.str());
    }
    if (e.capacity < 0) {
      std::ostringstream msg;
      msg << "edge " << i << " has negative capacity";
      throw Error(msg.str());
    }
  }
}

FlowNetwork FlowNetwork::with_capacities(
    std::span<const Amount> capacities) const {
  if (capacities.size() != edges_.size()) {
    throw Error("capacity vector length does not match edge count");
  }
  std::vector<Edge> edges = edges_;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    edges[i].capacity = capacities[i];
  }
  return FlowNetwork(node_count_, source_, sink_, std::move(edges));
}

bool FlowNetwork::same_structure(const FlowNetwork& other) const {
  if (node_count_ != other.node_count_ || source_ != other.source_ ||
      sink_ != other.sink_ || edges_.size() != other.edges_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (edges_[i].tail != other.edges_[i].tail ||
        edges_[i].head != other.edges_[i].head) {
      return false;
    }
  }
  return true;
}

Flow::Flow(std::vector<Amount> values) : values_(std::move(values)) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] < 0) {
      std::ostringstream msg;
      msg << "flow entry " << i << " is negative";
      throw Error(msg.str());
    }
  }
}

Flow::Flow(std::initializer_list<Amount> values)
    : Flow(std::vector<Amount>(values)) {}

Flow Flow::zeros(EdgeId edge_count) {
  return Flow(std::vector<Amount>(static_cast<std::size_t>(edge_count), 0));
}

void PathStats::record_path(std::int64_t length) {
  ++path_count;
  total_length += length;
  max_length = std::max(max_length, length);
}

double PathStats::mean_length() const {
  if (path_count == 0) return 0.0;
  return static_cast<double>(total_length) / static_cast<double>(path_count);
}

PathStats& PathStats::operator+=(const PathStats& other) {
  path_count += other.path_count;
  total_length += other.total_length;
  max_length = std::max(max_length, other.max_length);
  node_expansions += other.node_expansions;
  return *this;
}

void require_indexed(const FlowNetwork& net, const Flow& f) {
  if (f.size() != static_cast<std::size_t>(net.edge_count())) {
    std::ostringstream msg;
    msg << "flow has " << f.size() << " entries but network has "
        << net.edge_count() << " edges";
    throw Error(msg.str());
  }
}

namespace {

void require_capacities(const FlowNetwork& net, const Flow& f) {
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    if (f[e] > net.capacity(e)) {
      std::ostringstream msg;
      msg << "flow on edge " << e << " exceeds its capacity";
      throw Error(msg.str());
    }
  }
}

// inflow - outflow per node.
std::vector<Amount> net_inflow(const FlowNetwork& net, const Flow& f) {
  std::vector<Amount> balance(static_cast<std::size_t>(net.node_count()), 0);
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    const Edge& edge = net.edge(e);
    balance[edge.tail] -= f[e];
    balance[edge.head] += f[e];
  }
  return balance;
}

}  // namespace

Amount flow_value(const FlowNetwork& net, const Flow& f) {
  require_indexed(net, f);
  Amount value = 0;
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    const Edge& edge = net.edge(e);
    if (edge.tail == net.source()) value += f[e];
    if (edge.head == net.source()) value -= f[e];
  }
  return value;
}

FeasibilityReport check_feasible(const FlowNetwork& net, const Flow& f) {
  require_indexed(net, f);
  FeasibilityReport report;
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    if (f[e] > net.capacity(e)) report.capacity_violations.push_back(e);
  }
  const std::vector<Amount> balance = net_inflow(net, f);
  for (NodeId v = 0; v < net.node_count(); ++v) {
    if (v == net.source() || v == net.sink()) continue;
    if (balance[v] != 0) report.conservation_violations.push_back(v);
  }
  return report;
}

Imbalance imbalance(const FlowNetwork& net, const Flow& f) {
  require_indexed(net, f);
  require_capacities(net, f);
  const std::vector<Amount> balance = net_inflow(net, f);
  Imbalance out;
  out.excess.assign(balance.size(), 0);
  out.deficit.assign(balance.size(), 0);
  for (NodeId v = 0; v < net.node_count(); ++v) {
    if (v == net.source() || v == net.sink()) continue;
    if (balance[v] > 0) {
      out.excess[v] = balance[v];
      out.a_prime.push_back(v);
      out.total_excess += balance[v];
    } else if (balance[v] < 0) {
      out.deficit[v] = -balance[v];
      out.b_prime.push_back(v);
      out.total_deficit -= balance[v];
    }
  }
  return out;
}

ResidualView residual(const FlowNetwork& net, const Flow& f) {
  require_indexed(net, f);
  require_capacities(net, f);
  ResidualView view;
  view.forward.reserve(f.size());
  view.reverse.reserve(f.size());
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    view.forward.push_back(net.capacity(e) - f[e]);
    view.reverse.push_back(f[e]);
  }
  return view;
}

Amount l1_distance(const Flow& f, const Flow& g) {
  if (f.size() != g.size()) throw Error("flow lengths differ");
  Amount total = 0;
  for (std::size_t e = 0; e < f.size(); ++e) {
    total += std::abs(f[static_cast<EdgeId>(e)] - g[static_cast<EdgeId>(e)]);
  }
  return total;
}

namespace {

// Depth-first enumeration of integral feasible flows, one edge at a time.
// A node is checked for conservation as soon as its last incident edge is
// fixed; partial assignments whose imbalance exceeds the capacity still
// undecided at that node are cut early.
class FeasibleFlowEnumerator {
 public:
  FeasibleFlowEnumerator(const FlowNetwork& net, const Flow& target)
      : net_(net), target_(target) {
    const auto n = static_cast<std::size_t>(net.node_count());
    balance_.assign(n, 0);
    remaining_.assign(n, 0);
    last_edge_.assign(n, -1);
    for (EdgeId e = 0; e < net.edge_count(); ++e) {
      const Edge& edge = net.edge(e);
      remaining_[edge.tail] += edge.capacity;
      remaining_[edge.head] += edge.capacity;
      last_edge_[edge.tail] = e;
      last_edge_[edge.head] = e;
    }
  }

  // Returns min L1 distance over maximum-value feasible flows.
  Amount run() {
    visit(0, 0, 0);
    return best_distance_;
  }

 private:
  bool is_terminal(NodeId v) const {
    return v == net_.source() || v == net_.sink();
  }

  bool node_ok(NodeId v, EdgeId e) const {
    if (is_terminal(v)) return true;
    if (last_edge_[v] == e) return balance_[v] == 0;
    return std::abs(balance_[v]) <= remaining_[v];
  }

  void visit(EdgeId e, Amount value, Amount distance) {
    if (e == net_.edge_count()) {
      if (value > best_value_ ||
          (value == best_value_ && distance < best_distance_)) {
        best_value_ = value;
        best_distance_ = distance;
      }
      return;
    }
    const Edge& edge = net_.edge(e);
    remaining_[edge.tail] -= edge.capacity;
    remaining_[edge.head] -= edge.capacity;
    for (Amount x = 0; x <= edge.capacity; ++x) {
      balance_[edge.tail] -= x;
      balance_[edge.head] += x;
      if (node_ok(edge.tail, e) && node_ok(edge.head, e)) {
        Amount dv = 0;
        if (edge.tail == net_.source()) dv += x;
        if (edge.head == net_.source()) dv -= x;
        visit(e + 1, value + dv, distance + std::abs(x - target_[e]));
      }
      balance_[edge.tail] += x;
      balance_[edge.head] -= x;
    }
    remaining_[edge.tail] += edge.capacity;
    remaining_[edge.head] += edge.capacity;
  }

  const FlowNetwork& net_;
  const Flow& target_;
  std::vector<Amount> balance_;
  std::vector<Amount> remaining_;
  std::vector<EdgeId> last_edge_;
  Amount best_value_ = std::numeric_limits<Amount>::min();
  Amount best_distance_ = std::numeric_limits<Amount>::max();
};

}  // namespace

Amount eta(const FlowNetwork& net, const Flow& f_hat, EtaMode mode) {
  require_indexed(net, f_hat);
  if (mode == EtaMode::kUpperBound) {
    return l1_distance(f_hat, canonical_optimum(net));
  }
  double states = 1.0;
  for (const Edge& edge : net.edges()) {
    states *= static_cast<double>(edge.capacity) + 1.0;
    if (states > kEtaEnumerationBudget) {
      throw Error("exact eta: enumeration space exceeds budget");
    }
  }
  return FeasibleFlowEnumerator(net, f_hat).run();
}

}  // namespace warmflow
