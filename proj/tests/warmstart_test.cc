#include "warmflow/warmstart.h"

#include <random>

#include "gtest/gtest.h"
#include "support.h"
#include "warmflow/learn.h"

namespace warmflow {
namespace {

using testing::chain;
using testing::n1;

TEST(ClampTest, Examples) {
  const ClampResult a = clamp_to_capacity(n1(), Flow{3, 1});
  EXPECT_EQ(a.flow, Flow({2, 1}));
  EXPECT_EQ(a.clamp_total, 1);

  const ClampResult b = clamp_to_capacity(n1(), Flow{1, 1});
  EXPECT_EQ(b.flow, Flow({1, 1}));
  EXPECT_EQ(b.clamp_total, 0);

  const ClampResult c = clamp_to_capacity(n1(), Flow{5, 9});
  EXPECT_EQ(c.flow, Flow({2, 1}));
  EXPECT_EQ(c.clamp_total, 11);

  EXPECT_THROW(clamp_to_capacity(n1(), Flow{1}), Error);
}

// Super arcs of an auxiliary network as (tail, head, cap) triples.
std::vector<Edge> super_arcs(const ProjectionAux& aux) {
  const auto& all = aux.network.edges();
  return {all.begin() + 2 * aux.base_edge_count, all.end()};
}

TEST(ProjectionAuxTest, ExcessToDeficitWithoutDeficits) {
  const ProjectionAux aux =
      build_projection_aux(n1(), Flow{2, 1}, ProjectionRound::kExcessToDeficit);
  EXPECT_EQ(aux.super_source, 3);
  EXPECT_EQ(aux.super_sink, 4);
  const auto arcs = super_arcs(aux);
  ASSERT_EQ(arcs.size(), 1u);
  EXPECT_EQ(arcs[0].tail, 3);
  EXPECT_EQ(arcs[0].head, 1);
  EXPECT_EQ(arcs[0].capacity, 1);
  // Residual arcs: forward c - f, reverse f.
  EXPECT_EQ(aux.network.capacity(0), 0);
  EXPECT_EQ(aux.network.capacity(1), 2);
  EXPECT_EQ(aux.network.capacity(2), 0);
  EXPECT_EQ(aux.network.capacity(3), 1);
  EXPECT_EQ(max_flow(aux.network, Subroutine::kEdmondsKarp).report.value, 0);
}

TEST(ProjectionAuxTest, ExcessToSourceRoutesBackThroughReverseArc) {
  const ProjectionAux aux =
      build_projection_aux(n1(), Flow{2, 1}, ProjectionRound::kExcessToSource);
  const auto arcs = super_arcs(aux);
  ASSERT_EQ(arcs.size(), 2u);
  EXPECT_EQ(arcs[0].tail, 3);
  EXPECT_EQ(arcs[0].head, 1);
  EXPECT_EQ(arcs[1].tail, 0);
  EXPECT_EQ(arcs[1].head, 4);

  const ResidualGraph g(aux.network);
  PathStats stats;
  const auto path = bfs_path(g, 3, 4, stats);
  ASSERT_TRUE(path);
  EXPECT_EQ(path->nodes, (std::vector<NodeId>{3, 1, 0, 4}));
}

TEST(ProjectionAuxTest, FeasibleFlowHasNoExcessArcs) {
  const ProjectionAux aux =
      build_projection_aux(n1(), Flow{1, 1}, ProjectionRound::kExcessToDeficit);
  EXPECT_TRUE(super_arcs(aux).empty());
}

TEST(ProjectionAuxTest, RejectsCapacityViolation) {
  EXPECT_THROW(
      build_projection_aux(n1(), Flow{3, 1}, ProjectionRound::kExcessToSource),
      Error);
}

TEST(ProjectionTest, Examples) {
  const ProjectionResult a = feasibility_projection(n1(), Flow{2, 1});
  EXPECT_EQ(a.flow, Flow({1, 1}));
  EXPECT_EQ(a.stats.path_count, 1);
  EXPECT_EQ(a.stats.total_length, 1);
  EXPECT_EQ(flow_value(n1(), a.flow), 1);
  EXPECT_EQ(a.round_stats[1].path_count, 1);

  const ProjectionResult b = feasibility_projection(chain(2), Flow{1, 0, 1});
  EXPECT_EQ(b.flow, Flow({1, 1, 1}));
  EXPECT_EQ(b.stats.path_count, 1);
  EXPECT_EQ(b.stats.total_length, 1);
  EXPECT_EQ(b.round_stats[0].path_count, 1);

  const ProjectionResult c = feasibility_projection(chain(2), Flow{1, 1, 1});
  EXPECT_EQ(c.flow, Flow({1, 1, 1}));
  EXPECT_EQ(c.stats.path_count, 0);
}

TEST(ProjectionTest, HandlesFlowLeavingSinkAndEnteringSource) {
  // s -> t (1), t -> u (1), u -> s (1): u's excess can only go back to t.
  const FlowNetwork net(3, 0, 1, {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}});
  const ProjectionResult a = feasibility_projection(net, Flow{0, 1, 0});
  EXPECT_TRUE(check_feasible(net, a.flow).feasible());
  // u's deficit can only be filled from s.
  const ProjectionResult b = feasibility_projection(net, Flow{0, 0, 1});
  EXPECT_TRUE(check_feasible(net, b.flow).feasible());
}

TEST(WarmStartTest, Examples) {
  const auto exact = warm_start_solve(n1(), Flow{1, 1}, Subroutine::kEdmondsKarp);
  EXPECT_EQ(exact.report.projection_stats.path_count, 0);
  EXPECT_EQ(exact.report.augment_stats.path_count, 0);

  const auto over = warm_start_solve(n1(), Flow{3, 1}, Subroutine::kEdmondsKarp);
  EXPECT_EQ(over.report.clamp_total, 1);
  EXPECT_EQ(over.report.projection_stats.path_count, 1);
  EXPECT_EQ(over.report.augment_stats.path_count, 0);
  EXPECT_EQ(over.report.optimal_value, 1);

  const auto c = warm_start_solve(chain(2), Flow{1, 0, 1}, Subroutine::kEdmondsKarp);
  EXPECT_EQ(c.report.projection_stats.path_count, 1);
  EXPECT_EQ(c.report.augment_stats.path_count, 1);
  EXPECT_EQ(c.report.augment_stats.total_length, 3);
  EXPECT_EQ(c.report.optimal_value, 2);
  EXPECT_EQ(c.flow, Flow({2, 2, 2}));
}

TEST(WarmStartTest, MatchesColdStartOnArbitraryPredictions) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 300; ++i) {
    const FlowNetwork net = testing::random_network(rng);
    const Amount optimum = testing::brute_force_max_flow_value(net);
    for (auto kind : {testing::PredictionKind::kUniformWide,
                      testing::PredictionKind::kWithinCapacity}) {
      const Flow f_hat = testing::random_prediction(rng, net, kind);
      for (Subroutine sub : {Subroutine::kEdmondsKarp, Subroutine::kDinic}) {
        const auto r = warm_start_solve(net, f_hat, sub);
        EXPECT_EQ(r.report.optimal_value, optimum);
        EXPECT_TRUE(testing::oracle_feasible(net, r.flow.values()));
        EXPECT_LE(r.report.feasible_value, r.report.optimal_value);
      }
    }
  }
}

TEST(ProjectionPropertyTest, ImbalanceAlwaysRoutable) {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 300; ++i) {
    const FlowNetwork net = testing::random_network(rng);
    const Flow f = testing::random_prediction(
        rng, net, testing::PredictionKind::kWithinCapacity);
    EXPECT_TRUE(testing::imbalance_routable(net, f.values()));
    feasibility_projection(net, f, [&](const ProjectionEvent& ev) {
      EXPECT_TRUE(testing::imbalance_routable(net, ev.flow));
    });
  }
}

TEST(ProjectionPropertyTest, LaterRoundsNeverReopenExcessToDeficitPaths) {
  std::mt19937_64 rng(43);
  int later_pushes = 0;
  for (int i = 0; i < 400; ++i) {
    const FlowNetwork net = testing::random_network(rng);
    const Flow f = testing::random_prediction(
        rng, net, testing::PredictionKind::kWithinCapacity);
    feasibility_projection(net, f, [&](const ProjectionEvent& ev) {
      if (ev.round == ProjectionRound::kExcessToDeficit) return;
      ++later_pushes;
      EXPECT_FALSE(testing::has_excess_to_deficit_path(net, ev.flow));
    });
  }
  EXPECT_GT(later_pushes, 100);
}

TEST(ProjectionPropertyTest, EachPathReducesImbalance) {
  std::mt19937_64 rng(47);
  for (int i = 0; i < 300; ++i) {
    const FlowNetwork net = testing::random_network(rng);
    const Flow f = testing::random_prediction(
        rng, net, testing::PredictionKind::kWithinCapacity);
    const auto start = testing::oracle_imbalance(net, f.values());
    Amount previous = start.total_excess + start.total_deficit;
    const ProjectionResult r =
        feasibility_projection(net, f, [&](const ProjectionEvent& ev) {
          const auto now = testing::oracle_imbalance(net, ev.flow);
          const Amount total = now.total_excess + now.total_deficit;
          EXPECT_LT(total, previous);
          EXPECT_GE(ev.pushed, 1);
          previous = total;
        });
    EXPECT_LE(r.stats.path_count, start.total_excess + start.total_deficit);
  }
}

TEST(WarmStartPropertyTest, IterationAccounting) {
  std::mt19937_64 rng(53);
  for (int i = 0; i < 300; ++i) {
    const FlowNetwork net = testing::random_network(rng);
    const Flow f_hat = testing::random_prediction(
        rng, net, testing::PredictionKind::kUniformWide);
    const auto r = warm_start_solve(net, f_hat, Subroutine::kEdmondsKarp);
    const auto& rep = r.report;
    EXPECT_LE(rep.projection_stats.path_count,
              rep.post_clamp_excess + rep.post_clamp_deficit);
    EXPECT_LE(rep.augment_stats.path_count,
              rep.optimal_value - rep.feasible_value);
  }
}

// A unit of error on an edge between two inner nodes unbalances both ends,
// so imbalance is bounded by twice the prediction error, not once.
TEST(WarmStartPropertyTest, InteriorEdgeErrorCountsTwice) {
  const FlowNetwork net = chain(2);
  const Flow f_hat{2, 1, 2};
  EXPECT_EQ(eta(net, f_hat, EtaMode::kExact), 1);
  const Imbalance imb = imbalance(net, f_hat);
  EXPECT_EQ(imb.total_excess + imb.total_deficit, 2);
}

TEST(WarmStartPropertyTest, PredictionErrorBounds) {
  std::mt19937_64 rng(59);
  int checked = 0;
  while (checked < 120) {
    const FlowNetwork net = testing::random_network(
        rng, {.min_nodes = 3, .max_nodes = 5, .max_edges = 7, .max_cap = 3});
    if (testing::box_size(net) > 2e4) continue;
    const Flow f_hat = testing::random_prediction(
        rng, net, testing::PredictionKind::kUniformWide);
    const Amount eta_exact = testing::oracle_eta(net, f_hat);
    const auto r = warm_start_solve(net, f_hat, Subroutine::kEdmondsKarp);
    const auto& rep = r.report;
    EXPECT_LE(rep.optimal_value - rep.feasible_value, eta_exact);
    EXPECT_LE(rep.clamp_total, eta_exact);
    EXPECT_LE(rep.post_clamp_excess + rep.post_clamp_deficit,
              2 * (eta_exact - rep.clamp_total));
    ++checked;
  }
}

TEST(WarmStartPropertyTest, OptimalPredictionDoesNoWork) {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 200; ++i) {
    const FlowNetwork net = testing::random_network(rng);
    const Flow optimum = canonical_optimum(net);
    const auto r = warm_start_solve(net, optimum, Subroutine::kDinic);
    EXPECT_EQ(r.report.clamp_total, 0);
    EXPECT_EQ(r.report.projection_stats.path_count, 0);
    EXPECT_EQ(r.report.augment_stats.path_count, 0);
    EXPECT_EQ(r.flow, optimum);
  }
}

}  // namespace
}  // namespace warmflow
