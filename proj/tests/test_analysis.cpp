#include <gtest/gtest.h>

#include <algorithm>

#include "test_support.hpp"

using namespace eulerdag;
using namespace testsupport;

TEST(BuildGcal, SignsAndBalance) {
  DirectedGraph g(3, {{0, 1}, {1, 2}, {2, 0}, {0, 2}});
  EdgeSet approx(4), exact(4);
  for (EdgeId e : {0u, 1u, 2u}) exact.insert(e);
  SignedMultigraph m = build_gcal(g, approx, exact);
  ASSERT_EQ(m.edges.size(), 5u);
  EXPECT_EQ(m.positive_edges(), 4u);
  EXPECT_EQ(m.edges[0].source, 1u);  // reverse of 0 -> 1
  EXPECT_EQ(m.edges[0].target, 0u);
  EXPECT_EQ(m.edges[4].weight, -1);
  EXPECT_EQ(m.edges[4].origin, 3u);
  EXPECT_TRUE(m.balanced());
  EXPECT_THROW(build_gcal(g, EdgeSet(4, true), exact), std::invalid_argument);
}

TEST(KCycles, FourteenVertexAfterGreedyDelete) {
  ParsedGraph pg = load_fixture("fourteen_vertex.txt");
  PipelineResult pr = greedy_and_refine(pg.graph, GreedyVariant::kDelete);
  SignedMultigraph m = build_gcal(pg.graph, pr.approx, pr.solved.decomposition.euler);
  EXPECT_EQ(m.edges.size(), 14u);
  KCycleReport rep = kcycle_stats(m, pr.greedy_paths);
  std::vector<std::int64_t> weights;
  for (const auto& c : rep.cycles) weights.push_back(c.weight());
  std::sort(weights.begin(), weights.end());
  EXPECT_EQ(weights, (std::vector<std::int64_t>{0, 0, 2}));
  EXPECT_EQ(rep.pair_cycles, 2u);
  EXPECT_EQ(rep.K, 2u);
  EXPECT_EQ(rep.gap, 2);
  EXPECT_EQ(rep.negative_cycles, 0u);
  EXPECT_EQ(rep.bound_violations, 0u);
  EXPECT_EQ(rep.w_correction, 0u);
}

TEST(KCycles, AccountingIdentityOnRandomGraphs) {
  synthetic::Rng rng(501);
  for (int i = 0; i < 200; ++i) {
    DirectedGraph g = strongly_connected(rng, 4 + synthetic::below(rng, 12), synthetic::below(rng, 30));
    for (GreedyVariant v : {GreedyVariant::kDelete, GreedyVariant::kReverse}) {
      PipelineResult pr = greedy_and_refine(g, v);
      const EdgeSet& exact = pr.solved.decomposition.euler;
      SignedMultigraph m = build_gcal(g, pr.approx, exact);
      KCycleReport rep = kcycle_stats(m, pr.greedy_paths);
      std::int64_t sum = 0;
      std::size_t edges = 0;
      for (const auto& c : rep.cycles) {
        sum += static_cast<std::int64_t>(c.delta_prime) - static_cast<std::int64_t>(c.delta);
        edges += c.delta + c.delta_prime;
        EXPECT_GE(c.weight(), 0);
        EXPECT_GE(c.k, 1u);
      }
      EXPECT_EQ(sum, rep.gap);
      EXPECT_EQ(rep.gap, static_cast<std::int64_t>(exact.size()) - static_cast<std::int64_t>(pr.approx.size()));
      EXPECT_EQ(edges, m.edges.size());
      EXPECT_EQ(rep.negative_cycles, 0u);
      EXPECT_LE(rep.pn_path_runs + rep.w_flagged_runs, rep.positive_runs);
    }
  }
}

TEST(KCycles, RejectsSingleSignCycles) {
  SignedMultigraph m;
  m.n = 2;
  m.edges = {{0, 1, -1, 0}, {1, 0, -1, 1}};
  EXPECT_THROW(kcycle_stats(m), InvariantError);
  m.edges.pop_back();
  EXPECT_THROW(kcycle_stats(m), std::invalid_argument);
}

TEST(Bound, Values) {
  Bound b = theoretical_bound(1, 100);
  EXPECT_EQ(b.numerator, 0u);
  b = theoretical_bound(2, 9);
  EXPECT_EQ(b.numerator, 3u);
  EXPECT_EQ(b.denominator, 1u);
  b = theoretical_bound(3, 10);
  EXPECT_EQ(b.numerator, 5u);
  EXPECT_EQ(b.denominator, 1u);
  b = theoretical_bound(4, 7);
  EXPECT_EQ(b.numerator, 21u);
  EXPECT_EQ(b.denominator, 5u);
  EXPECT_DOUBLE_EQ(b.value(), 4.2);
  EXPECT_THROW(theoretical_bound(0, 7), std::invalid_argument);
}

TEST(Bound, GapWithinBoundAfterCorrection) {
  synthetic::Rng rng(503);
  std::size_t over = 0, total = 0;
  for (int i = 0; i < 200; ++i) {
    DirectedGraph g = strongly_connected(rng, 4 + synthetic::below(rng, 12), synthetic::below(rng, 30));
    PipelineResult pr = greedy_and_refine(g, GreedyVariant::kDelete);
    SignedMultigraph m = build_gcal(g, pr.approx, pr.solved.decomposition.euler);
    KCycleReport rep = kcycle_stats(m, pr.greedy_paths);
    if (rep.K < 1) continue;
    ++total;
    Bound b = theoretical_bound(rep.K, g.num_edges());
    // gap <= (K-1)/(K+1) * m + W, compared exactly in integers.
    std::int64_t lhs = (rep.gap - static_cast<std::int64_t>(rep.w_correction)) * static_cast<std::int64_t>(b.denominator);
    if (lhs > static_cast<std::int64_t>(b.numerator)) ++over;
  }
  RecordProperty("instances", std::to_string(total));
  EXPECT_EQ(over, 0u);
}

TEST(Mobility, IdenticalSnapshotsGiveIdentity) {
  synthetic::Rng rng(505);
  auto ph = synthetic::planted_hierarchy({200, 6, 4, 0.05}, rng);
  PipelineResult pr = greedy_and_refine(ph.graph, GreedyVariant::kReverse);
  Ranking r = assign_ranks(ph.graph, pr.solved.decomposition);
  MobilityMatrix mm = mobility_matrix(ph.graph, r, ph.graph, r, 5);
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_EQ(mm.group_sizes[i], 40u);
    for (std::size_t j = 0; j < 5; ++j) EXPECT_DOUBLE_EQ(mm.p[i][j], i == j ? 1.0 : 0.0);
  }
}

TEST(Mobility, ReversedOrderGivesAntiDiagonal) {
  // Chain 0 -> ... -> 9 and its reverse: ranks invert exactly.
  std::vector<Edge> fwd, bwd;
  for (VertexId v = 0; v + 1 < 10; ++v) {
    fwd.push_back({v, v + 1});
    bwd.push_back({v + 1, v});
  }
  DirectedGraph a(10, fwd), b(10, bwd);
  Ranking ra = assign_ranks(a, decomposition_from_euler(a, EdgeSet(9)));
  Ranking rb = assign_ranks(b, decomposition_from_euler(b, EdgeSet(9)));
  MobilityMatrix mm = mobility_matrix(a, ra, b, rb, 5);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) EXPECT_DOUBLE_EQ(mm.p[i][j], i + j == 4 ? 1.0 : 0.0);
}

TEST(Mobility, RowsSumToOneAndGroupsBalanced) {
  synthetic::Rng rng(507);
  auto [s1, s2] = synthetic::drift_pair({303, 5, 3, 0.1}, 0.3, rng);
  Ranking r1 = assign_ranks(s1.graph, greedy_and_refine(s1.graph, GreedyVariant::kReverse).solved.decomposition);
  Ranking r2 = assign_ranks(s2.graph, greedy_and_refine(s2.graph, GreedyVariant::kReverse).solved.decomposition);
  for (std::size_t groups : {1u, 3u, 5u, 7u}) {
    MobilityMatrix mm = mobility_matrix(s1.graph, r1, s2.graph, r2, groups);
    std::size_t lo = SIZE_MAX, hi = 0;
    for (std::size_t i = 0; i < groups; ++i) {
      double row = 0.0;
      for (double x : mm.p[i]) row += x;
      EXPECT_NEAR(row, 1.0, 1e-12);
      lo = std::min(lo, mm.group_sizes[i]);
      hi = std::max(hi, mm.group_sizes[i]);
    }
    EXPECT_LE(hi - lo, 1u);
  }
  EXPECT_THROW(mobility_matrix(s1.graph, r1, DirectedGraph(), Ranking{}, 5), std::invalid_argument);
}

TEST(Predict, FromRanks) {
  Ranking r{0, 1, 1, 2};
  std::vector<std::pair<VertexId, VertexId>> pairs{{0, 1}, {3, 0}, {1, 2}, {0, 9}};
  std::vector<Direction> truth{Direction::kForward, Direction::kForward, Direction::kForward, Direction::kForward};
  PredictionReport rep = predict_from_ranks(r, pairs, truth);
  EXPECT_EQ(rep.predictions, (std::vector<Direction>{Direction::kForward, Direction::kBackward,
                                                     Direction::kAbstain, Direction::kAbstain}));
  EXPECT_EQ(rep.decided, 2u);
  EXPECT_EQ(rep.correct, 1u);
  EXPECT_DOUBLE_EQ(*rep.coverage, 0.5);
  EXPECT_DOUBLE_EQ(*rep.accuracy, 0.5);
  PredictionReport none = predict_from_ranks(r, {});
  EXPECT_FALSE(none.coverage.has_value());
  EXPECT_FALSE(none.accuracy.has_value());
}

TEST(Predict, RecoversPlantedDirections) {
  synthetic::Rng rng(509);
  auto ph = synthetic::planted_hierarchy({600, 6, 5, 0.0}, rng);
  // Hold out every fifth edge.
  std::vector<Edge> train;
  std::vector<std::pair<VertexId, VertexId>> pairs;
  std::vector<Direction> truth;
  for (EdgeId e = 0; e < ph.graph.num_edges(); ++e) {
    const Edge& ed = ph.graph.edge(e);
    if (e % 5 == 0) {
      pairs.push_back({ed.source, ed.target});
      truth.push_back(Direction::kForward);
    } else {
      train.push_back(ed);
    }
  }
  DirectedGraph tg(ph.graph.num_vertices(), std::move(train));
  PredictionReport rep = predict_directions(tg, pairs, truth, 1);
  ASSERT_TRUE(rep.accuracy.has_value());
  RecordProperty("accuracy", std::to_string(*rep.accuracy));
  EXPECT_GE(*rep.accuracy, 0.9);
}
