#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace eulerdag;
using namespace testsupport;

TEST(DfsSpfa, TraceFromV6) {
  ParsedGraph pg = load_fixture("spfa_trace.txt");
  WorkingGraph wg(pg.graph);
  RelaxState st(pg.graph.num_vertices());
  ASSERT_TRUE(dfs_spfa(wg, st, id(pg, "v6")));
  EXPECT_EQ(st.dst[id(pg, "v3")], -4);
  EXPECT_EQ(st.dst[id(pg, "v1")], -2);
  EXPECT_EQ(st.dst[id(pg, "v2")], -3);
  EXPECT_EQ(st.dst[id(pg, "v6")], 0);
  ASSERT_TRUE(st.nv.has_value());
  EXPECT_EQ(*st.nv, id(pg, "v3"));
  std::vector<VertexId> sv{id(pg, "v6"), id(pg, "v3"), id(pg, "v1"), id(pg, "v2")};
  EXPECT_EQ(st.sv, sv);

  FoundCycle fc = reverse_found_cycle(wg, st);
  ASSERT_EQ(fc.edges.size(), 3u);
  EXPECT_EQ(fc.edges[0], edge_id(pg, "v3", "v1"));
  EXPECT_EQ(fc.edges[1], edge_id(pg, "v1", "v2"));
  EXPECT_EQ(fc.edges[2], edge_id(pg, "v2", "v3"));
  for (EdgeId e : fc.edges) EXPECT_TRUE(wg.reversed(e));
  EXPECT_TRUE(st.sv.empty());
  EXPECT_TRUE(st.se.empty());
}

TEST(DfsSpfa, NoCycleClearsRelaxFlag) {
  DirectedGraph path(3, {{0, 1}, {1, 2}});
  WorkingGraph wg(path);
  RelaxState st(3);
  EXPECT_FALSE(dfs_spfa(wg, st, 0));
  EXPECT_EQ(st.relax[0], 0);
  EXPECT_EQ(st.dst[2], -2);
  EXPECT_TRUE(st.sv.empty());
}

TEST(Dfseven, TraceGraphEulerSet) {
  ParsedGraph pg = load_fixture("spfa_trace.txt");
  SolveResult r = dfseven(pg.graph);
  std::set<std::pair<std::string, std::string>> want{{"v3", "v1"}, {"v1", "v2"}, {"v2", "v3"}};
  EXPECT_EQ(labelled(pg, r.decomposition.euler), want);
}

TEST(Dfseven, FirstCycleState) {
  ParsedGraph pg = load_fixture("spfa_trace.txt");
  int calls = 0;
  DfsevenOptions opts;
  opts.on_cycle = [&](const WorkingGraph&, const RelaxState& st) {
    if (calls++ > 0) return;
    EXPECT_EQ(st.dst[id(pg, "v3")], -4);
    EXPECT_EQ(st.dst[id(pg, "v1")], -2);
    EXPECT_EQ(st.dst[id(pg, "v2")], -3);
    EXPECT_EQ(*st.nv, id(pg, "v3"));
  };
  dfseven(pg.graph, opts);
  EXPECT_EQ(calls, 1);
}

TEST(Solvers, SmallExamples) {
  DirectedGraph empty;
  EXPECT_EQ(dfseven(empty).decomposition.euler.size(), 0u);
  EXPECT_EQ(simple(empty).decomposition.euler.size(), 0u);
  DirectedGraph dag(3, {{0, 1}, {1, 2}, {0, 2}});
  EXPECT_EQ(dfseven(dag).decomposition.euler.size(), 0u);
  EXPECT_EQ(simple(dag).decomposition.euler.size(), 0u);
  DirectedGraph two(2, {{0, 1}, {1, 0}});
  EXPECT_EQ(dfseven(two).decomposition.euler.size(), 2u);
  EXPECT_EQ(simple(two).decomposition.euler.size(), 2u);
  // Two triangles sharing vertex 0 plus a chord that cannot be balanced.
  DirectedGraph eight(5, {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {3, 4}, {4, 0}, {1, 3}});
  EXPECT_EQ(dfseven(eight).decomposition.euler.size(), 6u);
  EXPECT_EQ(simple(eight).decomposition.euler.size(), 6u);
}

TEST(Solvers, MatchOracleOnRandomGraphs) {
  synthetic::Rng rng(101);
  for (int i = 0; i < 300; ++i) {
    DirectedGraph g = i % 3 == 0 ? multi_scc(rng, 3 + synthetic::below(rng, 3), 2 + synthetic::below(rng, 3), 3)
                                 : random_graph(rng, 8, 16);
    if (g.num_edges() > 16) continue;
    std::size_t want = brute_force_max_euler(g).best_size;
    SolveResult a = dfseven(g);
    SolveResult b = simple(g);
    EXPECT_EQ(a.decomposition.euler.size(), want);
    EXPECT_EQ(b.decomposition.euler.size(), want);
    EXPECT_FALSE(brute_negative_cycle(g, a.decomposition.euler));
    EXPECT_FALSE(brute_negative_cycle(g, b.decomposition.euler));
  }
}

TEST(Solvers, DstStaysInRange) {
  synthetic::Rng rng(103);
  for (int i = 0; i < 200; ++i) {
    DirectedGraph g = random_graph(rng, 30, 120);
    SolveResult r = dfseven(g);
    EXPECT_LE(r.stats.min_dst, 0);
    EXPECT_GE(r.stats.min_dst, -4 * static_cast<std::int64_t>(g.num_edges()));
  }
}

TEST(Solvers, EulerianInputIsKeptWhole) {
  synthetic::Rng rng(107);
  for (int i = 0; i < 50; ++i) {
    // Union of random cycles on disjoint vertex sets is Eulerian.
    std::vector<Edge> edges;
    VertexId base = 0;
    for (int c = 0; c < 4; ++c) {
      std::size_t len = 2 + synthetic::below(rng, 5);
      for (std::size_t k = 0; k < len; ++k)
        edges.push_back({static_cast<VertexId>(base + k), static_cast<VertexId>(base + (k + 1) % len)});
      base += static_cast<VertexId>(len);
    }
    DirectedGraph g(base, std::move(edges));
    EXPECT_EQ(dfseven(g).decomposition.euler.size(), g.num_edges());
    EXPECT_EQ(simple(g).decomposition.euler.size(), g.num_edges());
  }
}

TEST(Simple, RefusesLargeGraphs) {
  synthetic::Rng rng(109);
  DirectedGraph g = synthetic::random_digraph_m(40, 200, rng);
  SimpleOptions o;
  o.max_edges = 100;
  EXPECT_THROW(simple(g, o), SizeCapError);
}

TEST(HasNegativeCycle, AgreesWithIndependentAudit) {
  synthetic::Rng rng(113);
  for (int i = 0; i < 300; ++i) {
    DirectedGraph g = random_graph(rng, 7, 14);
    EdgeSet rev(g.num_edges());
    for (EdgeId e = 0; e < g.num_edges(); ++e)
      if (synthetic::below(rng, 2)) rev.insert(e);
    EXPECT_EQ(has_negative_cycle(g, rev), brute_negative_cycle(g, rev));
  }
}
