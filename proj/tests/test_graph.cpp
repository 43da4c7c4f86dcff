#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "test_support.hpp"

using namespace eulerdag;
using namespace testsupport;

namespace {

std::multiset<std::pair<VertexId, VertexId>> edge_bag(const DirectedGraph& g) {
  std::multiset<std::pair<VertexId, VertexId>> s;
  for (const Edge& e : g.edges()) s.insert({e.source, e.target});
  return s;
}

DirectedGraph make(std::size_t n, std::vector<Edge> e) { return DirectedGraph(n, std::move(e)); }

}  // namespace

TEST(DirectedGraph, RejectsSelfLoopsAndDuplicates) {
  EXPECT_THROW(make(2, {{0, 0}}), std::invalid_argument);
  EXPECT_THROW(make(2, {{0, 1}, {0, 1}}), std::invalid_argument);
  EXPECT_THROW(make(2, {{0, 2}}), std::invalid_argument);
}

TEST(DirectedGraph, AdjacencyKeepsInputOrder) {
  DirectedGraph g = make(4, {{0, 3}, {1, 0}, {0, 1}, {0, 2}});
  std::vector<EdgeId> outs(g.out_edges(0).begin(), g.out_edges(0).end());
  EXPECT_EQ(outs, (std::vector<EdgeId>{0, 2, 3}));
  std::size_t in_sum = 0, out_sum = 0;
  for (VertexId v = 0; v < 4; ++v) {
    in_sum += g.in_degree(v);
    out_sum += g.out_degree(v);
  }
  EXPECT_EQ(in_sum, g.num_edges());
  EXPECT_EQ(out_sum, g.num_edges());
}

TEST(Transpose, Examples) {
  EXPECT_EQ(transpose(DirectedGraph()).num_edges(), 0u);
  DirectedGraph cyc = make(2, {{0, 1}, {1, 0}});
  EXPECT_EQ(edge_bag(transpose(cyc)), edge_bag(cyc));
  DirectedGraph path = make(3, {{0, 1}, {1, 2}});
  EXPECT_EQ(edge_bag(transpose(path)), (std::multiset<std::pair<VertexId, VertexId>>{{1, 0}, {2, 1}}));
}

TEST(Transpose, OrderFollowsEdgeList) {
  DirectedGraph g = make(3, {{1, 0}, {2, 0}, {0, 1}});
  DirectedGraph t = transpose(g);
  std::vector<EdgeId> outs(t.out_edges(0).begin(), t.out_edges(0).end());
  EXPECT_EQ(outs, (std::vector<EdgeId>{0, 1}));
}

TEST(Transpose, InvolutionOnRandomGraphs) {
  synthetic::Rng rng(7);
  for (int i = 0; i < 50; ++i) {
    DirectedGraph g = random_graph(rng, 9, 30);
    EXPECT_EQ(edge_bag(transpose(transpose(g))), edge_bag(g));
  }
}

TEST(Scc, DagGivesSingletons) {
  SccPartition p = scc_decompose(make(3, {{0, 1}, {1, 2}}));
  EXPECT_EQ(p.size(), 3u);
  for (const auto& ie : p.internal_edges) EXPECT_TRUE(ie.empty());
}

TEST(Scc, TwoCyclesJoinedByBridge) {
  // a<->b, c<->d, b->c
  SccPartition p = scc_decompose(make(4, {{0, 1}, {1, 0}, {2, 3}, {3, 2}, {1, 2}}));
  ASSERT_EQ(p.size(), 2u);
  EXPECT_EQ(p.components[0], (std::vector<VertexId>{0, 1}));
  EXPECT_EQ(p.components[1], (std::vector<VertexId>{2, 3}));
  EXPECT_EQ(p.internal_edges[0], (std::vector<EdgeId>{0, 1}));
  EXPECT_EQ(p.internal_edges[1], (std::vector<EdgeId>{2, 3}));
}

TEST(Scc, NumberedBySmallestMember) {
  // Component {2,3} is found first by Tarjan's (deep) order but must be id 1.
  SccPartition p = scc_decompose(make(4, {{0, 2}, {2, 3}, {3, 2}, {1, 0}}));
  EXPECT_EQ(p.component_id[0], 0u);
  EXPECT_EQ(p.component_id[1], 1u);
  EXPECT_EQ(p.component_id[2], 2u);
  EXPECT_EQ(p.component_id[3], 2u);
}

TEST(Scc, MatchesReachabilityOnRandomGraphs) {
  synthetic::Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    DirectedGraph g = random_graph(rng, 8, 24);
    SccPartition p = scc_decompose(g);
    auto r = closure(g);
    for (VertexId u = 0; u < g.num_vertices(); ++u)
      for (VertexId v = 0; v < g.num_vertices(); ++v)
        EXPECT_EQ(p.component_id[u] == p.component_id[v], r[u][v] && r[v][u]);
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      const Edge& ed = g.edge(e);
      const auto& ie = p.internal_edges[p.component_id[ed.source]];
      bool internal = std::find(ie.begin(), ie.end(), e) != ie.end();
      EXPECT_EQ(internal, p.component_id[ed.source] == p.component_id[ed.target]);
    }
    // Quotient is acyclic: cross edges never point from a later to an
    // earlier topological position; check via closure of the quotient.
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      const Edge& ed = g.edge(e);
      if (p.component_id[ed.source] != p.component_id[ed.target]) {
        EXPECT_FALSE(r[ed.target][ed.source]);
      }
    }
  }
}

TEST(Scc, DeepPathDoesNotRecurse) {
  const std::size_t n = 200000;
  std::vector<Edge> edges;
  for (VertexId v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1});
  edges.push_back({static_cast<VertexId>(n - 1), 0});
  SccPartition p = scc_decompose(DirectedGraph(n, std::move(edges)));
  EXPECT_EQ(p.size(), 1u);
}

TEST(IsEulerian, Examples) {
  DirectedGraph tri = make(3, {{0, 1}, {1, 2}, {2, 0}});
  EXPECT_TRUE(is_eulerian(tri, EdgeSet(3)));
  EXPECT_TRUE(is_eulerian(tri, EdgeSet(3, true)));
  EXPECT_FALSE(is_eulerian(make(2, {{0, 1}}), EdgeSet(1, true)));
}

TEST(PeelCycles, Examples) {
  DirectedGraph tri = make(3, {{0, 1}, {1, 2}, {2, 0}});
  EXPECT_TRUE(peel_cycles(tri, EdgeSet(3)).empty());
  auto one = peel_cycles(tri, EdgeSet(3, true));
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].size(), 3u);
  // Figure eight: two triangles through vertex 0.
  DirectedGraph eight = make(5, {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {3, 4}, {4, 0}});
  auto two = peel_cycles(eight, EdgeSet(6, true));
  ASSERT_EQ(two.size(), 2u);
  std::vector<int> uses(6, 0);
  for (const auto& c : two) {
    EXPECT_EQ(c.size(), 3u);
    for (EdgeId e : c) ++uses[e];
  }
  for (int u : uses) EXPECT_EQ(u, 1);
}

TEST(PeelCycles, RejectsUnbalanced) {
  EXPECT_THROW(peel_cycles(make(2, {{0, 1}}), EdgeSet(1, true)), std::invalid_argument);
}

TEST(PeelCycles, DisjointCoverOnRandomEulerianSets) {
  synthetic::Rng rng(5);
  int tested = 0;
  for (int i = 0; i < 300; ++i) {
    DirectedGraph g = random_graph(rng, 8, 20);
    if (g.num_edges() > 20) continue;
    OracleResult o = brute_force_max_euler(g);
    auto cycles = peel_cycles(g, o.witness);
    std::vector<int> uses(g.num_edges(), 0);
    for (const auto& c : cycles) {
      std::set<VertexId> vs;
      for (std::size_t k = 0; k < c.size(); ++k) {
        EXPECT_EQ(g.edge(c[k]).target, g.edge(c[(k + 1) % c.size()]).source);
        vs.insert(g.edge(c[k]).source);
        ++uses[c[k]];
      }
      EXPECT_EQ(vs.size(), c.size());
    }
    for (EdgeId e = 0; e < g.num_edges(); ++e) EXPECT_EQ(uses[e], o.witness.contains(e) ? 1 : 0);
    ++tested;
  }
  EXPECT_GT(tested, 200);
}

TEST(FindAnyCycle, Examples) {
  DirectedGraph path = make(3, {{0, 1}, {1, 2}});
  EXPECT_FALSE(find_any_cycle(path, EdgeSet(2, true)).has_value());
  DirectedGraph two = make(2, {{0, 1}, {1, 0}});
  auto c = find_any_cycle(two, EdgeSet(2, true));
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(c->size(), 2u);
}

TEST(FindAnyCycle, AgreesWithEnumeration) {
  synthetic::Rng rng(13);
  for (int i = 0; i < 300; ++i) {
    DirectedGraph g = random_graph(rng, 7, 12);
    EdgeSet s(g.num_edges());
    for (EdgeId e = 0; e < g.num_edges(); ++e)
      if (synthetic::below(rng, 3) != 0) s.insert(e);
    auto c = find_any_cycle(g, s);
    EXPECT_EQ(c.has_value(), brute_has_cycle(g, s));
    if (c) {
      std::set<VertexId> vs;
      for (std::size_t k = 0; k < c->size(); ++k) {
        EXPECT_TRUE(s.contains((*c)[k]));
        EXPECT_EQ(g.edge((*c)[k]).target, g.edge((*c)[(k + 1) % c->size()]).source);
        vs.insert(g.edge((*c)[k]).source);
      }
      EXPECT_EQ(vs.size(), c->size());
    }
  }
}

TEST(ExtractCycles, LeavesAcyclicResidual) {
  synthetic::Rng rng(17);
  for (int i = 0; i < 300; ++i) {
    DirectedGraph g = random_graph(rng, 8, 20);
    EdgeSet s(g.num_edges(), true);
    EdgeSet before = s;
    auto cycles = extract_cycles(g, s);
    EXPECT_FALSE(brute_has_cycle(g, s));
    std::vector<int> uses(g.num_edges(), 0);
    for (const auto& c : cycles) {
      for (std::size_t k = 0; k < c.size(); ++k) {
        EXPECT_EQ(g.edge(c[k]).target, g.edge(c[(k + 1) % c.size()]).source);
        ++uses[c[k]];
      }
    }
    for (EdgeId e = 0; e < g.num_edges(); ++e) EXPECT_EQ(uses[e] == 1, !s.contains(e));
  }
}

TEST(Scc, CrossComponentEdgesNeverInEulerianSubgraphs) {
  synthetic::Rng rng(19);
  for (int i = 0; i < 100; ++i) {
    DirectedGraph g = multi_scc(rng, 2 + synthetic::below(rng, 3), 2 + synthetic::below(rng, 3), 2);
    if (g.num_edges() > 20) continue;
    OracleOptions pure;
    pure.prune = false;
    OracleResult o = brute_force_max_euler(g, pure);
    SccPartition p = scc_decompose(g);
    for (EdgeId e : o.witness.members())
      EXPECT_EQ(p.component_id[g.edge(e).source], p.component_id[g.edge(e).target]);
  }
}
