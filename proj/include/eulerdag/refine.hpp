#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <string>
#include <vector>

#include "eulerdag/baseline.hpp"
#include "eulerdag/decomposition.hpp"
#include "eulerdag/graph.hpp"
#include "eulerdag/working_graph.hpp"

namespace eulerdag {

// Longest-path style potentials on an acyclic residual: 0 at residual sources
// and at vertices without residual edges, otherwise the minimum of dst(v) - 1
// over residual in-neighbours v.
inline std::vector<std::int64_t> init_dst(const DirectedGraph& g, const EdgeSet& residual) {
  const std::size_t n = g.num_vertices();
  std::vector<std::int64_t> dst(n, 0);
  std::vector<std::uint32_t> indeg(n, 0);
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (residual.contains(e)) ++indeg[g.edge(e).target];
  std::deque<VertexId> q;
  for (VertexId v = 0; v < n; ++v)
    if (indeg[v] == 0) q.push_back(v);
  std::size_t done = 0;
  while (!q.empty()) {
    VertexId x = q.front();
    q.pop_front();
    ++done;
    for (EdgeId e : g.out_edges(x)) {
      if (!residual.contains(e)) continue;
      VertexId y = g.edge(e).target;
      dst[y] = std::min(dst[y], dst[x] - 1);
      if (--indeg[y] == 0) q.push_back(y);
    }
  }
  if (done != n) throw InvariantError("init_dst: residual has a cycle", edges_of(g, residual));
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (residual.contains(e) && dst[g.edge(e).source] - 1 < dst[g.edge(e).target])
      throw InvariantError("init_dst: a residual edge is relaxable");
  return dst;
}

struct RefineResult {
  SolveResult solved;
  std::vector<std::int64_t> initial_dst;
};

// Queue-driven negative-cycle search seeded with the approximate solution.
// approx edges start reversed (+1); the front of the queue is retried until
// its search fails, and every vertex on a found cycle's search path is
// appended again.
inline RefineResult refine(const DirectedGraph& g, const EdgeSet& approx) {
  if (!is_eulerian(g, approx)) throw InvariantError("refine: approx is not Eulerian");
  const std::size_t n = g.num_vertices();
  RefineResult out;
  out.initial_dst = init_dst(g, approx.complement());
  WorkingGraph wg(g, approx);
  RelaxState st(n);
  st.dst = out.initial_dst;
  SolverStats stats;
  std::deque<VertexId> q;
  for (VertexId v = 0; v < n; ++v) q.push_back(v);
  while (!q.empty()) {
    VertexId u = q.front();
    if (st.relax[u] && dfs_spfa(wg, st, u)) {
      FoundCycle fc = reverse_found_cycle(wg, st);
      ++stats.cycles_found;
      for (VertexId v : fc.path_snapshot) q.push_back(v);
    } else {
      q.pop_front();
    }
  }
  detail::check_dst_range(st, g.num_edges(), 4, "refine: dst left [-4m, 0]");
  stats.relaxations = st.relaxations;
  stats.edges_scanned = st.edges_scanned;
  stats.min_dst = detail::min_of(st.dst);
  out.solved = {decomposition_from_euler(g, wg.reversed_edges()), stats};
  validate_decomposition(g, out.solved.decomposition);
  return out;
}

}  // namespace eulerdag
