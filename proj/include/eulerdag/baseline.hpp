#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "eulerdag/decomposition.hpp"
#include "eulerdag/graph.hpp"
#include "eulerdag/working_graph.hpp"

namespace eulerdag {

namespace detail {

inline std::int64_t min_of(const std::vector<std::int64_t>& v) {
  return v.empty() ? 0 : *std::min_element(v.begin(), v.end());
}

inline void check_dst_range(const RelaxState& st, std::size_t m, std::int64_t factor,
                            const char* what) {
  const std::int64_t floor = -factor * static_cast<std::int64_t>(m);
  for (std::int64_t d : st.dst)
    if (d > 0 || d < floor) throw InvariantError(what);
}

}  // namespace detail

struct DfsevenOptions {
  // Called right after each detection, before the cycle is reversed.
  std::function<void(const WorkingGraph&, const RelaxState&)> on_cycle;
};

// Repeatedly runs dfs_spfa from the smallest vertex whose relax flag is set,
// reversing each negative cycle it reports, until no flag is set.
inline SolveResult dfseven(const DirectedGraph& g, const DfsevenOptions& opts = {}) {
  const std::size_t n = g.num_vertices();
  WorkingGraph wg(g);
  RelaxState st(n);
  SolverStats stats;
  VertexId u = 0;
  while (true) {
    while (u < n && !st.relax[u]) ++u;
    if (u >= n) break;
    st.lowest_relaxed = std::numeric_limits<VertexId>::max();
    if (dfs_spfa(wg, st, u)) {
      if (opts.on_cycle) opts.on_cycle(wg, st);
      reverse_found_cycle(wg, st);
      ++stats.cycles_found;
    }
    u = std::min(u, st.lowest_relaxed);
  }
  detail::check_dst_range(st, g.num_edges(), 4, "dfseven: dst left [-4m, 0]");
  stats.relaxations = st.relaxations;
  stats.edges_scanned = st.edges_scanned;
  stats.min_dst = detail::min_of(st.dst);
  SolveResult r{decomposition_from_euler(g, wg.reversed_edges()), stats};
  validate_decomposition(g, r.decomposition);
  return r;
}

class SizeCapError : public std::runtime_error {
 public:
  SizeCapError(std::size_t m, std::size_t cap)
      : std::runtime_error("graph has " + std::to_string(m) + " edges, over the cap of " +
                           std::to_string(cap)) {}
};

struct SimpleOptions {
  std::size_t max_edges = 50000;
};

// Full Bellman-Ford per iteration; each negative cycle is recovered by a
// predecessor walk and reversed. Intended for small graphs only.
inline SolveResult simple(const DirectedGraph& g, const SimpleOptions& opts = {}) {
  if (g.num_edges() > opts.max_edges) throw SizeCapError(g.num_edges(), opts.max_edges);
  const std::size_t n = g.num_vertices(), m = g.num_edges();
  constexpr EdgeId kNone = std::numeric_limits<EdgeId>::max();
  WorkingGraph wg(g);
  SolverStats stats;
  std::vector<std::int64_t> dst(n);
  std::vector<EdgeId> pred(n);
  while (true) {
    std::fill(dst.begin(), dst.end(), 0);
    std::fill(pred.begin(), pred.end(), kNone);
    VertexId last_updated = std::numeric_limits<VertexId>::max();
    bool changed = false;
    for (std::size_t round = 1; round <= n; ++round) {
      changed = false;
      last_updated = std::numeric_limits<VertexId>::max();
      for (EdgeId e = 0; e < m; ++e) {
        ++stats.edges_scanned;
        VertexId t = wg.tail(e), h = wg.head(e);
        if (dst[t] + wg.weight(e) < dst[h]) {
          dst[h] = dst[t] + wg.weight(e);
          pred[h] = e;
          changed = true;
          ++stats.relaxations;
          last_updated = std::min(last_updated, h);
        }
      }
      if (!changed) break;
    }
    if (!changed) break;
    // Relaxed in round n: walking back n predecessors lands on a cycle.
    VertexId x = last_updated;
    for (std::size_t i = 0; i < n; ++i) x = wg.tail(pred[x]);
    Cycle cyc;
    VertexId y = x;
    std::int64_t weight = 0;
    do {
      EdgeId e = pred[y];
      cyc.push_back(e);
      weight += wg.weight(e);
      y = wg.tail(e);
    } while (y != x);
    std::reverse(cyc.begin(), cyc.end());
    detail::require(weight < 0, "simple: predecessor cycle is not negative");
    for (EdgeId e : cyc) wg.flip(e);
    ++stats.cycles_found;
    detail::require(stats.cycles_found <= m, "simple: more iterations than edges");
  }
  stats.min_dst = detail::min_of(dst);
  SolveResult r{decomposition_from_euler(g, wg.reversed_edges()), stats};
  validate_decomposition(g, r.decomposition);
  return r;
}

// Full Bellman-Ford audit used by tests: true iff the orientation given by
// `reversed` (weight +1) and the rest (weight -1) contains a negative cycle.
inline bool has_negative_cycle(const DirectedGraph& g, const EdgeSet& reversed) {
  const std::size_t n = g.num_vertices();
  WorkingGraph wg(g, reversed);
  std::vector<std::int64_t> dst(n, 0);
  for (std::size_t round = 0; round <= n; ++round) {
    bool changed = false;
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      VertexId t = wg.tail(e), h = wg.head(e);
      if (dst[t] + wg.weight(e) < dst[h]) {
        dst[h] = dst[t] + wg.weight(e);
        changed = true;
      }
    }
    if (!changed) return false;
  }
  return true;
}

}  // namespace eulerdag
