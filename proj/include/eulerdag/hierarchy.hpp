#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <vector>

#include "eulerdag/decomposition.hpp"
#include "eulerdag/graph.hpp"

namespace eulerdag {

using Ranking = std::vector<std::uint32_t>;

// r(u) = 0 without incoming dag edges, otherwise 1 + max over dag in-neighbours.
inline Ranking assign_ranks(const DirectedGraph& g, const Decomposition& d) {
  const std::size_t n = g.num_vertices();
  Ranking r(n, 0);
  std::vector<std::uint32_t> indeg(n, 0);
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (d.dag.contains(e)) ++indeg[g.edge(e).target];
  std::deque<VertexId> q;
  for (VertexId v = 0; v < n; ++v)
    if (indeg[v] == 0) q.push_back(v);
  std::size_t done = 0;
  while (!q.empty()) {
    VertexId x = q.front();
    q.pop_front();
    ++done;
    for (EdgeId e : g.out_edges(x)) {
      if (!d.dag.contains(e)) continue;
      VertexId y = g.edge(e).target;
      r[y] = std::max(r[y], r[x] + 1);
      if (--indeg[y] == 0) q.push_back(y);
    }
  }
  if (done != n) throw InvariantError("assign_ranks: dag has a cycle", edges_of(g, d.dag));
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (d.dag.contains(e) && r[g.edge(e).source] >= r[g.edge(e).target])
      throw InvariantError("assign_ranks: rank order violated");
  return r;
}

inline std::uint64_t agony(const DirectedGraph& g, const Ranking& r) {
  std::uint64_t total = 0;
  for (const Edge& e : g.edges()) {
    std::int64_t x = static_cast<std::int64_t>(r[e.source]) - static_cast<std::int64_t>(r[e.target]) + 1;
    if (x > 0) total += static_cast<std::uint64_t>(x);
  }
  return total;
}

struct RankHistogram {
  std::vector<std::uint64_t> counts;           // index = rank
  std::vector<double> fractions;
  std::vector<double> mean_in_minus_out;       // per rank, over the full graph
};

inline RankHistogram rank_distribution(const DirectedGraph& g, const Ranking& r) {
  RankHistogram h;
  std::uint32_t top = 0;
  for (auto x : r) top = std::max(top, x);
  const std::size_t bins = r.empty() ? 0 : top + 1;
  h.counts.assign(bins, 0);
  h.fractions.assign(bins, 0.0);
  h.mean_in_minus_out.assign(bins, 0.0);
  std::vector<std::int64_t> degree_sum(bins, 0);
  for (VertexId v = 0; v < r.size(); ++v) {
    ++h.counts[r[v]];
    degree_sum[r[v]] += static_cast<std::int64_t>(g.in_degree(v)) - static_cast<std::int64_t>(g.out_degree(v));
  }
  for (std::size_t k = 0; k < bins; ++k) {
    h.fractions[k] = static_cast<double>(h.counts[k]) / static_cast<double>(r.size());
    if (h.counts[k] > 0)
      h.mean_in_minus_out[k] = static_cast<double>(degree_sum[k]) / static_cast<double>(h.counts[k]);
  }
  return h;
}

// True iff r(u) > r(v) and u is reachable from v through dag edges.
inline bool strictly_higher(const DirectedGraph& g, const Decomposition& d, const Ranking& r,
                            VertexId u, VertexId v) {
  if (u == v || r[u] <= r[v]) return false;
  std::vector<std::uint8_t> seen(g.num_vertices(), 0);
  std::vector<VertexId> stack{v};
  seen[v] = 1;
  while (!stack.empty()) {
    VertexId x = stack.back();
    stack.pop_back();
    for (EdgeId e : g.out_edges(x)) {
      if (!d.dag.contains(e)) continue;
      VertexId y = g.edge(e).target;
      if (y == u) return true;
      if (!seen[y]) {
        seen[y] = 1;
        stack.push_back(y);
      }
    }
  }
  return false;
}

// Order used for quantile and top-p selection: rank desc, in-degree desc, id asc.
inline std::vector<VertexId> rank_order(const DirectedGraph& g, const Ranking& r) {
  std::vector<VertexId> order(r.size());
  for (VertexId v = 0; v < r.size(); ++v) order[v] = v;
  std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
    if (r[a] != r[b]) return r[a] > r[b];
    if (g.in_degree(a) != g.in_degree(b)) return g.in_degree(a) > g.in_degree(b);
    return a < b;
  });
  return order;
}

// The ceil(p * n) highest-ranked vertices.
inline std::vector<VertexId> top_fraction(const DirectedGraph& g, const Ranking& r, double p) {
  auto order = rank_order(g, r);
  std::size_t k = static_cast<std::size_t>(std::ceil(std::clamp(p, 0.0, 1.0) * static_cast<double>(order.size()) - 1e-9));
  order.resize(std::min(k, order.size()));
  return order;
}

}  // namespace eulerdag
