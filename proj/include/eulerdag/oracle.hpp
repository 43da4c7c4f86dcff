#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "eulerdag/graph.hpp"

namespace eulerdag {

struct OracleResult {
  std::size_t best_size = 0;
  EdgeSet witness;
  std::uint64_t subsets_examined = 0;
};

struct OracleOptions {
  std::size_t max_edges = 20;
  bool prune = true;  // enumerate each strongly connected component on its own
};

namespace detail {

// Largest balanced subset of `edges` by exhaustive bitmask enumeration; the
// first maximum in ascending mask order wins.
inline std::uint32_t best_balanced_mask(const DirectedGraph& g, const std::vector<EdgeId>& edges,
                                        std::uint64_t& examined) {
  const std::size_t k = edges.size();
  std::vector<VertexId> verts;
  for (EdgeId e : edges) {
    verts.push_back(g.edge(e).source);
    verts.push_back(g.edge(e).target);
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  std::vector<std::uint32_t> out_mask(verts.size(), 0), in_mask(verts.size(), 0);
  auto idx = [&](VertexId v) {
    return static_cast<std::size_t>(std::lower_bound(verts.begin(), verts.end(), v) - verts.begin());
  };
  for (std::size_t i = 0; i < k; ++i) {
    out_mask[idx(g.edge(edges[i]).source)] |= 1u << i;
    in_mask[idx(g.edge(edges[i]).target)] |= 1u << i;
  }
  std::uint32_t best = 0;
  int best_count = 0;
  const std::uint64_t total = 1ull << k;
  for (std::uint64_t mm = 1; mm < total; ++mm) {
    ++examined;
    auto mask = static_cast<std::uint32_t>(mm);
    int c = std::popcount(mask);
    if (c <= best_count) continue;
    bool ok = true;
    for (std::size_t v = 0; v < verts.size() && ok; ++v)
      ok = std::popcount(mask & out_mask[v]) == std::popcount(mask & in_mask[v]);
    if (ok) {
      best = mask;
      best_count = c;
    }
  }
  return best;
}

}  // namespace detail

// Exhaustive maximum Eulerian subgraph for small graphs.
inline OracleResult brute_force_max_euler(const DirectedGraph& g, const OracleOptions& opts = {}) {
  if (g.num_edges() > opts.max_edges || opts.max_edges > 30)
    throw std::invalid_argument("oracle: " + std::to_string(g.num_edges()) +
                                " edges exceeds the cap of " + std::to_string(opts.max_edges));
  OracleResult r;
  r.witness = EdgeSet(g.num_edges());
  std::vector<std::vector<EdgeId>> groups;
  if (opts.prune) {
    SccPartition p = scc_decompose(g);
    for (auto& edges : p.internal_edges)
      if (!edges.empty()) groups.push_back(edges);
  } else {
    std::vector<EdgeId> all(g.num_edges());
    for (EdgeId e = 0; e < g.num_edges(); ++e) all[e] = e;
    groups.push_back(std::move(all));
  }
  for (const auto& edges : groups) {
    std::uint32_t mask = detail::best_balanced_mask(g, edges, r.subsets_examined);
    for (std::size_t i = 0; i < edges.size(); ++i)
      if (mask & (1u << i)) r.witness.insert(edges[i]);
  }
  r.best_size = r.witness.size();
  return r;
}

}  // namespace eulerdag
