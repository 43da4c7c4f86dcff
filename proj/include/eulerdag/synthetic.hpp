#pragma once

#include <cstdint>
#include <random>
#include <unordered_set>
#include <utility>
#include <vector>

#include "eulerdag/graph.hpp"

namespace eulerdag::synthetic {

using Rng = std::mt19937_64;

// Modulo draw: slightly biased, but identical on every standard library.
inline std::uint64_t below(Rng& rng, std::uint64_t bound) { return rng() % bound; }

inline double unit(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Each ordered pair (u, v), u != v, is an edge with probability p. Edges are
// emitted in a shuffled order so adjacency order is not sorted.
inline DirectedGraph random_digraph(std::size_t n, double p, Rng& rng) {
  std::vector<Edge> edges;
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = 0; v < n; ++v)
      if (u != v && unit(rng) < p) edges.push_back({u, v});
  for (std::size_t i = edges.size(); i > 1; --i) std::swap(edges[i - 1], edges[below(rng, i)]);
  return DirectedGraph(n, std::move(edges));
}

// Up to m distinct random edges.
inline DirectedGraph random_digraph_m(std::size_t n, std::size_t m, Rng& rng) {
  std::vector<Edge> edges;
  if (n < 2) return DirectedGraph(n, {});
  std::unordered_set<std::uint64_t> seen;
  const std::size_t limit = n * (n - 1);
  for (std::size_t tries = 0; edges.size() < m && edges.size() < limit && tries < 64 * (m + 1); ++tries) {
    auto u = static_cast<VertexId>(below(rng, n));
    auto v = static_cast<VertexId>(below(rng, n));
    if (u == v || !seen.insert(detail::pair_key(u, v)).second) continue;
    edges.push_back({u, v});
  }
  return DirectedGraph(n, std::move(edges));
}

struct PlantedHierarchy {
  DirectedGraph graph;
  std::vector<std::uint32_t> level;  // hidden level per vertex
  std::vector<std::uint8_t> noisy;   // per edge: points downward
};

struct PlantedOptions {
  std::size_t n = 1000;
  std::uint32_t levels = 8;
  std::size_t out_degree = 5;
  double noise = 0.10;
};

inline std::vector<std::uint32_t> planted_levels(std::size_t n, std::uint32_t levels, Rng& rng) {
  // Geometric-ish pyramid: lower levels are more populated.
  std::vector<std::uint32_t> lv(n);
  for (auto& x : lv) {
    std::uint32_t l = 0;
    while (l + 1 < levels && unit(rng) < 0.55) ++l;
    x = l;
  }
  return lv;
}

// Edges point from a lower hidden level to a higher one; a `noise` fraction
// is flipped to point downward.
inline PlantedHierarchy planted_with_levels(std::vector<std::uint32_t> level,
                                            const PlantedOptions& o, Rng& rng) {
  const std::size_t n = level.size();
  PlantedHierarchy ph;
  std::vector<Edge> edges;
  std::unordered_set<std::uint64_t> seen;
  for (VertexId u = 0; u < n; ++u) {
    for (std::size_t k = 0, tries = 0; k < o.out_degree && tries < 20 * o.out_degree; ++tries) {
      auto v = static_cast<VertexId>(below(rng, n));
      if (v == u || level[u] == level[v]) continue;
      VertexId lo = level[u] < level[v] ? u : v, hi = lo == u ? v : u;
      bool flip = unit(rng) < o.noise;
      Edge e = flip ? Edge{hi, lo} : Edge{lo, hi};
      if (seen.count(detail::pair_key(e.source, e.target)) ||
          seen.count(detail::pair_key(e.target, e.source)))
        continue;
      seen.insert(detail::pair_key(e.source, e.target));
      edges.push_back(e);
      ph.noisy.push_back(flip ? 1 : 0);
      ++k;
    }
  }
  ph.graph = DirectedGraph(n, std::move(edges));
  ph.level = std::move(level);
  return ph;
}

inline PlantedHierarchy planted_hierarchy(const PlantedOptions& o, Rng& rng) {
  return planted_with_levels(planted_levels(o.n, o.levels, rng), o, rng);
}

// Two snapshots over one vertex set: the second resamples the hidden level
// of a `drift` fraction of vertices and regenerates all edges.
inline std::pair<PlantedHierarchy, PlantedHierarchy> drift_pair(const PlantedOptions& o,
                                                                double drift, Rng& rng) {
  auto first = planted_hierarchy(o, rng);
  auto level = first.level;
  auto fresh = planted_levels(o.n, o.levels, rng);
  for (std::size_t v = 0; v < level.size(); ++v)
    if (unit(rng) < drift) level[v] = fresh[v];
  auto second = planted_with_levels(std::move(level), o, rng);
  return {std::move(first), std::move(second)};
}

}  // namespace eulerdag::synthetic
