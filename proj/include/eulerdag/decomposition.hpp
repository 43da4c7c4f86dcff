#pragma once

#include <cstdint>
#include <vector>

#include "eulerdag/graph.hpp"

namespace eulerdag {

// Partition of a host graph's edges into an Eulerian part and a DAG part.
struct Decomposition {
  EdgeSet euler;
  EdgeSet dag;
};

struct SolverStats {
  std::uint64_t cycles_found = 0;  // negative cycles reversed
  std::uint64_t relaxations = 0;
  std::uint64_t edges_scanned = 0;
  std::int64_t min_dst = 0;
};

struct SolveResult {
  Decomposition decomposition;
  SolverStats stats;
};

inline Decomposition decomposition_from_euler(const DirectedGraph& g, EdgeSet euler) {
  Decomposition d{std::move(euler), EdgeSet(g.num_edges())};
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (!d.euler.contains(e)) d.dag.insert(e);
  return d;
}

inline std::size_t euler_vertex_count(const DirectedGraph& g, const EdgeSet& euler) {
  std::vector<std::uint8_t> touched(g.num_vertices(), 0);
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (euler.contains(e)) touched[g.edge(e).source] = touched[g.edge(e).target] = 1;
  std::size_t count = 0;
  for (auto t : touched) count += t;
  return count;
}

inline std::vector<Edge> edges_of(const DirectedGraph& g, const EdgeSet& s) {
  std::vector<Edge> out;
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (s.contains(e)) out.push_back(g.edge(e));
  return out;
}

// Throws InvariantError unless d is a partition with Eulerian euler and
// acyclic dag.
inline void validate_decomposition(const DirectedGraph& g, const Decomposition& d) {
  if (d.euler.capacity() != g.num_edges() || d.dag.capacity() != g.num_edges())
    throw InvariantError("decomposition: edge sets sized for another graph");
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (d.euler.contains(e) == d.dag.contains(e))
      throw InvariantError("decomposition: euler and dag do not partition the edges");
  if (!is_eulerian(g, d.euler))
    throw InvariantError("decomposition: euler part is not Eulerian", edges_of(g, d.euler));
  if (auto c = find_any_cycle(g, d.dag)) {
    std::vector<Edge> cyc;
    for (EdgeId e : *c) cyc.push_back(g.edge(e));
    throw InvariantError("decomposition: dag part has a cycle", cyc);
  }
}

}  // namespace eulerdag
