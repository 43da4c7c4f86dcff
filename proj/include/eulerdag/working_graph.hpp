#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "eulerdag/graph.hpp"

namespace eulerdag {

// Mutable view of a host graph in which edges can be reversed or removed.
// A reversed edge carries weight +1, an original one -1. Each vertex keeps an
// ordered out-list and in-list for its current orientation: a flipped edge
// leaves its old lists and is appended to the new ones.
class WorkingGraph {
 public:
  explicit WorkingGraph(const DirectedGraph& g) : WorkingGraph(g, EdgeSet(g.num_edges())) {}

  WorkingGraph(const DirectedGraph& g, const EdgeSet& reversed)
      : g_(&g),
        reversed_(g.num_edges(), 0),
        alive_(g.num_edges(), 1),
        out_(g.num_vertices()),
        in_(g.num_vertices()) {
    for (EdgeId e = 0; e < g.num_edges(); ++e) reversed_[e] = reversed.contains(e) ? 1 : 0;
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      out_[tail(e)].push_back(e);
      in_[head(e)].push_back(e);
    }
  }

  const DirectedGraph& host() const noexcept { return *g_; }
  std::size_t num_vertices() const noexcept { return out_.size(); }
  std::size_t num_edges() const noexcept { return reversed_.size(); }

  VertexId tail(EdgeId e) const { return reversed_[e] ? g_->edge(e).target : g_->edge(e).source; }
  VertexId head(EdgeId e) const { return reversed_[e] ? g_->edge(e).source : g_->edge(e).target; }
  int weight(EdgeId e) const { return reversed_[e] ? +1 : -1; }
  bool reversed(EdgeId e) const { return reversed_[e] != 0; }
  bool alive(EdgeId e) const { return alive_[e] != 0; }

  const std::vector<EdgeId>& out(VertexId v) const { return out_[v]; }
  const std::vector<EdgeId>& in(VertexId v) const { return in_[v]; }

  void flip(EdgeId e) {
    detail::require(alive(e), "flip of a removed edge");
    VertexId t = tail(e), h = head(e);
    erase_from(out_[t], e);
    erase_from(in_[h], e);
    reversed_[e] ^= 1;
    out_[h].push_back(e);
    in_[t].push_back(e);
  }

  void remove(EdgeId e) {
    if (!alive(e)) return;
    erase_from(out_[tail(e)], e);
    erase_from(in_[head(e)], e);
    alive_[e] = 0;
  }

  // Alive edges currently in original orientation (weight -1).
  EdgeSet forward_edges() const {
    EdgeSet s(num_edges());
    for (EdgeId e = 0; e < num_edges(); ++e)
      if (alive_[e] && !reversed_[e]) s.insert(e);
    return s;
  }

  EdgeSet reversed_edges() const {
    EdgeSet s(num_edges());
    for (EdgeId e = 0; e < num_edges(); ++e)
      if (alive_[e] && reversed_[e]) s.insert(e);
    return s;
  }

 private:
  static void erase_from(std::vector<EdgeId>& list, EdgeId e) {
    auto it = std::find(list.begin(), list.end(), e);
    detail::require(it != list.end(), "adjacency list out of sync");
    list.erase(it);
  }

  const DirectedGraph* g_;
  std::vector<std::uint8_t> reversed_;
  std::vector<std::uint8_t> alive_;
  std::vector<std::vector<EdgeId>> out_;
  std::vector<std::vector<EdgeId>> in_;
};

// Per-vertex state of the depth-first relaxation search plus its recovery
// stacks. Edge weights and orientation live in the WorkingGraph.
struct RelaxState {
  std::vector<std::int64_t> dst;
  std::vector<std::uint8_t> relax;
  std::vector<std::size_t> pos;
  std::vector<std::uint8_t> on_path;
  std::vector<VertexId> sv;
  std::vector<EdgeId> se;
  std::optional<VertexId> nv;

  std::uint64_t relaxations = 0;
  std::uint64_t edges_scanned = 0;
  VertexId lowest_relaxed = std::numeric_limits<VertexId>::max();

  explicit RelaxState(std::size_t n) : dst(n, 0), relax(n, 1), pos(n, 0), on_path(n, 0) {}
};

// Depth-first Bellman-Ford relaxation from u. Returns true when the search
// path closes on itself through a relaxed edge; sv/se then hold the path and
// nv the vertex where it re-entered. On false, relax[u] is cleared and the
// stacks are empty again.
inline bool dfs_spfa(const WorkingGraph& g, RelaxState& st, VertexId u) {
  detail::require(st.sv.empty() && st.se.empty(), "dfs_spfa: stacks not empty on entry");
  st.nv.reset();
  st.sv.push_back(u);
  st.on_path[u] = 1;
  while (!st.sv.empty()) {
    VertexId x = st.sv.back();
    const auto& outs = g.out(x);
    if (st.pos[x] < outs.size()) {
      EdgeId e = outs[st.pos[x]++];
      ++st.edges_scanned;
      VertexId y = g.head(e);
      std::int64_t cand = st.dst[x] + g.weight(e);
      if (cand < st.dst[y]) {
        st.dst[y] = cand;
        st.relax[y] = 1;
        st.pos[y] = 0;
        ++st.relaxations;
        st.lowest_relaxed = std::min(st.lowest_relaxed, y);
        st.se.push_back(e);
        if (st.on_path[y]) {
          st.nv = y;
          return true;
        }
        st.sv.push_back(y);
        st.on_path[y] = 1;
      }
      continue;
    }
    st.relax[x] = 0;
    st.on_path[x] = 0;
    st.sv.pop_back();
    if (!st.se.empty()) st.se.pop_back();
    detail::require(st.se.size() + 1 == st.sv.size() || (st.sv.empty() && st.se.empty()),
                    "dfs_spfa: stack depths diverged");
  }
  return false;
}

struct FoundCycle {
  std::vector<VertexId> path_snapshot;  // sv at detection time
  Cycle edges;                          // in path order, flipped
};

// Pops the cycle off the stacks, flips its edges, and clears the search path.
// Cursors of the cycle vertices restart at 0 because their out-lists changed.
inline FoundCycle reverse_found_cycle(WorkingGraph& g, RelaxState& st) {
  detail::require(st.nv.has_value(), "reverse_found_cycle without a detected cycle");
  FoundCycle fc;
  fc.path_snapshot = st.sv;
  const VertexId nv = *st.nv;
  std::vector<VertexId> members;
  while (st.sv.back() != nv) {
    members.push_back(st.sv.back());
    st.on_path[st.sv.back()] = 0;
    st.sv.pop_back();
    fc.edges.push_back(st.se.back());
    st.se.pop_back();
  }
  members.push_back(nv);
  st.on_path[nv] = 0;
  st.sv.pop_back();
  fc.edges.push_back(st.se.back());
  st.se.pop_back();
  std::reverse(fc.edges.begin(), fc.edges.end());
  for (EdgeId e : fc.edges) g.flip(e);
  for (VertexId v : members) st.pos[v] = 0;
  for (VertexId v : st.sv) st.on_path[v] = 0;
  st.sv.clear();
  st.se.clear();
  st.nv.reset();
  return fc;
}

}  // namespace eulerdag
