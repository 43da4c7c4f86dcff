#pragma once

#include <cstdint>
#include <deque>
#include <limits>
#include <string>
#include <vector>

#include "eulerdag/graph.hpp"
#include "eulerdag/working_graph.hpp"

namespace eulerdag {

enum class GreedyVariant { kDelete, kReverse };

inline constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();

struct LabelState {
  std::vector<std::int64_t> label;
  std::vector<std::uint32_t> level;   // BFS distance from the positive vertices
  std::vector<std::uint32_t> rlevel;  // BFS distance to the negative vertices
  std::int64_t demand = 0;            // sum of positive labels

  void recompute_demand() {
    demand = 0;
    for (auto x : label)
      if (x > 0) demand += x;
  }
};

// label(u) = out-degree minus in-degree over the alive edges that still carry
// weight -1, counted in their original orientation. Without reversals this is
// the plain degree difference of the current graph.
inline LabelState compute_labels(const WorkingGraph& g) {
  LabelState ls;
  ls.label.assign(g.num_vertices(), 0);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (!g.alive(e) || g.reversed(e)) continue;
    ++ls.label[g.host().edge(e).source];
    --ls.label[g.host().edge(e).target];
  }
  ls.recompute_demand();
  return ls;
}

// Layered subgraph holding every shortest pn-path of length l.
struct LSubgraph {
  std::uint32_t l = 0;
  std::vector<std::uint32_t> level;
  std::vector<std::uint32_t> rlevel;
  std::vector<std::uint8_t> member;          // vertex kept
  std::vector<std::vector<EdgeId>> out;      // kept edges, current out-list order
  std::size_t num_edges = 0;

  std::vector<EdgeId> edge_list() const {
    std::vector<EdgeId> all;
    for (const auto& o : out) all.insert(all.end(), o.begin(), o.end());
    return all;
  }
};

namespace detail {

template <class Next>
std::vector<std::uint32_t> multi_source_bfs(const WorkingGraph& g,
                                            const std::vector<VertexId>& sources, Next next) {
  std::vector<std::uint32_t> dist(g.num_vertices(), kUnreached);
  std::deque<VertexId> q;
  for (VertexId s : sources) {
    dist[s] = 0;
    q.push_back(s);
  }
  while (!q.empty()) {
    VertexId x = q.front();
    q.pop_front();
    for (EdgeId e : next.edges(x)) {
      VertexId y = next.other(e);
      if (dist[y] == kUnreached) {
        dist[y] = dist[x] + 1;
        q.push_back(y);
      }
    }
  }
  return dist;
}

}  // namespace detail

inline LSubgraph l_subgraph(const WorkingGraph& g, LabelState& ls, std::uint32_t l) {
  const std::size_t n = g.num_vertices();
  std::vector<VertexId> pos, neg;
  for (VertexId v = 0; v < n; ++v) {
    if (ls.label[v] > 0) pos.push_back(v);
    if (ls.label[v] < 0) neg.push_back(v);
  }
  struct Forward {
    const WorkingGraph& g;
    const std::vector<EdgeId>& edges(VertexId v) const { return g.out(v); }
    VertexId other(EdgeId e) const { return g.head(e); }
  };
  struct Backward {
    const WorkingGraph& g;
    const std::vector<EdgeId>& edges(VertexId v) const { return g.in(v); }
    VertexId other(EdgeId e) const { return g.tail(e); }
  };
  LSubgraph gl;
  gl.l = l;
  gl.level = detail::multi_source_bfs(g, pos, Forward{g});
  gl.rlevel = detail::multi_source_bfs(g, neg, Backward{g});
  ls.level = gl.level;
  ls.rlevel = gl.rlevel;
  gl.member.assign(n, 0);
  gl.out.assign(n, {});
  for (VertexId v = 0; v < n; ++v)
    if (gl.level[v] != kUnreached && gl.rlevel[v] != kUnreached &&
        gl.level[v] + gl.rlevel[v] == l)
      gl.member[v] = 1;
  for (VertexId v = 0; v < n; ++v) {
    if (!gl.member[v]) continue;
    for (EdgeId e : g.out(v)) {
      VertexId w = g.head(e);
      if (gl.member[w] && gl.level[v] + 1 == gl.level[w]) {
        gl.out[v].push_back(e);
        ++gl.num_edges;
      }
    }
  }
  return gl;
}

using Path = std::vector<EdgeId>;

struct LengthLResult {
  std::vector<Path> paths;
  std::size_t edges_visited = 0;
};

// Consumes length-l pn-paths found by DFS over G_l. Positive vertices are
// served in ascending id; each stays until its label is 0 or it has no path
// left. Every G_l edge is stepped over at most once per call.
inline LengthLResult length_l(WorkingGraph& g, LabelState& ls, std::uint32_t l,
                              GreedyVariant variant) {
  LSubgraph gl = l_subgraph(g, ls, l);
  LengthLResult res;
  if (gl.num_edges == 0) return res;
  const std::size_t n = g.num_vertices();
  std::vector<std::size_t> cursor(n, 0);
  std::vector<VertexId> stack;
  Path path;

  auto search = [&](VertexId u) -> bool {
    stack.assign(1, u);
    path.clear();
    while (!stack.empty()) {
      VertexId x = stack.back();
      if (gl.level[x] == l) {
        if (ls.label[x] < 0) return true;
        stack.pop_back();
        path.pop_back();
        continue;
      }
      if (cursor[x] < gl.out[x].size()) {
        EdgeId e = gl.out[x][cursor[x]++];
        ++res.edges_visited;
        stack.push_back(g.head(e));
        path.push_back(e);
        continue;
      }
      stack.pop_back();
      if (!path.empty()) path.pop_back();
    }
    return false;
  };

  for (VertexId u = 0; u < n; ++u) {
    if (!gl.member[u] || gl.level[u] != 0) continue;
    while (ls.label[u] > 0 && search(u)) {
      VertexId v = stack.back();
      for (EdgeId e : path) {
        if (variant == GreedyVariant::kDelete) g.remove(e);
        else g.flip(e);
      }
      --ls.label[u];
      ++ls.label[v];
      --ls.demand;
      res.paths.push_back(path);
    }
  }
  detail::require(res.edges_visited <= gl.num_edges, "length_l: a G_l edge was visited twice");
  return res;
}

inline LengthLResult length_l_delete(WorkingGraph& g, LabelState& ls, std::uint32_t l) {
  return length_l(g, ls, l, GreedyVariant::kDelete);
}

inline LengthLResult length_l_reverse(WorkingGraph& g, LabelState& ls, std::uint32_t l) {
  return length_l(g, ls, l, GreedyVariant::kReverse);
}

struct GreedyResult {
  EdgeSet approx;
  std::uint32_t l_max = 0;
  std::vector<std::uint64_t> paths_per_l;  // index l
  std::vector<Path> paths;                 // in the order consumed
};

// Phase one on a single strongly connected graph: consume pn-paths by
// ascending length until every label is 0.
inline GreedyResult greedy(const DirectedGraph& g, GreedyVariant variant) {
  WorkingGraph wg(g);
  LabelState ls = compute_labels(wg);
  GreedyResult r;
  r.paths_per_l.push_back(0);
  for (std::uint32_t l = 1; ls.demand > 0; ++l) {
    if (l > g.num_vertices())
      throw InvariantError("greedy: path length exceeded n (input not strongly connected?)",
                           std::vector<Edge>(g.edges().begin(), g.edges().end()));
    LengthLResult step = length_l(wg, ls, l, variant);
    r.paths_per_l.push_back(step.paths.size());
    if (!step.paths.empty()) r.l_max = l;
    for (auto& p : step.paths) r.paths.push_back(std::move(p));
  }
  r.approx = wg.forward_edges();
  if (!is_eulerian(g, r.approx))
    throw InvariantError("greedy: result is not Eulerian",
                         std::vector<Edge>(g.edges().begin(), g.edges().end()));
  return r;
}

inline GreedyResult greedy_d(const DirectedGraph& g) { return greedy(g, GreedyVariant::kDelete); }
inline GreedyResult greedy_r(const DirectedGraph& g) { return greedy(g, GreedyVariant::kReverse); }

struct MovedCycles {
  EdgeSet residual;
  EdgeSet euler;
  std::vector<Cycle> moved;
};

// Moves cycles of the residual into euler until the residual is acyclic.
inline MovedCycles move_cycles(const DirectedGraph& g, EdgeSet residual, EdgeSet euler) {
  MovedCycles mc{std::move(residual), std::move(euler), {}};
  mc.moved = extract_cycles(g, mc.residual);
  for (const Cycle& c : mc.moved)
    for (EdgeId e : c) mc.euler.insert(e);
  return mc;
}

}  // namespace eulerdag
