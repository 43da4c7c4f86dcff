#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace eulerdag {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

struct Edge {
  VertexId source;
  VertexId target;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Thrown when an algorithmic invariant fails. The optional edge list names the
// offending subgraph so callers can dump it.
class InvariantError : public std::logic_error {
 public:
  explicit InvariantError(const std::string& what, std::vector<Edge> subgraph = {})
      : std::logic_error(what), subgraph_(std::move(subgraph)) {}

  const std::vector<Edge>& subgraph() const noexcept { return subgraph_; }

 private:
  std::vector<Edge> subgraph_;
};

namespace detail {

inline void require(bool ok, const char* what) {
  if (!ok) throw InvariantError(what);
}

inline std::uint64_t pair_key(VertexId u, VertexId v) {
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

}  // namespace detail

// ----------------------------------------------------------------------------
// DirectedGraph: immutable simple digraph. Adjacency lists are stored in CSR
// form and keep the edge-list order, so edge ids double as tie-breakers.
// ----------------------------------------------------------------------------
class DirectedGraph {
 public:
  DirectedGraph() = default;

  DirectedGraph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(edges_.size() * 2);
    for (const Edge& e : edges_) {
      if (e.source >= n_ || e.target >= n_)
        throw std::invalid_argument("edge endpoint out of range");
      if (e.source == e.target) throw std::invalid_argument("self-loop in DirectedGraph");
      if (!seen.insert(detail::pair_key(e.source, e.target)).second)
        throw std::invalid_argument("duplicate edge in DirectedGraph");
    }
    build_index();
  }

  std::size_t num_vertices() const noexcept { return n_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }

  const Edge& edge(EdgeId e) const { return edges_[e]; }
  std::span<const Edge> edges() const noexcept { return edges_; }

  std::span<const EdgeId> out_edges(VertexId u) const {
    return {out_list_.data() + out_off_[u], out_off_[u + 1] - out_off_[u]};
  }
  std::span<const EdgeId> in_edges(VertexId u) const {
    return {in_list_.data() + in_off_[u], in_off_[u + 1] - in_off_[u]};
  }
  std::size_t out_degree(VertexId u) const { return out_off_[u + 1] - out_off_[u]; }
  std::size_t in_degree(VertexId u) const { return in_off_[u + 1] - in_off_[u]; }

 private:
  void build_index() {
    out_off_.assign(n_ + 1, 0);
    in_off_.assign(n_ + 1, 0);
    for (const Edge& e : edges_) {
      ++out_off_[e.source + 1];
      ++in_off_[e.target + 1];
    }
    for (std::size_t v = 0; v < n_; ++v) {
      out_off_[v + 1] += out_off_[v];
      in_off_[v + 1] += in_off_[v];
    }
    out_list_.resize(edges_.size());
    in_list_.resize(edges_.size());
    std::vector<std::size_t> out_fill(out_off_.begin(), out_off_.end() - 1);
    std::vector<std::size_t> in_fill(in_off_.begin(), in_off_.end() - 1);
    for (EdgeId e = 0; e < edges_.size(); ++e) {
      out_list_[out_fill[edges_[e].source]++] = e;
      in_list_[in_fill[edges_[e].target]++] = e;
    }
  }

  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> out_off_{0};
  std::vector<std::size_t> in_off_{0};
  std::vector<EdgeId> out_list_;
  std::vector<EdgeId> in_list_;
};

// ----------------------------------------------------------------------------
// EdgeSet: membership bitmap over the edge ids of a host graph.
// ----------------------------------------------------------------------------
class EdgeSet {
 public:
  EdgeSet() = default;
  explicit EdgeSet(std::size_t capacity, bool full = false)
      : bits_(capacity, full ? 1 : 0), count_(full ? capacity : 0) {}

  static EdgeSet of(std::size_t capacity, std::span<const EdgeId> members) {
    EdgeSet s(capacity);
    for (EdgeId e : members) s.insert(e);
    return s;
  }

  std::size_t capacity() const noexcept { return bits_.size(); }
  std::size_t size() const noexcept { return count_; }
  bool empty() const noexcept { return count_ == 0; }

  bool contains(EdgeId e) const { return e < bits_.size() && bits_[e] != 0; }

  void insert(EdgeId e) {
    if (e >= bits_.size()) throw std::out_of_range("EdgeSet::insert");
    if (!bits_[e]) {
      bits_[e] = 1;
      ++count_;
    }
  }
  void erase(EdgeId e) {
    if (e < bits_.size() && bits_[e]) {
      bits_[e] = 0;
      --count_;
    }
  }

  std::vector<EdgeId> members() const {
    std::vector<EdgeId> out;
    out.reserve(count_);
    for (EdgeId e = 0; e < bits_.size(); ++e)
      if (bits_[e]) out.push_back(e);
    return out;
  }

  EdgeSet complement() const {
    EdgeSet c(bits_.size());
    for (EdgeId e = 0; e < bits_.size(); ++e)
      if (!bits_[e]) c.insert(e);
    return c;
  }

  friend bool operator==(const EdgeSet& a, const EdgeSet& b) { return a.bits_ == b.bits_; }

 private:
  std::vector<std::uint8_t> bits_;
  std::size_t count_ = 0;
};

inline DirectedGraph transpose(const DirectedGraph& g) {
  std::vector<Edge> rev;
  rev.reserve(g.num_edges());
  for (const Edge& e : g.edges()) rev.push_back({e.target, e.source});
  return DirectedGraph(g.num_vertices(), std::move(rev));
}

// ----------------------------------------------------------------------------
// Strongly connected components.
// ----------------------------------------------------------------------------
struct SccPartition {
  std::vector<std::uint32_t> component_id;          // per vertex
  std::vector<std::vector<VertexId>> components;    // members ascending
  std::vector<std::vector<EdgeId>> internal_edges;  // ascending edge ids

  std::size_t size() const noexcept { return components.size(); }

  EdgeSet internal_edge_set(std::size_t c, std::size_t capacity) const {
    return EdgeSet::of(capacity, internal_edges[c]);
  }
};

// Iterative Tarjan. Components are renumbered by their smallest member.
inline SccPartition scc_decompose(const DirectedGraph& g) {
  const std::size_t n = g.num_vertices();
  constexpr std::uint32_t kUnvisited = UINT32_MAX;
  std::vector<std::uint32_t> index(n, kUnvisited), low(n, 0);
  std::vector<std::uint8_t> on_stack(n, 0);
  std::vector<std::uint32_t> raw_comp(n, kUnvisited);
  std::vector<VertexId> stack;
  std::vector<std::pair<VertexId, std::size_t>> frames;  // vertex, next out-edge slot
  std::uint32_t next_index = 0, next_comp = 0;

  for (VertexId root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    frames.push_back({root, 0});
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!frames.empty()) {
      auto& [v, slot] = frames.back();
      auto outs = g.out_edges(v);
      if (slot < outs.size()) {
        VertexId w = g.edge(outs[slot++]).target;
        if (index[w] == kUnvisited) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      VertexId done = v;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().first] = std::min(low[frames.back().first], low[done]);
      if (low[done] == index[done]) {
        VertexId w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          raw_comp[w] = next_comp;
        } while (w != done);
        ++next_comp;
      }
    }
  }

  // Renumber: scanning vertices ascending meets each component at its minimum.
  std::vector<std::uint32_t> remap(next_comp, kUnvisited);
  SccPartition p;
  p.component_id.assign(n, 0);
  std::uint32_t assigned = 0;
  for (VertexId v = 0; v < n; ++v) {
    std::uint32_t& r = remap[raw_comp[v]];
    if (r == kUnvisited) r = assigned++;
    p.component_id[v] = r;
  }
  p.components.resize(assigned);
  p.internal_edges.resize(assigned);
  for (VertexId v = 0; v < n; ++v) p.components[p.component_id[v]].push_back(v);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = g.edge(e);
    if (p.component_id[ed.source] == p.component_id[ed.target])
      p.internal_edges[p.component_id[ed.source]].push_back(e);
  }
  return p;
}

inline bool is_eulerian(const DirectedGraph& g, const EdgeSet& s) {
  std::vector<std::int64_t> balance(g.num_vertices(), 0);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (!s.contains(e)) continue;
    ++balance[g.edge(e).source];
    --balance[g.edge(e).target];
  }
  return std::all_of(balance.begin(), balance.end(), [](std::int64_t b) { return b == 0; });
}

using Cycle = std::vector<EdgeId>;

namespace detail {

// Splits a balanced edge multiset into edge-disjoint simple cycles by walking
// until a vertex repeats. `out` holds each vertex's usable edges in order;
// head(e) gives the edge's target. Works for multigraphs.
template <class HeadFn>
std::vector<Cycle> peel_balanced(std::size_t n, const std::vector<std::vector<EdgeId>>& out,
                                 HeadFn head) {
  std::vector<std::size_t> cursor(n, 0);
  constexpr std::size_t kOff = SIZE_MAX;
  std::vector<std::size_t> walk_pos(n, kOff);  // position of vertex in current walk
  std::vector<VertexId> walk_v;
  std::vector<EdgeId> walk_e;
  std::vector<Cycle> cycles;
  VertexId scan = 0;

  auto remaining = [&](VertexId v) { return cursor[v] < out[v].size(); };

  while (true) {
    if (walk_v.empty()) {
      while (scan < n && !remaining(scan)) ++scan;
      if (scan == n) break;
      walk_v.push_back(scan);
      walk_pos[scan] = 0;
    }
    VertexId x = walk_v.back();
    if (!remaining(x)) throw InvariantError("peel_cycles: edge set is not balanced");
    EdgeId e = out[x][cursor[x]++];
    VertexId y = head(e);
    walk_e.push_back(e);
    if (walk_pos[y] == kOff) {
      walk_pos[y] = walk_v.size();
      walk_v.push_back(y);
      continue;
    }
    std::size_t p = walk_pos[y];
    Cycle c(walk_e.begin() + static_cast<std::ptrdiff_t>(p), walk_e.end());
    cycles.push_back(std::move(c));
    walk_e.resize(p);
    for (std::size_t i = p + 1; i < walk_v.size(); ++i) walk_pos[walk_v[i]] = kOff;
    walk_v.resize(p + 1);
    if (walk_e.empty() && !remaining(walk_v.back())) {
      walk_pos[walk_v.back()] = kOff;
      walk_v.clear();
    }
  }
  return cycles;
}

inline std::vector<std::vector<EdgeId>> out_lists(const DirectedGraph& g, const EdgeSet& s) {
  std::vector<std::vector<EdgeId>> out(g.num_vertices());
  for (VertexId v = 0; v < g.num_vertices(); ++v)
    for (EdgeId e : g.out_edges(v))
      if (s.contains(e)) out[v].push_back(e);
  return out;
}

inline void check_cycle_cover(const DirectedGraph& g, const EdgeSet& s,
                              const std::vector<Cycle>& cycles) {
  EdgeSet seen(g.num_edges());
  for (const Cycle& c : cycles) {
    require(!c.empty(), "peel_cycles: empty cycle");
    std::vector<VertexId> verts;
    for (std::size_t i = 0; i < c.size(); ++i) {
      const Edge& a = g.edge(c[i]);
      const Edge& b = g.edge(c[(i + 1) % c.size()]);
      require(a.target == b.source, "peel_cycles: broken cycle");
      require(s.contains(c[i]) && !seen.contains(c[i]), "peel_cycles: edge reused or foreign");
      seen.insert(c[i]);
      verts.push_back(a.source);
    }
    std::sort(verts.begin(), verts.end());
    require(std::adjacent_find(verts.begin(), verts.end()) == verts.end(),
            "peel_cycles: cycle is not simple");
  }
  require(seen.size() == s.size(), "peel_cycles: cycles do not cover the edge set");
}

}  // namespace detail

// Decomposes an Eulerian edge set into edge-disjoint simple cycles.
inline std::vector<Cycle> peel_cycles(const DirectedGraph& g, const EdgeSet& s) {
  if (!is_eulerian(g, s)) throw std::invalid_argument("peel_cycles: edge set is not Eulerian");
  auto cycles = detail::peel_balanced(g.num_vertices(), detail::out_lists(g, s),
                                      [&](EdgeId e) { return g.edge(e).target; });
  detail::check_cycle_cover(g, s, cycles);
  return cycles;
}

// Iterative DFS; returns the first cycle closed by a back edge.
inline std::optional<Cycle> find_any_cycle(const DirectedGraph& g, const EdgeSet& s) {
  const std::size_t n = g.num_vertices();
  enum : std::uint8_t { kWhite, kGray, kBlack };
  std::vector<std::uint8_t> color(n, kWhite);
  std::vector<std::size_t> cursor(n, 0), depth(n, 0);
  std::vector<VertexId> stack;
  std::vector<EdgeId> path;  // path[i] enters stack[i + 1]
  for (VertexId root = 0; root < n; ++root) {
    if (color[root] != kWhite) continue;
    stack.push_back(root);
    color[root] = kGray;
    while (!stack.empty()) {
      VertexId v = stack.back();
      auto outs = g.out_edges(v);
      std::size_t& slot = cursor[v];
      while (slot < outs.size() && !s.contains(outs[slot])) ++slot;
      if (slot == outs.size()) {
        color[v] = kBlack;
        stack.pop_back();
        if (!path.empty()) path.pop_back();
        continue;
      }
      EdgeId e = outs[slot++];
      VertexId w = g.edge(e).target;
      if (color[w] == kWhite) {
        color[w] = kGray;
        depth[w] = stack.size();
        stack.push_back(w);
        path.push_back(e);
      } else if (color[w] == kGray) {
        Cycle c(path.begin() + static_cast<std::ptrdiff_t>(depth[w]), path.end());
        c.push_back(e);
        return c;
      }
    }
  }
  return std::nullopt;
}

// Removes cycles from `residual` until it is acyclic; returns them in the
// order found. One DFS pass: after a cycle is cut out, the search resumes at
// the vertex that closed it.
inline std::vector<Cycle> extract_cycles(const DirectedGraph& g, EdgeSet& residual) {
  const std::size_t n = g.num_vertices();
  enum : std::uint8_t { kWhite, kGray, kBlack };
  std::vector<std::uint8_t> color(n, kWhite);
  std::vector<std::size_t> cursor(n, 0);
  std::vector<VertexId> stack;
  std::vector<EdgeId> path;
  std::vector<std::size_t> depth(n, 0);
  std::vector<Cycle> found;
  // Vertices cut off the stack go back to white and may need a later root.
  bool rescan = true;
  while (rescan) {
  rescan = false;
  for (VertexId root = 0; root < n; ++root) {
    if (color[root] != kWhite) continue;
    stack.push_back(root);
    color[root] = kGray;
    depth[root] = 0;
    while (!stack.empty()) {
      VertexId v = stack.back();
      auto outs = g.out_edges(v);
      std::size_t& slot = cursor[v];
      while (slot < outs.size() && !residual.contains(outs[slot])) ++slot;
      if (slot == outs.size()) {
        color[v] = kBlack;
        stack.pop_back();
        if (!path.empty()) path.pop_back();
        continue;
      }
      EdgeId e = outs[slot];
      VertexId w = g.edge(e).target;
      if (color[w] == kWhite) {
        ++slot;
        color[w] = kGray;
        depth[w] = stack.size();
        stack.push_back(w);
        path.push_back(e);
      } else if (color[w] == kGray) {
        ++slot;
        std::size_t d = depth[w];
        Cycle c(path.begin() + static_cast<std::ptrdiff_t>(d), path.end());
        c.push_back(e);
        for (EdgeId x : c) residual.erase(x);
        for (std::size_t i = d + 1; i < stack.size(); ++i) color[stack[i]] = kWhite;
        if (stack.size() > d + 1) rescan = true;
        stack.resize(d + 1);
        path.resize(d);
        found.push_back(std::move(c));
      } else {
        ++slot;
      }
    }
  }
  }
  return found;
}

inline bool is_acyclic(const DirectedGraph& g, const EdgeSet& s) {
  return !find_any_cycle(g, s).has_value();
}

}  // namespace eulerdag
