#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <string>
#include <thread>
#include <vector>

#include "eulerdag/decomposition.hpp"
#include "eulerdag/graph.hpp"
#include "eulerdag/greedy.hpp"
#include "eulerdag/refine.hpp"

namespace eulerdag {

struct ComponentRecord {
  std::uint32_t component_id = 0;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t greedy_size = 0;       // greedy output alone
  std::size_t approx_size = 0;       // after moving residual cycles
  std::size_t euler_size = 0;
  std::uint64_t refine_iterations = 0;
  std::uint32_t l_max = 0;
};

struct PipelineResult {
  SolveResult solved;                       // stats.cycles_found = refine iterations
  EdgeSet greedy_euler;                     // union of greedy outputs
  EdgeSet approx;                           // greedy plus moved cycles, refine's input
  std::vector<ComponentRecord> components;  // nontrivial components, by id
  std::vector<Path> greedy_paths;           // host edge ids, per component in order
  std::vector<std::uint64_t> paths_per_l;
  std::uint32_t l_max = 0;
};

// Induced subgraph of one component with edges kept in host order.
struct ComponentGraph {
  DirectedGraph graph;
  std::vector<VertexId> vertices;  // local -> host
  std::vector<EdgeId> edges;       // local -> host
};

inline ComponentGraph component_graph(const DirectedGraph& g, const SccPartition& p,
                                      std::size_t c) {
  ComponentGraph cg;
  cg.vertices = p.components[c];
  cg.edges = p.internal_edges[c];
  std::vector<Edge> local;
  local.reserve(cg.edges.size());
  auto local_id = [&](VertexId v) {
    return static_cast<VertexId>(
        std::lower_bound(cg.vertices.begin(), cg.vertices.end(), v) - cg.vertices.begin());
  };
  for (EdgeId e : cg.edges) local.push_back({local_id(g.edge(e).source), local_id(g.edge(e).target)});
  cg.graph = DirectedGraph(cg.vertices.size(), std::move(local));
  return cg;
}

namespace detail {

struct ComponentOutcome {
  ComponentRecord record;
  std::vector<EdgeId> greedy, approx, euler;  // host ids
  std::vector<Path> paths;
  std::vector<std::uint64_t> paths_per_l;
  SolverStats stats;
};

inline ComponentOutcome solve_component(const DirectedGraph& g, const SccPartition& p,
                                        std::size_t c, GreedyVariant variant) {
  ComponentGraph cg = component_graph(g, p, c);
  const DirectedGraph& lg = cg.graph;
  ComponentOutcome out;
  out.record.component_id = static_cast<std::uint32_t>(c);
  out.record.n = lg.num_vertices();
  out.record.m = lg.num_edges();

  GreedyResult gr = greedy(lg, variant);
  MovedCycles mc = move_cycles(lg, gr.approx.complement(), gr.approx);
  RefineResult rr = refine(lg, mc.euler);

  auto host = [&](const EdgeSet& s) {
    std::vector<EdgeId> ids;
    for (EdgeId e : s.members()) ids.push_back(cg.edges[e]);
    return ids;
  };
  out.greedy = host(gr.approx);
  out.approx = host(mc.euler);
  out.euler = host(rr.solved.decomposition.euler);
  for (const Path& path : gr.paths) {
    Path hp;
    for (EdgeId e : path) hp.push_back(cg.edges[e]);
    out.paths.push_back(std::move(hp));
  }
  out.paths_per_l = gr.paths_per_l;
  out.stats = rr.solved.stats;
  out.record.greedy_size = out.greedy.size();
  out.record.approx_size = out.approx.size();
  out.record.euler_size = out.euler.size();
  out.record.refine_iterations = rr.solved.stats.cycles_found;
  out.record.l_max = gr.l_max;
  return out;
}

}  // namespace detail

inline unsigned default_threads() {
  unsigned t = std::thread::hardware_concurrency();
  return t == 0 ? 1 : t;
}

// SCC split, then greedy -> move_cycles -> refine per component. Components
// may be solved on several threads; results are assembled by component id so
// output does not depend on the thread count.
inline PipelineResult greedy_and_refine(const DirectedGraph& g, GreedyVariant variant,
                                        unsigned threads = 1) {
  SccPartition p = scc_decompose(g);
  std::vector<std::size_t> work;
  for (std::size_t c = 0; c < p.size(); ++c)
    if (!p.internal_edges[c].empty()) work.push_back(c);

  std::vector<detail::ComponentOutcome> outcomes(work.size());
  std::vector<std::exception_ptr> errors(work.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < work.size(); i = next++) {
      try {
        outcomes[i] = detail::solve_component(g, p, work[i], variant);
      } catch (const InvariantError& e) {
        std::vector<Edge> sub;
        for (EdgeId x : p.internal_edges[work[i]]) sub.push_back(g.edge(x));
        errors[i] = std::make_exception_ptr(InvariantError(
            std::string(e.what()) + " (component " + std::to_string(work[i]) + ")", sub));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(work.size())));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  PipelineResult r;
  const std::size_t m = g.num_edges();
  EdgeSet euler(m);
  r.greedy_euler = EdgeSet(m);
  r.approx = EdgeSet(m);
  r.paths_per_l.assign(1, 0);
  for (auto& o : outcomes) {
    for (EdgeId e : o.greedy) r.greedy_euler.insert(e);
    for (EdgeId e : o.approx) r.approx.insert(e);
    for (EdgeId e : o.euler) euler.insert(e);
    for (auto& path : o.paths) r.greedy_paths.push_back(std::move(path));
    if (o.paths_per_l.size() > r.paths_per_l.size()) r.paths_per_l.resize(o.paths_per_l.size(), 0);
    for (std::size_t l = 0; l < o.paths_per_l.size(); ++l) r.paths_per_l[l] += o.paths_per_l[l];
    r.l_max = std::max(r.l_max, o.record.l_max);
    r.solved.stats.cycles_found += o.stats.cycles_found;
    r.solved.stats.relaxations += o.stats.relaxations;
    r.solved.stats.edges_scanned += o.stats.edges_scanned;
    r.solved.stats.min_dst = std::min(r.solved.stats.min_dst, o.stats.min_dst);
    r.components.push_back(o.record);
  }
  r.solved.decomposition = decomposition_from_euler(g, std::move(euler));
  validate_decomposition(g, r.solved.decomposition);
  return r;
}

}  // namespace eulerdag
