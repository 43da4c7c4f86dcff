#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "eulerdag/decomposition.hpp"
#include "eulerdag/graph.hpp"
#include "eulerdag/greedy.hpp"
#include "eulerdag/hierarchy.hpp"
#include "eulerdag/pipeline.hpp"

namespace eulerdag {

// ----------------------------------------------------------------------------
// Audit multigraph: host edges missing from the approximate solution enter
// reversed with weight +1, edges missing from the exact solution enter as is
// with weight -1. Parallel edges are allowed.
// ----------------------------------------------------------------------------
struct SignedEdge {
  VertexId source;
  VertexId target;
  int weight;
  EdgeId origin;  // host edge
};

struct SignedMultigraph {
  std::size_t n = 0;
  std::vector<SignedEdge> edges;

  bool balanced() const {
    std::vector<std::int64_t> b(n, 0);
    for (const SignedEdge& e : edges) {
      ++b[e.source];
      --b[e.target];
    }
    return std::all_of(b.begin(), b.end(), [](std::int64_t x) { return x == 0; });
  }
  std::size_t positive_edges() const {
    return static_cast<std::size_t>(
        std::count_if(edges.begin(), edges.end(), [](const SignedEdge& e) { return e.weight > 0; }));
  }
};

inline SignedMultigraph build_gcal(const DirectedGraph& g, const EdgeSet& approx,
                                   const EdgeSet& exact) {
  if (!is_eulerian(g, approx) || !is_eulerian(g, exact))
    throw std::invalid_argument("build_gcal: inputs must be Eulerian edge sets");
  SignedMultigraph m;
  m.n = g.num_vertices();
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (!approx.contains(e)) m.edges.push_back({g.edge(e).target, g.edge(e).source, +1, e});
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (!exact.contains(e)) m.edges.push_back({g.edge(e).source, g.edge(e).target, -1, e});
  if (!m.balanced()) throw InvariantError("build_gcal: audit multigraph is not balanced");
  return m;
}

struct KCycle {
  std::uint32_t k = 0;
  std::uint64_t delta = 0;        // negative edges
  std::uint64_t delta_prime = 0;  // positive edges
  std::int64_t weight() const { return static_cast<std::int64_t>(delta_prime) - static_cast<std::int64_t>(delta); }
};

struct KBucket {
  std::uint64_t cycles = 0;
  double ratio_sum = 0.0;
  double ratio_max = 0.0;
};

struct KCycleReport {
  std::vector<KCycle> cycles;
  std::map<std::uint32_t, KBucket> by_k;  // ratio = delta' / delta
  std::uint32_t K = 0;
  std::size_t total_edges = 0;
  std::size_t pair_cycles = 0;           // (e, reverse e) weight-0 pairs
  std::int64_t gap = 0;                  // sum of cycle weights
  std::size_t negative_cycles = 0;
  std::size_t bound_violations = 0;      // cycles with delta' > k * delta
  std::uint64_t w_correction = 0;
  std::size_t w_flagged_runs = 0;        // positive runs that added to W
  std::size_t positive_runs = 0;
  std::size_t pn_path_runs = 0;          // positive runs equal to one greedy path
};

namespace detail {

inline void add_cycle(KCycleReport& rep, const KCycle& c) {
  rep.cycles.push_back(c);
  rep.K = std::max(rep.K, c.k);
  rep.gap += c.weight();
  if (c.weight() < 0) ++rep.negative_cycles;
  if (c.delta_prime > static_cast<std::uint64_t>(c.k) * c.delta) ++rep.bound_violations;
  KBucket& b = rep.by_k[c.k];
  double ratio = c.delta == 0 ? 0.0 : static_cast<double>(c.delta_prime) / static_cast<double>(c.delta);
  ++b.cycles;
  b.ratio_sum += ratio;
  b.ratio_max = std::max(b.ratio_max, ratio);
}

}  // namespace detail

// Peels the multigraph into cycles and measures each one's sign runs. The
// weight-0 pairs formed by a host edge present with both signs are taken out
// first; what remains is peeled by walking until a vertex repeats.
// greedy_paths (host edge ids) lets positive runs be matched against the
// paths the greedy phase consumed, which drives the W correction.
inline KCycleReport kcycle_stats(const SignedMultigraph& m,
                                 std::span<const Path> greedy_paths = {}) {
  if (!m.balanced()) throw std::invalid_argument("kcycle_stats: multigraph is not balanced");
  KCycleReport rep;
  rep.total_edges = m.edges.size();

  std::unordered_map<EdgeId, std::size_t> positive_by_origin;
  for (std::size_t i = 0; i < m.edges.size(); ++i)
    if (m.edges[i].weight > 0) positive_by_origin[m.edges[i].origin] = i;
  std::vector<std::uint8_t> paired(m.edges.size(), 0);
  for (std::size_t i = 0; i < m.edges.size(); ++i) {
    if (m.edges[i].weight > 0) continue;
    auto it = positive_by_origin.find(m.edges[i].origin);
    if (it == positive_by_origin.end()) continue;
    paired[i] = paired[it->second] = 1;
    ++rep.pair_cycles;
    ++rep.positive_runs;
    detail::add_cycle(rep, {1, 1, 1});
  }

  std::unordered_map<EdgeId, std::size_t> path_of;
  for (std::size_t p = 0; p < greedy_paths.size(); ++p)
    for (EdgeId e : greedy_paths[p]) path_of[e] = p;

  std::vector<std::vector<EdgeId>> out(m.n);
  for (EdgeId i = 0; i < m.edges.size(); ++i)
    if (!paired[i]) out[m.edges[i].source].push_back(i);
  auto cycles = detail::peel_balanced(m.n, out, [&](EdgeId i) { return m.edges[i].target; });

  for (const Cycle& c : cycles) {
    const std::size_t len = c.size();
    std::size_t start = len;
    for (std::size_t i = 0; i < len; ++i) {
      if (m.edges[c[i]].weight < 0 && m.edges[c[(i + len - 1) % len]].weight > 0) {
        start = i;
        break;
      }
    }
    if (start == len) throw InvariantError("kcycle_stats: single-sign cycle in audit multigraph");
    // Runs in cycle order starting with a negative run.
    std::vector<std::pair<int, std::vector<EdgeId>>> runs;
    for (std::size_t j = 0; j < len; ++j) {
      EdgeId id = c[(start + j) % len];
      int sign = m.edges[id].weight;
      if (runs.empty() || runs.back().first != sign) runs.push_back({sign, {}});
      runs.back().second.push_back(id);
    }
    KCycle kc;
    for (const auto& [sign, ids] : runs) {
      if (sign > 0) {
        ++kc.k;
        kc.delta_prime += ids.size();
      } else {
        kc.delta += ids.size();
      }
    }
    detail::add_cycle(rep, kc);

    const std::size_t r = runs.size();
    for (std::size_t j = 0; j < r; ++j) {
      if (runs[j].first < 0) continue;
      ++rep.positive_runs;
      const auto& ids = runs[j].second;
      bool is_path = false;
      if (!greedy_paths.empty()) {
        auto it = path_of.find(m.edges[ids.front()].origin);
        if (it != path_of.end() && greedy_paths[it->second].size() == ids.size()) {
          is_path = std::all_of(ids.begin(), ids.end(), [&](EdgeId x) {
            auto f = path_of.find(m.edges[x].origin);
            return f != path_of.end() && f->second == it->second;
          });
        }
      }
      if (is_path) {
        ++rep.pn_path_runs;
        continue;
      }
      std::size_t wp = ids.size();
      std::size_t wu = std::min(runs[(j + r - 1) % r].second.size(), runs[(j + 1) % r].second.size());
      if (wp > wu) {
        rep.w_correction += wp - wu;
        ++rep.w_flagged_runs;
      }
    }
  }
  return rep;
}

struct Bound {
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 1;
  double value() const { return static_cast<double>(numerator) / static_cast<double>(denominator); }
};

// (K - 1) / (K + 1) * m_total.
inline Bound theoretical_bound(std::uint32_t K, std::uint64_t m_total) {
  if (K < 1) throw std::invalid_argument("theoretical_bound: K must be at least 1");
  Bound b{(K - 1) * m_total, K + 1ull};
  std::uint64_t d = std::gcd(b.numerator, b.denominator);
  b.numerator /= d;
  b.denominator /= d;
  return b;
}

// ----------------------------------------------------------------------------
// Mobility between ranking snapshots.
// ----------------------------------------------------------------------------
struct MobilityMatrix {
  std::size_t groups = 0;
  std::vector<std::vector<double>> p;    // p[i][j], row i = group in snapshot 1
  std::vector<std::size_t> group_sizes;  // snapshot 1
};

// Group index per vertex; the highest ranked block gets groups - 1.
inline std::vector<std::size_t> rank_groups(const DirectedGraph& g, const Ranking& r,
                                            std::size_t groups) {
  auto order = rank_order(g, r);
  std::vector<std::size_t> grp(r.size(), 0);
  const std::size_t n = order.size();
  for (std::size_t i = 0; i < n; ++i) grp[order[i]] = groups - 1 - (i * groups) / n;
  return grp;
}

inline MobilityMatrix mobility_matrix(const DirectedGraph& g1, const Ranking& r1,
                                      const DirectedGraph& g2, const Ranking& r2,
                                      std::size_t groups = 5) {
  if (groups == 0) throw std::invalid_argument("mobility_matrix: groups must be positive");
  if (r1.size() != r2.size() || g1.num_vertices() != r1.size() || g2.num_vertices() != r2.size())
    throw std::invalid_argument("mobility_matrix: snapshots cover different vertex sets");
  MobilityMatrix mm;
  mm.groups = groups;
  mm.p.assign(groups, std::vector<double>(groups, 0.0));
  mm.group_sizes.assign(groups, 0);
  auto a = rank_groups(g1, r1, groups);
  auto b = rank_groups(g2, r2, groups);
  std::vector<std::vector<std::size_t>> counts(groups, std::vector<std::size_t>(groups, 0));
  for (VertexId v = 0; v < r1.size(); ++v) {
    ++counts[a[v]][b[v]];
    ++mm.group_sizes[a[v]];
  }
  for (std::size_t i = 0; i < groups; ++i)
    for (std::size_t j = 0; j < groups; ++j)
      if (mm.group_sizes[i] > 0)
        mm.p[i][j] = static_cast<double>(counts[i][j]) / static_cast<double>(mm.group_sizes[i]);
  return mm;
}

// ----------------------------------------------------------------------------
// Edge direction recovery.
// ----------------------------------------------------------------------------
enum class Direction { kForward, kBackward, kAbstain };  // forward: first -> second

struct PredictionReport {
  std::vector<Direction> predictions;
  std::size_t decided = 0;
  std::size_t correct = 0;
  std::optional<double> coverage;  // unset for an empty pair list
  std::optional<double> accuracy;  // unset without truth or decisions
};

inline PredictionReport predict_from_ranks(const Ranking& r,
                                           std::span<const std::pair<VertexId, VertexId>> pairs,
                                           std::span<const Direction> truth = {}) {
  if (!truth.empty() && truth.size() != pairs.size())
    throw std::invalid_argument("predict: truth and pairs differ in length");
  PredictionReport rep;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto [a, b] = pairs[i];
    Direction d = Direction::kAbstain;
    if (a < r.size() && b < r.size() && r[a] != r[b])
      d = r[a] < r[b] ? Direction::kForward : Direction::kBackward;
    rep.predictions.push_back(d);
    if (d == Direction::kAbstain) continue;
    ++rep.decided;
    if (!truth.empty() && truth[i] == d) ++rep.correct;
  }
  if (!pairs.empty()) rep.coverage = static_cast<double>(rep.decided) / static_cast<double>(pairs.size());
  if (!truth.empty() && rep.decided > 0)
    rep.accuracy = static_cast<double>(rep.correct) / static_cast<double>(rep.decided);
  return rep;
}

// Ranks from the training graph (Greedy-R pipeline), then low rank -> high rank.
inline PredictionReport predict_directions(const DirectedGraph& training,
                                           std::span<const std::pair<VertexId, VertexId>> pairs,
                                           std::span<const Direction> truth = {},
                                           unsigned threads = 1) {
  PipelineResult pr = greedy_and_refine(training, GreedyVariant::kReverse, threads);
  Ranking r = assign_ranks(training, pr.solved.decomposition);
  return predict_from_ranks(r, pairs, truth);
}

}  // namespace eulerdag
