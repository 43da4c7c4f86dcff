#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "eulerdag/eulerdag.hpp"

namespace eulerdag::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitIo = 2;
inline constexpr int kExitInvariant = 3;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::vector<std::string> inputs;
  std::string algo = "gr-r";
  std::string out_dir = ".";
  std::size_t groups = 5;
  unsigned threads = 1;
  std::uint64_t seed = 1;
  std::size_t oracle_cap = 20;
  bool compare_dfseven = false;
  // predict
  std::string train;
  std::string test;
  // oracle-check
  std::size_t count = 100;
  std::size_t max_edges = 14;
  // generate
  std::string kind = "planted";
  std::size_t n = 1000;
  std::uint32_t levels = 8;
  std::size_t degree = 5;
  double noise = 0.10;
  double drift = 0.2;
  double train_fraction = 0.8;
};

inline const std::vector<std::string>& algorithms() {
  static const std::vector<std::string> a{"simple", "dfseven", "gr-d", "gr-r"};
  return a;
}

inline void check_algo(const std::string& algo) {
  for (const auto& a : algorithms())
    if (a == algo) return;
  throw UsageError("unknown algorithm '" + algo + "' (expected simple|dfseven|gr-d|gr-r)");
}

inline bool is_gr(const std::string& algo) { return algo == "gr-d" || algo == "gr-r"; }

inline ParsedGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open input '" + path + "'");
  try {
    return parse_edge_list(in);
  } catch (const ParseError& e) {
    throw IoError(path + ": " + e.what());
  }
}

inline fs::path prepare_out(const RunConfig& cfg) {
  fs::path dir(cfg.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory '" + cfg.out_dir + "'");
  return dir;
}

inline std::ofstream open_out(const fs::path& p) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw IoError("cannot write '" + p.string() + "'");
  return out;
}

inline void write_json(const fs::path& p, const json& j) {
  auto out = open_out(p);
  out << j.dump(2) << '\n';
  if (!out) throw IoError("write failed for '" + p.string() + "'");
}

struct Solved {
  SolveResult result;
  std::optional<PipelineResult> pipeline;
};

inline Solved solve(const DirectedGraph& g, const std::string& algo, unsigned threads) {
  check_algo(algo);
  Solved s;
  if (algo == "simple") {
    s.result = simple(g);
  } else if (algo == "dfseven") {
    s.result = dfseven(g);
  } else {
    auto variant = algo == "gr-d" ? GreedyVariant::kDelete : GreedyVariant::kReverse;
    s.pipeline = greedy_and_refine(g, variant, threads);
    s.result = s.pipeline->solved;
  }
  return s;
}

inline std::string fixed6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

inline json nullable(const std::optional<double>& x) { return x ? json(*x) : json(nullptr); }

inline json metrics_json(const ParsedGraph& pg, const std::string& algo, const Solved& s,
                         const std::optional<SolveResult>& baseline) {
  const DirectedGraph& g = pg.graph;
  const EdgeSet& euler = s.result.decomposition.euler;
  json j;
  j["schema"] = 1;
  j["algorithm"] = algo;
  j["n"] = g.num_vertices();
  j["m"] = g.num_edges();
  j["self_loops_dropped"] = pg.stats.self_loops_dropped;
  j["duplicates_dropped"] = pg.stats.duplicates_dropped;
  j["v_euler"] = euler_vertex_count(g, euler);
  j["e_euler"] = euler.size();
  j["e_dag"] = s.result.decomposition.dag.size();
  j["iterations"] = s.result.stats.cycles_found;
  j["relaxations"] = s.result.stats.relaxations;
  j["edges_scanned"] = s.result.stats.edges_scanned;
  j["min_dst"] = s.result.stats.min_dst;
  if (s.pipeline) {
    const PipelineResult& p = *s.pipeline;
    j["refine_iterations"] = p.solved.stats.cycles_found;
    j["greedy_size"] = p.greedy_euler.size();
    j["approx_size"] = p.approx.size();
    j["greedy_ratio"] = euler.empty() ? 1.0 : static_cast<double>(p.approx.size()) / static_cast<double>(euler.size());
    j["l_max"] = p.l_max;
    j["paths_per_l"] = p.paths_per_l;
    json comps = json::array();
    for (const ComponentRecord& c : p.components) {
      comps.push_back({{"component_id", c.component_id},
                       {"n", c.n},
                       {"m", c.m},
                       {"greedy_size", c.greedy_size},
                       {"approx_size", c.approx_size},
                       {"euler_size", c.euler_size},
                       {"refine_iterations", c.refine_iterations},
                       {"lmax", c.l_max}});
    }
    j["components"] = comps;
  } else {
    j["refine_iterations"] = nullptr;
    j["l_max"] = nullptr;
  }
  if (baseline) {
    j["dfseven_iterations"] = baseline->stats.cycles_found;
    if (s.pipeline && baseline->stats.cycles_found > 0)
      j["iterations_saved_pct"] =
          100.0 * (1.0 - static_cast<double>(s.result.stats.cycles_found) /
                             static_cast<double>(baseline->stats.cycles_found));
    else
      j["iterations_saved_pct"] = nullptr;
  } else {
    j["iterations_saved_pct"] = nullptr;
  }
  return j;
}

inline const ParsedGraph& single_input(const RunConfig& cfg, std::optional<ParsedGraph>& slot) {
  if (cfg.inputs.size() != 1) throw UsageError("expected exactly one input file");
  slot = load_graph(cfg.inputs[0]);
  return *slot;
}

inline int cmd_decompose(const RunConfig& cfg, std::ostream& log) {
  check_algo(cfg.algo);
  std::optional<ParsedGraph> slot;
  const ParsedGraph& pg = single_input(cfg, slot);
  fs::path dir = prepare_out(cfg);
  Solved s = solve(pg.graph, cfg.algo, cfg.threads);
  std::optional<SolveResult> baseline;
  if (cfg.compare_dfseven) baseline = dfseven(pg.graph);

  auto out = open_out(dir / "edges.txt");
  const auto& d = s.result.decomposition;
  for (EdgeId e = 0; e < pg.graph.num_edges(); ++e) {
    const Edge& ed = pg.graph.edge(e);
    out << pg.names.label(ed.source) << ' ' << pg.names.label(ed.target) << ' '
        << (d.euler.contains(e) ? 'E' : 'D') << '\n';
  }
  if (!out) throw IoError("write failed for edges.txt");
  json j = metrics_json(pg, cfg.algo, s, baseline);
  write_json(dir / "metrics.json", j);
  log << "e_euler=" << j["e_euler"] << " v_euler=" << j["v_euler"] << " iterations=" << j["iterations"]
      << '\n';
  return kExitOk;
}

inline int cmd_rank(const RunConfig& cfg, std::ostream& log) {
  check_algo(cfg.algo);
  std::optional<ParsedGraph> slot;
  const ParsedGraph& pg = single_input(cfg, slot);
  fs::path dir = prepare_out(cfg);
  Solved s = solve(pg.graph, cfg.algo, cfg.threads);
  Ranking r = assign_ranks(pg.graph, s.result.decomposition);
  auto out = open_out(dir / "ranking.tsv");
  for (VertexId v = 0; v < r.size(); ++v) out << pg.names.label(v) << '\t' << r[v] << '\n';
  if (!out) throw IoError("write failed for ranking.tsv");

  RankHistogram h = rank_distribution(pg.graph, r);
  json j;
  j["schema"] = 1;
  j["algorithm"] = cfg.algo;
  j["n"] = pg.graph.num_vertices();
  j["e_euler"] = s.result.decomposition.euler.size();
  j["agony"] = agony(pg.graph, r);
  json bins = json::array();
  for (std::size_t k = 0; k < h.counts.size(); ++k)
    bins.push_back({{"rank", k},
                    {"count", h.counts[k]},
                    {"fraction", h.fractions[k]},
                    {"mean_in_minus_out", h.mean_in_minus_out[k]}});
  j["ranks"] = bins;
  bool bottom_largest = !h.counts.empty();
  for (std::size_t k = 1; k < h.counts.size(); ++k)
    if (h.counts[k] > h.counts[0]) bottom_largest = false;
  j["bottom_rank_largest"] = bottom_largest;
  write_json(dir / "histogram.json", j);
  log << "ranks=" << h.counts.size() << " agony=" << j["agony"] << '\n';
  return kExitOk;
}

inline json kcycle_json(const DirectedGraph& g, const PipelineResult& p, const KCycleReport& rep) {
  json j;
  const std::size_t exact = p.solved.decomposition.euler.size();
  const std::size_t approx = p.approx.size();
  j["e_euler"] = exact;
  j["approx_size"] = approx;
  j["gap"] = static_cast<std::int64_t>(exact) - static_cast<std::int64_t>(approx);
  j["g_cal_edges"] = rep.total_edges;
  j["w_correction"] = rep.w_correction;
  j["w_correction_approximate"] = true;
  j["w_flagged_runs"] = rep.w_flagged_runs;
  j["positive_runs"] = rep.positive_runs;
  j["pn_path_runs"] = rep.pn_path_runs;
  j["cycles"] = rep.cycles.size();
  j["pair_cycles"] = rep.pair_cycles;
  j["K"] = rep.K;
  j["cycle_weight_sum"] = rep.gap;
  j["negative_cycles"] = rep.negative_cycles;
  j["bound_violations"] = rep.bound_violations;
  if (rep.K >= 1) {
    Bound bh = theoretical_bound(rep.K, g.num_edges());
    Bound bg = theoretical_bound(rep.K, rep.total_edges);
    j["bound_host_edges"] = {{"numerator", bh.numerator}, {"denominator", bh.denominator}, {"value", bh.value()}};
    j["bound_gcal_edges"] = {{"numerator", bg.numerator}, {"denominator", bg.denominator}, {"value", bg.value()}};
    j["gap_within_bound"] = static_cast<double>(exact - approx) <= bh.value() + 1e-9;
  } else {
    j["bound_host_edges"] = nullptr;
    j["bound_gcal_edges"] = nullptr;
    j["gap_within_bound"] = exact == approx;
  }
  json by_k = json::array();
  for (const auto& [k, b] : rep.by_k)
    by_k.push_back({{"k", k},
                    {"cycles", b.cycles},
                    {"mean_ratio", b.cycles ? b.ratio_sum / static_cast<double>(b.cycles) : 0.0},
                    {"max_ratio", b.ratio_max}});
  j["by_k"] = by_k;
  return j;
}

inline int cmd_stats(const RunConfig& cfg, std::ostream& log) {
  check_algo(cfg.algo);
  if (!is_gr(cfg.algo)) throw UsageError("stats needs --algo gr-d or gr-r");
  std::optional<ParsedGraph> slot;
  const ParsedGraph& pg = single_input(cfg, slot);
  fs::path dir = prepare_out(cfg);
  Solved s = solve(pg.graph, cfg.algo, cfg.threads);
  const PipelineResult& p = *s.pipeline;
  SignedMultigraph gc = build_gcal(pg.graph, p.approx, p.solved.decomposition.euler);
  KCycleReport rep = kcycle_stats(gc, p.greedy_paths);
  if (rep.gap != static_cast<std::int64_t>(p.solved.decomposition.euler.size()) -
                     static_cast<std::int64_t>(p.approx.size()))
    throw InvariantError("stats: cycle weights do not add up to the size gap");
  json j;
  j["schema"] = 1;
  j["algorithm"] = cfg.algo;
  j.update(kcycle_json(pg.graph, p, rep));
  write_json(dir / "kcycles.json", j);
  log << "g_cal_edges=" << rep.total_edges << " W=" << rep.w_correction << " K=" << rep.K << '\n';
  return kExitOk;
}

inline int cmd_mobility(const RunConfig& cfg, std::ostream& log) {
  check_algo(cfg.algo);
  if (cfg.inputs.size() != 2) throw UsageError("mobility needs exactly two snapshot files");
  if (cfg.groups == 0) throw UsageError("--groups must be positive");
  std::vector<ParsedGraph> snaps;
  for (const auto& p : cfg.inputs) snaps.push_back(load_graph(p));
  SnapshotSeries series = align_snapshots(snaps);
  fs::path dir = prepare_out(cfg);
  std::vector<Ranking> ranks;
  for (const auto& g : series.graphs)
    ranks.push_back(assign_ranks(g, solve(g, cfg.algo, cfg.threads).result.decomposition));
  MobilityMatrix mm = mobility_matrix(series.graphs[0], ranks[0], series.graphs[1], ranks[1], cfg.groups);
  auto out = open_out(dir / "mobility.csv");
  out << "group";
  for (std::size_t j = 0; j < mm.groups; ++j) out << ",g" << (j + 1);
  out << '\n';
  double off = 0.0;
  for (std::size_t i = 0; i < mm.groups; ++i) {
    out << 'g' << (i + 1);
    for (std::size_t j = 0; j < mm.groups; ++j) {
      out << ',' << fixed6(mm.p[i][j]);
      if (i != j) off += mm.p[i][j];
    }
    out << '\n';
  }
  if (!out) throw IoError("write failed for mobility.csv");
  log << "vertices=" << series.names.size() << " off_diagonal_mass=" << fixed6(off) << '\n';
  return kExitOk;
}

inline const char* direction_token(Direction d) {
  switch (d) {
    case Direction::kForward: return "->";
    case Direction::kBackward: return "<-";
    default: return "none";
  }
}

inline int cmd_predict(const RunConfig& cfg, std::ostream& log) {
  if (cfg.train.empty() || cfg.test.empty()) throw UsageError("predict needs --train and --test");
  ParsedGraph train = load_graph(cfg.train);
  std::ifstream tin(cfg.test);
  if (!tin) throw IoError("cannot open input '" + cfg.test + "'");
  // Test pairs are read as labels only; each is put in label order so the
  // file's edge direction is used solely as ground truth.
  std::vector<std::pair<std::string, std::string>> labels;
  std::vector<Direction> truth;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(tin, line)) {
    ++lineno;
    auto tok = detail::split_ws(line);
    if (tok.empty() || tok.front().front() == '#') continue;
    if (tok.size() != 2)
      throw IoError(cfg.test + ": line " + std::to_string(lineno) + ": expected 2 tokens");
    std::string a(tok[0]), b(tok[1]);
    if (a == b) continue;
    if (b < a) {
      labels.push_back({b, a});
      truth.push_back(Direction::kBackward);
    } else {
      labels.push_back({a, b});
      truth.push_back(Direction::kForward);
    }
  }
  fs::path dir = prepare_out(cfg);
  const VertexId unseen = static_cast<VertexId>(train.graph.num_vertices());
  std::vector<std::pair<VertexId, VertexId>> pairs;
  for (const auto& [a, b] : labels)
    pairs.push_back({train.names.find(a).value_or(unseen), train.names.find(b).value_or(unseen)});
  PredictionReport rep = predict_directions(train.graph, pairs, truth, cfg.threads);
  auto out = open_out(dir / "predictions.tsv");
  for (std::size_t i = 0; i < labels.size(); ++i)
    out << labels[i].first << '\t' << labels[i].second << '\t' << direction_token(rep.predictions[i]) << '\n';
  if (!out) throw IoError("write failed for predictions.tsv");
  json j;
  j["schema"] = 1;
  j["pairs"] = labels.size();
  j["decided"] = rep.decided;
  j["correct"] = rep.correct;
  j["coverage"] = nullable(rep.coverage);
  j["accuracy"] = nullable(rep.accuracy);
  write_json(dir / "prediction.json", j);
  log << "pairs=" << labels.size() << " coverage=" << j["coverage"] << " accuracy=" << j["accuracy"] << '\n';
  return kExitOk;
}

struct OracleCheckSummary {
  std::size_t graphs = 0;
  std::size_t mismatches = 0;
  json records = json::array();
};

inline OracleCheckSummary run_oracle_check(std::uint64_t seed, std::size_t count, std::size_t max_edges,
                                           std::size_t cap, unsigned threads) {
  if (max_edges > cap) throw UsageError("--max-edges exceeds --oracle-cap");
  synthetic::Rng rng(seed);
  OracleCheckSummary sum;
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t n = 2 + synthetic::below(rng, 7);
    std::size_t m = synthetic::below(rng, max_edges + 1);
    DirectedGraph g = synthetic::random_digraph_m(n, m, rng);
    OracleOptions oo;
    oo.max_edges = cap;
    std::size_t best = brute_force_max_euler(g, oo).best_size;
    std::size_t s1 = simple(g).decomposition.euler.size();
    std::size_t s2 = dfseven(g).decomposition.euler.size();
    std::size_t s3 = greedy_and_refine(g, GreedyVariant::kDelete, threads).solved.decomposition.euler.size();
    std::size_t s4 = greedy_and_refine(g, GreedyVariant::kReverse, threads).solved.decomposition.euler.size();
    bool ok = s1 == best && s2 == best && s3 == best && s4 == best;
    ++sum.graphs;
    if (!ok) ++sum.mismatches;
    sum.records.push_back({{"index", i}, {"n", n}, {"m", g.num_edges()}, {"oracle", best},
                           {"simple", s1}, {"dfseven", s2}, {"gr_d", s3}, {"gr_r", s4}, {"ok", ok}});
  }
  return sum;
}

inline int cmd_oracle_check(const RunConfig& cfg, std::ostream& log) {
  fs::path dir = prepare_out(cfg);
  OracleCheckSummary sum = run_oracle_check(cfg.seed, cfg.count, cfg.max_edges, cfg.oracle_cap, cfg.threads);
  json j;
  j["schema"] = 1;
  j["seed"] = cfg.seed;
  j["graphs"] = sum.graphs;
  j["mismatches"] = sum.mismatches;
  j["pass"] = sum.mismatches == 0;
  j["records"] = sum.records;
  write_json(dir / "oracle_check.json", j);
  log << (sum.mismatches == 0 ? "PASS" : "FAIL") << " oracle-check: " << sum.graphs << " graphs, "
      << sum.mismatches << " mismatches\n";
  return sum.mismatches == 0 ? kExitOk : kExitInvariant;
}

inline void write_edges(const fs::path& p, const DirectedGraph& g, std::span<const EdgeId> ids) {
  auto out = open_out(p);
  out << "# n=" << g.num_vertices() << " m=" << ids.size() << '\n';
  for (EdgeId e : ids) out << g.edge(e).source << ' ' << g.edge(e).target << '\n';
  if (!out) throw IoError("write failed for '" + p.string() + "'");
}

inline std::vector<EdgeId> all_edge_ids(const DirectedGraph& g) {
  std::vector<EdgeId> ids(g.num_edges());
  for (EdgeId e = 0; e < g.num_edges(); ++e) ids[e] = e;
  return ids;
}

// Synthetic stand-ins: "planted" writes graph.txt and levels.tsv, "split"
// writes train.txt and test.txt from one planted graph, "drift" writes two
// snapshots over the same vertex set.
inline int cmd_generate(const RunConfig& cfg, std::ostream& log) {
  fs::path dir = prepare_out(cfg);
  synthetic::Rng rng(cfg.seed);
  synthetic::PlantedOptions o;
  o.n = cfg.n;
  o.levels = cfg.levels;
  o.out_degree = cfg.degree;
  o.noise = cfg.noise;
  if (cfg.kind == "planted" || cfg.kind == "split") {
    auto ph = synthetic::planted_hierarchy(o, rng);
    if (cfg.kind == "planted") {
      write_edges(dir / "graph.txt", ph.graph, all_edge_ids(ph.graph));
      auto out = open_out(dir / "levels.tsv");
      for (VertexId v = 0; v < ph.level.size(); ++v) out << v << '\t' << ph.level[v] << '\n';
    } else {
      std::vector<EdgeId> train, test;
      for (EdgeId e = 0; e < ph.graph.num_edges(); ++e)
        (synthetic::unit(rng) < cfg.train_fraction ? train : test).push_back(e);
      write_edges(dir / "train.txt", ph.graph, train);
      write_edges(dir / "test.txt", ph.graph, test);
    }
    log << "generated " << cfg.kind << " n=" << ph.graph.num_vertices() << " m=" << ph.graph.num_edges() << '\n';
    return kExitOk;
  }
  if (cfg.kind == "drift") {
    auto [a, b] = synthetic::drift_pair(o, cfg.drift, rng);
    write_edges(dir / "snapshot_1.txt", a.graph, all_edge_ids(a.graph));
    write_edges(dir / "snapshot_2.txt", b.graph, all_edge_ids(b.graph));
    log << "generated drift pair n=" << cfg.n << " drift=" << cfg.drift << '\n';
    return kExitOk;
  }
  throw UsageError("unknown generator '" + cfg.kind + "' (expected planted|split|drift)");
}

inline void dump_invariant(const RunConfig& cfg, const InvariantError& e, std::ostream& err) {
  fs::path p = fs::path(cfg.out_dir.empty() ? "." : cfg.out_dir) / "invariant_dump.txt";
  std::error_code ec;
  fs::create_directories(p.parent_path(), ec);
  std::ofstream out(p);
  if (!out) {
    err << "could not write " << p << '\n';
    return;
  }
  out << "# " << e.what() << '\n';
  out << "# edges=" << e.subgraph().size() << " (internal vertex ids)\n";
  for (const Edge& x : e.subgraph()) out << x.source << ' ' << x.target << '\n';
  err << "offending subgraph written to " << p.string() << '\n';
}

// Maps exceptions to exit codes.
template <class Fn>
int guarded(const RunConfig& cfg, std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const SizeCapError& e) {
    err << "refused: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const InvariantError& e) {
    err << "invariant breach: " << e.what() << '\n';
    dump_invariant(cfg, e, err);
    return kExitInvariant;
  } catch (const fs::filesystem_error& e) {
    err << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace eulerdag::cli
