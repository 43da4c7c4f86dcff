#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

namespace cli = eulerdag::cli;

int main(int argc, char** argv) {
  CLI::App app{"Eulerian/DAG decomposition and hierarchy ranking of directed graphs"};
  app.require_subcommand(1);
  cli::RunConfig cfg;
  cfg.threads = eulerdag::default_threads();

  auto add_common = [&](CLI::App* sub, bool with_inputs) {
    if (with_inputs) sub->add_option("inputs", cfg.inputs, "edge-list file(s)")->required()->check(CLI::ExistingFile);
    sub->add_option("--algo", cfg.algo, "simple|dfseven|gr-d|gr-r")
        ->check(CLI::IsMember({"simple", "dfseven", "gr-d", "gr-r"}));
    sub->add_option("--out", cfg.out_dir, "output directory");
    sub->add_option("--threads", cfg.threads, "worker threads for per-component solves")
        ->check(CLI::Range(1u, 1024u));
  };

  auto* decompose = app.add_subcommand("decompose", "write edges.txt (E|D per edge) and metrics.json");
  add_common(decompose, true);
  decompose->add_flag("--compare-dfseven", cfg.compare_dfseven, "also run dfseven to report saved iterations");

  auto* rank = app.add_subcommand("rank", "write ranking.tsv and histogram.json");
  add_common(rank, true);

  auto* stats = app.add_subcommand("stats", "write kcycles.json (audit multigraph statistics)");
  add_common(stats, true);

  auto* mobility = app.add_subcommand("mobility", "write mobility.csv for two snapshots");
  add_common(mobility, true);
  mobility->add_option("--groups", cfg.groups, "number of rank groups")->check(CLI::PositiveNumber);

  auto* predict = app.add_subcommand("predict", "predict edge directions from training ranks");
  add_common(predict, false);
  predict->add_option("--train", cfg.train, "training edge list")->required()->check(CLI::ExistingFile);
  predict->add_option("--test", cfg.test, "test edge list (directions used as truth)")
      ->required()
      ->check(CLI::ExistingFile);

  auto* oracle = app.add_subcommand("oracle-check", "compare all solvers with brute force on random graphs");
  add_common(oracle, false);
  oracle->add_option("--seed", cfg.seed, "random seed");
  oracle->add_option("--count", cfg.count, "number of random graphs");
  oracle->add_option("--max-edges", cfg.max_edges, "edges per random graph, at most");
  oracle->add_option("--oracle-cap", cfg.oracle_cap, "refuse brute force above this many edges")
      ->check(CLI::Range(1, 30));

  auto* generate = app.add_subcommand("generate", "synthetic planted|split|drift inputs");
  generate->add_option("kind", cfg.kind, "planted|split|drift")->check(CLI::IsMember({"planted", "split", "drift"}));
  generate->add_option("--out", cfg.out_dir, "output directory");
  generate->add_option("--seed", cfg.seed, "random seed");
  generate->add_option("--n", cfg.n, "vertices");
  generate->add_option("--levels", cfg.levels, "hidden levels");
  generate->add_option("--degree", cfg.degree, "out-degree per vertex");
  generate->add_option("--noise", cfg.noise, "fraction of downward edges")->check(CLI::Range(0.0, 1.0));
  generate->add_option("--drift", cfg.drift, "fraction of vertices re-levelled")->check(CLI::Range(0.0, 1.0));
  generate->add_option("--train-fraction", cfg.train_fraction, "split only")->check(CLI::Range(0.0, 1.0));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kExitUsage;
  }

  std::ostream& log = std::cout;
  std::ostream& err = std::cerr;
  return cli::guarded(cfg, err, [&]() -> int {
    if (*decompose) return cli::cmd_decompose(cfg, log);
    if (*rank) return cli::cmd_rank(cfg, log);
    if (*stats) return cli::cmd_stats(cfg, log);
    if (*mobility) return cli::cmd_mobility(cfg, log);
    if (*predict) return cli::cmd_predict(cfg, log);
    if (*oracle) return cli::cmd_oracle_check(cfg, log);
    return cli::cmd_generate(cfg, log);
  });
}
