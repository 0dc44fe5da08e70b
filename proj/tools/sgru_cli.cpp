// SPDX-License-Identifier: Apache-2.0
//
// Command-line entry point: train, forecast, evaluate, benchmark.

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sgru/pipeline.hpp"

namespace {

struct CommonArgs {
  std::string config_file;
  std::string profile = "synthetic";
  std::string checkpoint;
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed;
  std::optional<int> n_sims;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool needs_checkpoint) {
  cmd->add_option("--config", args.config_file, "Config file (INI format)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--profile", args.profile,
                  "Dataset profile providing defaults")
      ->check(CLI::IsMember(sgru::known_profiles()));
  cmd->add_option("--out-dir", args.out_dir, "Output directory");
  cmd->add_option("--seed", args.seed, "Random seed");
  cmd->add_option("--n-sims", args.n_sims, "Monte-Carlo simulation count");
  auto* ck = cmd->add_option("--checkpoint", args.checkpoint,
                             "Model checkpoint path");
  if (needs_checkpoint) ck->required();
}

sgru::RunConfig resolve(const CommonArgs& args) {
  sgru::RunConfig cfg = sgru::profile_config(args.profile);
  if (!args.config_file.empty()) sgru::apply_config_file(cfg, args.config_file);
  if (args.seed) cfg.seed = *args.seed;
  if (args.n_sims) cfg.n_sims = *args.n_sims;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Probabilistic multistep time-series forecasting with a "
               "stochastic GRU"};
  app.require_subcommand(1);

  CommonArgs train_args, forecast_args, eval_args, bench_args;
  auto* cmd_train = app.add_subcommand("train", "Train the stochastic GRU");
  add_common(cmd_train, train_args, false);
  auto* cmd_forecast =
      app.add_subcommand("forecast", "Monte-Carlo forecast from a checkpoint");
  add_common(cmd_forecast, forecast_args, true);
  auto* cmd_eval = app.add_subcommand(
      "evaluate", "Forecast and score against the held-out prediction span");
  add_common(cmd_eval, eval_args, true);
  auto* cmd_bench = app.add_subcommand(
      "benchmark", "Compare against AR(1), LSTM and MLP baselines");
  add_common(cmd_bench, bench_args, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_train->parsed()) {
      sgru::RunConfig cfg = resolve(train_args);
      auto a = sgru::run_train(cfg, train_args.out_dir);
      std::cout << "checkpoint: " << a.checkpoint.string() << "\n"
                << "training log: " << a.training_log.string() << "\n"
                << "resolved config: " << a.resolved_config.string() << "\n"
                << "best epoch: " << a.report.best_epoch << " ("
                << a.report.wall_seconds << " s)\n";
    } else if (cmd_forecast->parsed()) {
      sgru::RunConfig cfg = resolve(forecast_args);
      auto a = sgru::run_forecast(cfg, forecast_args.checkpoint,
                                  forecast_args.out_dir);
      std::cout << "forecast: " << a.csv.string() << "\n"
                << "plot: " << a.svg.string() << "\n";
    } else if (cmd_eval->parsed()) {
      sgru::RunConfig cfg = resolve(eval_args);
      auto p = sgru::run_evaluate(cfg, eval_args.checkpoint, eval_args.out_dir);
      std::cout << "evaluation: " << p.string() << "\n";
    } else if (cmd_bench->parsed()) {
      sgru::RunConfig cfg = resolve(bench_args);
      auto p = sgru::run_benchmark(cfg, bench_args.out_dir);
      std::cout << "benchmark: " << p.string() << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
