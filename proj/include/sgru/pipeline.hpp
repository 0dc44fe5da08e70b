// SPDX-License-Identifier: Apache-2.0
//
// End-to-end commands shared by the CLI and the integration tests: train,
// forecast, evaluate, benchmark. Each command is a pure function of
// (config, seed) and writes deterministic CSV/SVG outputs.

#pragma once

#include <filesystem>

#include "sgru/config.hpp"
#include "sgru/metrics.hpp"
#include "sgru/trainer.hpp"

namespace sgru {

struct TrainArtifacts {
  std::filesystem::path checkpoint;
  std::filesystem::path training_log;
  std::filesystem::path resolved_config;
  TrainReport report;
};

TrainArtifacts run_train(const RunConfig& cfg,
                         const std::filesystem::path& out_dir);

struct ForecastOutput {
  ForecastResult forecast;        // original units
  std::vector<double> history;    // recent observed targets, original units
  std::vector<double> truth;      // held-out prediction-span targets
};

// Conditions over all observed history (train + val + cond spans) starting
// from zero states, then runs the Monte-Carlo prediction.
ForecastOutput run_forecast_core(const RunConfig& cfg, const Checkpoint& ck);

struct ForecastArtifacts {
  std::filesystem::path csv;
  std::filesystem::path svg;
};

ForecastArtifacts run_forecast(const RunConfig& cfg,
                               const std::filesystem::path& checkpoint,
                               const std::filesystem::path& out_dir);

std::filesystem::path run_evaluate(const RunConfig& cfg,
                                   const std::filesystem::path& checkpoint,
                                   const std::filesystem::path& out_dir);

// Trains/evaluates the enabled models on identical splits. The persistence
// row needs no training and is always present.
EvalReport run_benchmark_core(const RunConfig& cfg);

std::filesystem::path run_benchmark(const RunConfig& cfg,
                                    const std::filesystem::path& out_dir);

void write_eval_report_csv(const EvalReport& report,
                           const std::filesystem::path& path);

}  // namespace sgru
