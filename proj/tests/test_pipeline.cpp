// SPDX-License-Identifier: Apache-2.0
//
// End-to-end pipeline tests on a small synthetic configuration: artifact
// layout, CSV schemas, byte-level determinism of re-runs, SVG structure, and
// checkpoint/config compatibility checks.

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sgru/pipeline.hpp"

using namespace sgru;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("sgru_pipe_" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  REQUIRE(f.good());
  return std::string(std::istreambuf_iterator<char>(f),
                     std::istreambuf_iterator<char>());
}

// Small, fast synthetic run used by every test here.
RunConfig small_config() {
  RunConfig cfg = profile_config("synthetic");
  cfg.split = {200, 40, 10, 20, 30};
  cfg.dims.hidden = 12;
  cfg.dims.g = 12;
  cfg.dims.latent = 3;
  cfg.dims.prior = {1, 8};
  cfg.dims.emission = {1, 8};
  cfg.epochs = 8;
  cfg.patience = 8;
  cfg.n_sims = 60;
  cfg.lstm_hidden = 8;
  cfg.lstm_epochs = 10;
  cfg.mlp_epochs = 60;
  cfg.seed = 7;
  return cfg;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) out.push_back(line);
  return out;
}

int count_occurrences(const std::string& hay, const std::string& needle) {
  int n = 0;
  for (std::size_t pos = hay.find(needle); pos != std::string::npos;
       pos = hay.find(needle, pos + needle.size()))
    ++n;
  return n;
}

}  // namespace

TEST_CASE("run_train writes the artifact set; re-runs are byte-identical") {
  TempDir tmp;
  auto cfg = small_config();

  auto a = run_train(cfg, tmp.path / "run1");
  CHECK(std::filesystem::exists(a.checkpoint));
  CHECK(std::filesystem::exists(a.training_log));
  CHECK(std::filesystem::exists(a.resolved_config));
  CHECK(a.report.best_epoch >= 0);

  auto log_lines = lines_of(slurp(a.training_log));
  REQUIRE(!log_lines.empty());
  CHECK(log_lines[0] == "epoch,train_elbo,val_elbo");
  CHECK(log_lines.size() == a.report.train_elbo.size() + 1);

  // the resolved snapshot re-parses to an equivalent configuration
  auto reparsed = profile_config("synthetic");
  apply_config_file(reparsed, a.resolved_config.string());
  CHECK(reparsed.split.n_train == cfg.split.n_train);
  CHECK(reparsed.dims.hidden == cfg.dims.hidden);
  CHECK(reparsed.seed == cfg.seed);

  auto b = run_train(cfg, tmp.path / "run2");
  CHECK(slurp(a.checkpoint) == slurp(b.checkpoint));
  CHECK(slurp(a.training_log) == slurp(b.training_log));
  CHECK(slurp(a.resolved_config) == slurp(b.resolved_config));
}

TEST_CASE("run_forecast: csv schema, svg structure, determinism") {
  TempDir tmp;
  auto cfg = small_config();
  auto t = run_train(cfg, tmp.path / "train");

  auto f1 = run_forecast(cfg, t.checkpoint, tmp.path / "fc1");
  auto f2 = run_forecast(cfg, t.checkpoint, tmp.path / "fc2");
  CHECK(slurp(f1.csv) == slurp(f2.csv));
  CHECK(slurp(f1.svg) == slurp(f2.svg));

  auto rows = lines_of(slurp(f1.csv));
  REQUIRE(rows.size() == 31u);  // header + one row per horizon step
  CHECK(rows[0] == "step,mean,q05,q50,q95");
  CHECK(rows[1].rfind("1,", 0) == 0);
  CHECK(rows[30].rfind("30,", 0) == 0);

  const std::string svg = slurp(f1.svg);
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(count_occurrences(svg, "<svg") == 1);
  CHECK(count_occurrences(svg, "</svg>") == 1);
  // one polyline per plotted series: history, mean, three quantile lines
  CHECK(count_occurrences(svg, "<polyline") == 5);
  CHECK(count_occurrences(svg, "<polygon") == 1);  // the 5-95% band

  // a different forecast seed changes the output
  auto cfg2 = cfg;
  cfg2.seed = 8;
  auto f3 = run_forecast(cfg2, t.checkpoint, tmp.path / "fc3");
  CHECK(slurp(f1.csv) != slurp(f3.csv));
}

TEST_CASE("run_forecast: dim mismatch lists both dimension sets") {
  TempDir tmp;
  auto cfg = small_config();
  auto t = run_train(cfg, tmp.path / "train");

  auto other = cfg;
  other.dims.hidden = 16;
  other.dims.g = 16;
  CHECK_THROWS_WITH_AS(run_forecast(other, t.checkpoint, tmp.path / "x"),
                       doctest::Contains("h=16"), ConfigError);
  try {
    run_forecast(other, t.checkpoint, tmp.path / "x");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("h=12") != std::string::npos);  // checkpoint side too
  }

  CHECK_THROWS_AS(
      run_forecast(cfg, tmp.path / "missing.bin", tmp.path / "y"),
      CheckpointError);
}

TEST_CASE("run_evaluate writes a one-row report over the truth span") {
  TempDir tmp;
  auto cfg = small_config();
  auto t = run_train(cfg, tmp.path / "train");
  auto p = run_evaluate(cfg, t.checkpoint, tmp.path / "eval");
  auto rows = lines_of(slurp(p));
  REQUIRE(rows.size() == 2u);
  CHECK(rows[0] == "model,step5,step10,step15,step20,step25,step30");
  CHECK(rows[1].rfind("stochastic_gru,", 0) == 0);
}

TEST_CASE("run_benchmark compares all enabled models on identical splits") {
  TempDir tmp;
  auto cfg = small_config();
  auto p = run_benchmark(cfg, tmp.path / "bench");
  auto rows = lines_of(slurp(p));
  REQUIRE(rows.size() == 5u);
  CHECK(rows[0] == "model,step5,step10,step15,step20,step25,step30");
  CHECK(rows[1].rfind("stochastic_gru,", 0) == 0);
  CHECK(rows[2].rfind("ar1,", 0) == 0);
  CHECK(rows[3].rfind("lstm,", 0) == 0);
  CHECK(rows[4].rfind("mlp,", 0) == 0);

  // rerun is byte-identical
  auto p2 = run_benchmark(cfg, tmp.path / "bench2");
  CHECK(slurp(p) == slurp(p2));

  // baselines can be disabled; the persistence row always remains
  auto cfg2 = cfg;
  cfg2.run_lstm = false;
  cfg2.run_mlp = false;
  auto report = run_benchmark_core(cfg2);
  REQUIRE(report.models.size() == 2u);
  CHECK(report.models[1] == "ar1");
  REQUIRE(report.values[1].size() == report.cutoffs.size());
  for (double v : report.values[1]) CHECK(v >= 0.0);
}

TEST_CASE("missing dataset file surfaces the path") {
  auto cfg = small_config();
  cfg.dataset_path = "/definitely/not/here.csv";
  CHECK_THROWS_WITH_AS(run_benchmark_core(cfg),
                       doctest::Contains("/definitely/not/here.csv"),
                       DataError);
}
