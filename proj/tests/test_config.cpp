// SPDX-License-Identifier: Apache-2.0
//
// Run-configuration tests: bundled profile values, INI parsing and overlay
// precedence, snapshot round trip, and validation errors.

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "sgru/config.hpp"

using namespace sgru;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("sgru_config_" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }

  std::string write(const std::string& name, const std::string& content) {
    auto p = path / name;
    std::ofstream(p) << content;
    return p.string();
  }
};

}  // namespace

TEST_CASE("profiles resolve to the bundled parameter rows") {
  auto opt = profile_config("options");
  CHECK(opt.split.n_train == 300);
  CHECK(opt.split.n_val == 30);
  CHECK(opt.split.n_cond == 10);
  CHECK(opt.split.seq_len == 10);
  CHECK(opt.split.n_pred == 30);
  CHECK(opt.dims.latent == 50);
  CHECK(opt.dims.hidden == 64);
  CHECK(opt.dims.g == 64);
  CHECK(opt.dims.prior.layers == 4);
  CHECK(opt.dims.prior.width == 64);
  CHECK(opt.dims.emission.width == 64);
  CHECK(opt.lstm_hidden == 64);

  auto pm = profile_config("pm25");
  CHECK(pm.split.n_train == 1200);
  CHECK(pm.split.n_val == 200);
  CHECK(pm.split.n_cond == 10);
  CHECK(pm.split.seq_len == 10);
  CHECK(pm.split.n_pred == 30);
  CHECK(pm.dims.latent == 50);
  CHECK(pm.dims.hidden == 64);
  CHECK(pm.dims.g == 64);
  CHECK(pm.dims.prior.layers == 4);
  CHECK(pm.dims.prior.width == 64);
  CHECK(pm.lstm_hidden == 64);

  auto tr = profile_config("traffic");
  CHECK(tr.split.n_train == 1000);
  CHECK(tr.split.n_val == 200);
  CHECK(tr.split.n_cond == 20);
  CHECK(tr.split.seq_len == 20);
  CHECK(tr.split.n_pred == 30);
  CHECK(tr.dims.latent == 30);
  CHECK(tr.dims.hidden == 128);
  CHECK(tr.dims.g == 128);
  CHECK(tr.dims.prior.layers == 4);
  CHECK(tr.dims.prior.width == 128);
  CHECK(tr.lstm_hidden == 128);

  auto ch = profile_config("chickenpox");
  CHECK(ch.split.n_train == 300);
  CHECK(ch.split.n_val == 150);
  CHECK(ch.split.n_cond == 10);
  CHECK(ch.split.seq_len == 10);
  CHECK(ch.split.n_pred == 30);
  CHECK(ch.dims.latent == 50);
  CHECK(ch.dims.hidden == 128);
  CHECK(ch.dims.g == 128);
  CHECK(ch.dims.prior.width == 128);
  CHECK(ch.lstm_hidden == 128);

  // shared defaults across all profiles
  for (const auto& name : known_profiles()) {
    auto c = profile_config(name);
    CHECK(c.n_sims == 500);
    CHECK(c.lr == 1e-3);
    CHECK(c.grad_clip == 10.0);
    CHECK(c.split.n_pred == 30);
  }

  CHECK_THROWS_AS(profile_config("bogus"), ConfigError);
  CHECK(known_profiles() ==
        std::vector<std::string>{"options", "pm25", "traffic", "chickenpox",
                                 "synthetic"});
}

TEST_CASE("config file overlays the profile; later values win") {
  TempDir tmp;
  auto p = tmp.write("run.ini",
                     "# comment\n"
                     "[split]\n"
                     "train = 120\n"
                     "seq_len = 12\n"
                     "[model]\n"
                     "z = 6\n"
                     "[train]\n"
                     "epochs = 9\n"
                     "lr = 0.005\n"
                     "[forecast]\n"
                     "quantiles = 0.1, 0.5, 0.9\n"
                     "[baselines]\n"
                     "mlp = false\n");
  auto cfg = profile_config("synthetic");
  apply_config_file(cfg, p);
  CHECK(cfg.split.n_train == 120);
  CHECK(cfg.split.seq_len == 12);
  CHECK(cfg.split.n_val == 200);  // untouched profile default
  CHECK(cfg.dims.latent == 6);
  CHECK(cfg.epochs == 9);
  CHECK(cfg.lr == 0.005);
  CHECK(cfg.quantiles == std::vector<double>{0.1, 0.5, 0.9});
  CHECK_FALSE(cfg.run_mlp);
  CHECK(cfg.run_lstm);
}

TEST_CASE("config file error paths name the offending field") {
  TempDir tmp;
  auto unknown = tmp.write("u.ini", "[train]\nepoch_count = 3\n");
  auto cfg = profile_config("synthetic");
  CHECK_THROWS_WITH_AS(apply_config_file(cfg, unknown),
                       doctest::Contains("train.epoch_count"), ConfigError);

  auto badsec = tmp.write("s.ini", "[nonsense]\nx = 1\n");
  CHECK_THROWS_WITH_AS(apply_config_file(cfg, badsec),
                       doctest::Contains("nonsense"), ConfigError);

  auto badval = tmp.write("v.ini", "[train]\nepochs = many\n");
  CHECK_THROWS_WITH_AS(apply_config_file(cfg, badval),
                       doctest::Contains("train.epochs"), ConfigError);

  auto nosection = tmp.write("n.ini", "epochs = 3\n");
  CHECK_THROWS_AS(apply_config_file(cfg, nosection), ConfigError);

  auto noeq = tmp.write("e.ini", "[train]\nepochs\n");
  CHECK_THROWS_AS(apply_config_file(cfg, noeq), ConfigError);

  CHECK_THROWS_AS(apply_config_file(cfg, (tmp.path / "nope.ini").string()),
                  ConfigError);
}

TEST_CASE("render_config round trips through apply_config_file") {
  TempDir tmp;
  auto cfg = profile_config("traffic");
  cfg.seed = 77;
  cfg.n_sims = 250;
  cfg.quantiles = {0.25, 0.75};
  auto p = tmp.write("snap.ini", render_config(cfg));

  auto other = profile_config("synthetic");
  other.dataset_path.clear();
  apply_config_file(other, p);
  CHECK(other.split.n_train == cfg.split.n_train);
  CHECK(other.split.seq_len == cfg.split.seq_len);
  CHECK(other.dims.latent == cfg.dims.latent);
  CHECK(other.dims.hidden == cfg.dims.hidden);
  CHECK(other.seed == 77);
  CHECK(other.n_sims == 250);
  CHECK(other.quantiles == cfg.quantiles);
  CHECK(other.target_col == cfg.target_col);
  CHECK(other.covariate_cols == cfg.covariate_cols);
  CHECK(other.lstm_hidden == cfg.lstm_hidden);

  // rendering the re-parsed config reproduces the same snapshot body
  other.profile = cfg.profile;
  CHECK(render_config(other) == render_config(cfg));
}

TEST_CASE("validate_config") {
  auto cfg = profile_config("synthetic");
  const std::size_t rows = static_cast<std::size_t>(
      cfg.split.n_train + cfg.split.n_val + cfg.split.n_cond + cfg.split.n_pred);
  CHECK_NOTHROW(validate_config(cfg, rows));
  CHECK_THROWS_AS(validate_config(cfg, rows - 1), ConfigError);

  auto bad = cfg;
  bad.dims.latent = 0;
  CHECK_THROWS_WITH_AS(validate_config(bad, rows),
                       doctest::Contains("model.z"), ConfigError);
  bad = cfg;
  bad.split.seq_len = 0;
  CHECK_THROWS_AS(validate_config(bad, rows), ConfigError);
  bad = cfg;
  bad.n_sims = 0;
  CHECK_THROWS_AS(validate_config(bad, rows), ConfigError);
}

TEST_CASE("load_dataset") {
  auto cfg = profile_config("synthetic");
  auto ds = load_dataset(cfg);
  CHECK(ds.size() == static_cast<std::size_t>(cfg.split.n_train +
                                              cfg.split.n_val +
                                              cfg.split.n_cond +
                                              cfg.split.n_pred));
  CHECK(ds.covariate_dim() == 2);
  auto again = load_dataset(cfg);
  CHECK(ds.y == again.y);  // generator seeded by data_seed

  // non-synthetic profiles require a dataset path
  auto opt = profile_config("options");
  CHECK_THROWS_WITH_AS(load_dataset(opt), doctest::Contains("data.path"),
                       ConfigError);
}
