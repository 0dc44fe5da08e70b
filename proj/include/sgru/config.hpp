// SPDX-License-Identifier: Apache-2.0
//
// Run configuration: bundled dataset profiles, INI-style config file
// parsing, and the resolved-config snapshot. Precedence: profile defaults,
// then config file, then command-line flags.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sgru/data_io.hpp"
#include "sgru/forecast.hpp"
#include "sgru/model.hpp"

namespace sgru {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string profile = "synthetic";

  // [data]
  std::string dataset_path;  // empty with the synthetic profile: generated
  std::string target_col = "y";
  std::vector<std::string> covariate_cols;
  std::uint64_t data_seed = 12345;  // synthetic generator only

  // [split]
  SplitPlan split;

  // [model] (dims.input is resolved from the loaded covariates)
  ModelDims dims;

  // [train]
  int epochs = 300;
  double lr = 1e-3;
  int patience = 30;
  double grad_clip = 10.0;
  std::uint64_t seed = 0;

  // [forecast]
  int n_sims = 500;
  CondLatent cond_latent = CondLatent::kPosterior;
  std::vector<double> quantiles{0.05, 0.5, 0.95};

  // [baselines]
  bool run_lstm = true;
  bool run_mlp = true;
  int lstm_hidden = 32;
  int lstm_epochs = 300;
  int mlp_hidden_layers = 2;
  int mlp_width = 5;
  int mlp_epochs = 400;
};

// options | pm25 | traffic | chickenpox | synthetic
RunConfig profile_config(const std::string& name);
std::vector<std::string> known_profiles();

// Overlays key/value pairs from an INI-style file onto cfg. Unknown keys
// are errors naming the field.
void apply_config_file(RunConfig& cfg, const std::string& path);

// Full resolved snapshot in the same file format.
std::string render_config(const RunConfig& cfg);

// Validates split/model sizes against the dataset length.
void validate_config(const RunConfig& cfg, std::size_t data_rows);

// Loads the configured CSV, or generates the synthetic series sized to the
// split plan.
SeriesDataset load_dataset(const RunConfig& cfg);

}  // namespace sgru
