// SPDX-License-Identifier: Apache-2.0
//
// Joint optimization of the generative and inference parameters on the
// negative ELBO with Adam, plus model checkpointing.

#pragma once

#include <cstdint>
#include <string>

#include "sgru/data_io.hpp"
#include "sgru/model.hpp"

namespace sgru {

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

class Adam {
 public:
  explicit Adam(std::vector<Tensor> params, AdamConfig cfg = {});

  // Bias-corrected update from the gradients currently on the parameters.
  void step();
  void zero_grad();
  std::int64_t steps() const { return t_; }

 private:
  std::vector<Tensor> params_;
  std::vector<std::vector<double>> m_, v_;
  AdamConfig cfg_;
  std::int64_t t_ = 0;
};

double global_grad_norm(std::span<const Tensor> params);
// Rescales gradients in place when their global norm exceeds max_norm.
void clip_grad_norm(std::span<const Tensor> params, double max_norm);

struct TrainConfig {
  int epochs = 300;
  double lr = 1e-3;
  int patience = 30;       // early stop on validation ELBO
  double grad_clip = 10.0; // global norm
  SplitPlan split;
  ModelDims dims;
};

struct TrainReport {
  std::vector<double> train_elbo;  // per epoch, summed over subsequences
  std::vector<double> val_elbo;    // per epoch
  int best_epoch = -1;             // 0-based
  double wall_seconds = 0.0;
};

struct TrainedModel {
  GenerativeParams gen;
  InferenceParams inf;
  TrainReport report;
};

// Trains on the (already standardized) dataset. State is carried across
// subsequence boundaries within an epoch but detached from the tape.
// Returns the parameters of the best validation epoch.
TrainedModel train(const SeriesDataset& scaled, const TrainConfig& cfg,
                   std::uint64_t seed);

// ---- checkpointing ----------------------------------------------------------

struct Checkpoint {
  ModelDims dims;
  Scaler scaler;
  GenerativeParams gen;
  InferenceParams inf;
};

class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Binary container: magic, format version, JSON header (dims + scaler +
// array shapes), then raw little-endian float64 parameter arrays. A
// save/load round trip restores parameter values bit-exactly.
void save_checkpoint(const GenerativeParams& gen, const InferenceParams& inf,
                     const Scaler& scaler, const std::string& path);
Checkpoint load_checkpoint(const std::string& path);

}  // namespace sgru
