// SPDX-License-Identifier: Apache-2.0
//
// CSV ingestion, train-span z-score standardization, and the windowing
// protocol: train span cut into non-overlapping fixed-length subsequences,
// followed by contiguous validation, conditioning and prediction spans.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <stdexcept>

namespace sgru {

class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SeriesDataset {
  // row-major: x[t] is the covariate vector at step t
  std::vector<std::vector<double>> x;
  std::vector<double> y;  // aligned target; prediction-span rows hold truth
  std::vector<std::string> covariate_names;
  std::string target_name;

  std::size_t size() const { return y.size(); }
  std::size_t covariate_dim() const { return x.empty() ? 0 : x[0].size(); }
};

struct Scaler {
  std::vector<double> x_mean, x_std;  // per covariate column
  double y_mean = 0.0, y_std = 1.0;
};

struct SplitPlan {
  int n_train = 0;
  int n_val = 0;
  int n_cond = 0;
  int seq_len = 0;
  int n_pred = 0;  // tau
};

struct Subsequence {
  std::vector<double> y;
  std::vector<std::vector<double>> x;
  std::size_t begin = 0;  // row index in the source dataset
};

struct Span {
  std::vector<double> y;
  std::vector<std::vector<double>> x;
  std::size_t begin = 0;
};

struct Windows {
  std::vector<Subsequence> train;  // temporal order, non-overlapping
  Span val;
  Span cond;
  Span pred;  // y here is held-out truth for evaluation only
};

// Forward-fills blank cells; the first row must be complete. Throws DataError
// on missing columns, non-numeric cells, or an empty file.
SeriesDataset load_csv(const std::string& path, const std::string& target_col,
                       const std::vector<std::string>& covariate_cols);

// z-score using statistics of rows [0, train_len) only.
std::pair<SeriesDataset, Scaler> standardize(const SeriesDataset& ds,
                                             int train_len);

std::vector<double> inverse_transform_y(const Scaler& s,
                                        const std::vector<double>& scaled);

// Applies a previously fitted scaler (e.g. from a checkpoint).
SeriesDataset apply_scaler(const SeriesDataset& ds, const Scaler& s);

Windows window(const SeriesDataset& ds, const SplitPlan& plan);

// Noisy-sine series with sin/cos phase covariates, used by the bundled
// synthetic profile: y_t = sin(2 pi t / 24) + 0.3 * AR(1) noise.
SeriesDataset make_synthetic(std::size_t rows, std::uint64_t seed);

}  // namespace sgru
