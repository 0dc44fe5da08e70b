// SPDX-License-Identifier: Apache-2.0
//
// Evaluation metrics: rmse normalized by the magnitude of the true-series
// mean, reported cumulatively at horizon cutoffs.

#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sgru {

class MetricError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double rmse(std::span<const double> y_true, std::span<const double> y_pred);

// sqrt(mean squared error) / |mean(y_true)|. Throws MetricError when the
// true-series mean is (numerically) zero.
double nrmse(std::span<const double> y_true, std::span<const double> y_pred);

struct MetricValue {
  double value = 0.0;
  bool normalized = true;  // false: fell back to absolute rmse
};

// nrmse with an rmse fallback (flagged) for zero-mean truth.
MetricValue nrmse_or_rmse(std::span<const double> y_true,
                          std::span<const double> y_pred);

struct EvalReport {
  std::vector<int> cutoffs;               // horizon steps, e.g. 5..30
  std::vector<std::string> models;        // row labels
  std::vector<std::vector<double>> values;  // per model, per cutoff
  bool normalized = true;
};

// {5,10,15,20,25,30} clamped to tau; always includes tau itself.
std::vector<int> default_cutoffs(int tau);

// Cumulative nrmse over the first k steps for each cutoff k.
std::vector<double> nrmse_at_cutoffs(std::span<const double> y_true,
                                     std::span<const double> y_pred,
                                     std::span<const int> cutoffs);

}  // namespace sgru
