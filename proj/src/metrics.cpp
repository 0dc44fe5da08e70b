// SPDX-License-Identifier: Apache-2.0

#include "sgru/metrics.hpp"

#include <cmath>

namespace sgru {

namespace {

void check_lengths(std::span<const double> y_true,
                   std::span<const double> y_pred) {
  if (y_true.empty() || y_true.size() != y_pred.size())
    throw MetricError("metric: series must be non-empty and equal length (" +
                      std::to_string(y_true.size()) + " vs " +
                      std::to_string(y_pred.size()) + ")");
}

double mean_of(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m += x;
  return m / static_cast<double>(v.size());
}

}  // namespace

double rmse(std::span<const double> y_true, std::span<const double> y_pred) {
  check_lengths(y_true, y_pred);
  double sq = 0.0;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    const double d = y_true[i] - y_pred[i];
    sq += d * d;
  }
  return std::sqrt(sq / static_cast<double>(y_true.size()));
}

double nrmse(std::span<const double> y_true, std::span<const double> y_pred) {
  const double r = rmse(y_true, y_pred);
  const double m = std::abs(mean_of(y_true));
  if (m < 1e-12)
    throw MetricError("nrmse: undefined for zero-mean true series");
  return r / m;
}

MetricValue nrmse_or_rmse(std::span<const double> y_true,
                          std::span<const double> y_pred) {
  try {
    return {nrmse(y_true, y_pred), true};
  } catch (const MetricError&) {
    return {rmse(y_true, y_pred), false};
  }
}

std::vector<int> default_cutoffs(int tau) {
  if (tau < 1) throw MetricError("default_cutoffs: tau must be >= 1");
  std::vector<int> cut;
  for (int k = 5; k <= tau; k += 5) cut.push_back(k);
  if (cut.empty() || cut.back() != tau) cut.push_back(tau);
  return cut;
}

std::vector<double> nrmse_at_cutoffs(std::span<const double> y_true,
                                     std::span<const double> y_pred,
                                     std::span<const int> cutoffs) {
  check_lengths(y_true, y_pred);
  std::vector<double> out;
  out.reserve(cutoffs.size());
  for (int k : cutoffs) {
    if (k < 1 || static_cast<std::size_t>(k) > y_true.size())
      throw MetricError("nrmse_at_cutoffs: cutoff " + std::to_string(k) +
                        " exceeds horizon " + std::to_string(y_true.size()));
    out.push_back(nrmse_or_rmse(y_true.first(static_cast<std::size_t>(k)),
                                y_pred.first(static_cast<std::size_t>(k)))
                      .value);
  }
  return out;
}

}  // namespace sgru
