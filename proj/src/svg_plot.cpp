// SPDX-License-Identifier: Apache-2.0

#include "sgru/svg_plot.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>

namespace sgru {

namespace {

constexpr double kWidth = 900.0;
constexpr double kHeight = 420.0;
constexpr double kMargin = 40.0;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

}  // namespace

void write_forecast_svg(const std::string& path,
                        const std::vector<double>& history,
                        const ForecastResult& forecast) {
  const std::size_t n_hist = history.size();
  const std::size_t n_total = n_hist + forecast.mean.size();
  if (n_total < 2) throw std::invalid_argument("write_forecast_svg: nothing to plot");

  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  auto widen = [&](const std::vector<double>& v) {
    for (double x : v) {
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
  };
  widen(history);
  widen(forecast.mean);
  for (const auto& q : forecast.quantiles) widen(q);
  if (hi <= lo) hi = lo + 1.0;

  auto sx = [&](std::size_t i) {
    return kMargin + (kWidth - 2 * kMargin) * static_cast<double>(i) /
                         static_cast<double>(n_total - 1);
  };
  auto sy = [&](double v) {
    return kHeight - kMargin - (kHeight - 2 * kMargin) * (v - lo) / (hi - lo);
  };
  auto points = [&](const std::vector<double>& v, std::size_t offset) {
    std::string p;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!p.empty()) p += ' ';
      p += fmt(sx(offset + i)) + "," + fmt(sy(v[i]));
    }
    return p;
  };

  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write SVG: " + path);
  f << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  f << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
    << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
    << kHeight << "\">\n";
  f << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // shaded band between the outermost quantiles
  if (forecast.quantiles.size() >= 2) {
    const auto& low = forecast.quantiles.front();
    const auto& high = forecast.quantiles.back();
    std::string poly = points(low, n_hist);
    for (std::size_t i = high.size(); i-- > 0;)
      poly += " " + fmt(sx(n_hist + i)) + "," + fmt(sy(high[i]));
    f << "<polygon points=\"" << poly
      << "\" fill=\"#a6c8ff\" fill-opacity=\"0.45\" stroke=\"none\"/>\n";
  }

  if (!history.empty())
    f << "<polyline points=\"" << points(history, 0)
      << "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1.5\"/>\n";
  f << "<polyline points=\"" << points(forecast.mean, n_hist)
    << "\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"1.5\"/>\n";
  for (const auto& q : forecast.quantiles)
    f << "<polyline points=\"" << points(q, n_hist)
      << "\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"0.8\" "
         "stroke-dasharray=\"4 3\"/>\n";

  f << "</svg>\n";
}

}  // namespace sgru
