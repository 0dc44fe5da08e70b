// SPDX-License-Identifier: Apache-2.0
//
// Static SVG line chart for forecasts: observed history, mean forecast, and
// a shaded band between the lowest and highest exported quantiles.

#pragma once

#include <string>
#include <vector>

#include "sgru/forecast.hpp"

namespace sgru {

void write_forecast_svg(const std::string& path,
                        const std::vector<double>& history,
                        const ForecastResult& forecast);

}  // namespace sgru
