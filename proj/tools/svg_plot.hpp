// Copyright 2026 The fcqst Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fcqst/noise_mc.hpp"

namespace fcqst::cli {

/// Scatter of the data with the fitted curve on top. Power-law fits are drawn
/// on log-log axes, linear fits on linear axes.
std::string render_fit_svg(const std::vector<std::pair<double, double>>& points, const FitResult& fit,
                           const std::string& x_label, const std::string& y_label);

}  // namespace fcqst::cli
