// Copyright 2026 The gscat Authors
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

#ifndef GSCAT_SVG_HPP
#define GSCAT_SVG_HPP

#include <string>
#include <utility>
#include <vector>

namespace gscat {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotOptions {
  std::string title;
  std::string x_label = "k";
  std::string y_label;
  /// Extra marked positions on the x axis, e.g. {sqrt(3), "sqrt3"}.
  std::vector<std::pair<double, std::string>> marked_ticks;
  int width = 900;
  int height = 540;
};

/// Standalone SVG line plot with axes, tick labels, and a legend.
/// Throws std::invalid_argument for empty input or series with fewer than
/// two points (degenerate range); a flat y range is widened to [0, 1].
std::string render_plot_svg(const std::vector<PlotSeries>& series,
                            const PlotOptions& options = {});

void emit_plot_svg(const std::vector<PlotSeries>& series,
                   const std::string& path, const PlotOptions& options = {});

}  // namespace gscat

#endif  // GSCAT_SVG_HPP
