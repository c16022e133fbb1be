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

#include "gscat/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "gscat/io.hpp"

namespace gscat {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                          "#9467bd", "#ff7f0e", "#8c564b"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

/// Round tick positions covering [lo, hi] at a 1/2/5 step.
std::vector<double> nice_ticks(double lo, double hi, int target = 6) {
  const double span = hi - lo;
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (mag * m >= raw) {
      step = mag * m;
      break;
    }
  }
  std::vector<double> ticks;
  double t = std::ceil(lo / step) * step;
  for (; t <= hi + 1e-12 * span; t += step) {
    ticks.push_back(std::abs(t) < 1e-12 * span ? 0.0 : t);
  }
  return ticks;
}

}  // namespace

std::string render_plot_svg(const std::vector<PlotSeries>& series,
                            const PlotOptions& options) {
  if (series.empty()) {
    throw std::invalid_argument("plot: no series given");
  }
  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
  double y_lo = x_lo, y_hi = -x_lo;
  for (const auto& s : series) {
    if (s.x.size() != s.y.size()) {
      throw std::invalid_argument("plot: series '" + s.label +
                                  "' has mismatched x/y lengths");
    }
    if (s.x.size() < 2) {
      throw std::invalid_argument("plot: series '" + s.label +
                                  "' has a degenerate range (need >= 2 points)");
    }
    for (double v : s.x) {
      x_lo = std::min(x_lo, v);
      x_hi = std::max(x_hi, v);
    }
    for (double v : s.y) {
      y_lo = std::min(y_lo, v);
      y_hi = std::max(y_hi, v);
    }
  }
  if (!(x_hi > x_lo)) {
    throw std::invalid_argument("plot: degenerate x range");
  }
  if (!(y_hi > y_lo)) {
    // flat data: default the value axis to the unit interval
    y_lo = std::min(0.0, y_lo);
    y_hi = std::max(1.0, y_hi);
  }

  const double w = options.width, h = options.height;
  const double ml = 64, mr = 20, mt = options.title.empty() ? 20 : 44,
               mb = 52;
  const double pw = w - ml - mr, ph = h - mt - mb;
  auto px = [&](double x) { return ml + (x - x_lo) / (x_hi - x_lo) * pw; };
  auto py = [&](double y) {
    return mt + (1.0 - (y - y_lo) / (y_hi - y_lo)) * ph;
  };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
      << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << " " << h
      << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  if (!options.title.empty()) {
    svg << "<text x=\"" << w / 2 << "\" y=\"26\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"16\">"
        << xml_escape(options.title) << "</text>\n";
  }

  // grid and tick labels
  svg << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
  for (double t : nice_ticks(x_lo, x_hi)) {
    const double x = px(t);
    svg << "<line x1=\"" << fmt(x) << "\" y1=\"" << fmt(mt) << "\" x2=\""
        << fmt(x) << "\" y2=\"" << fmt(mt + ph)
        << "\" stroke=\"#e0e0e0\" stroke-width=\"1\"/>\n"
        << "<line x1=\"" << fmt(x) << "\" y1=\"" << fmt(mt + ph) << "\" x2=\""
        << fmt(x) << "\" y2=\"" << fmt(mt + ph + 5)
        << "\" stroke=\"#333\"/>\n"
        << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(mt + ph + 18)
        << "\" text-anchor=\"middle\">" << fmt(t) << "</text>\n";
  }
  for (double t : nice_ticks(y_lo, y_hi)) {
    const double y = py(t);
    svg << "<line x1=\"" << fmt(ml) << "\" y1=\"" << fmt(y) << "\" x2=\""
        << fmt(ml + pw) << "\" y2=\"" << fmt(y)
        << "\" stroke=\"#e0e0e0\" stroke-width=\"1\"/>\n"
        << "<line x1=\"" << fmt(ml - 5) << "\" y1=\"" << fmt(y) << "\" x2=\""
        << fmt(ml) << "\" y2=\"" << fmt(y) << "\" stroke=\"#333\"/>\n"
        << "<text x=\"" << fmt(ml - 8) << "\" y=\"" << fmt(y + 4)
        << "\" text-anchor=\"end\">" << fmt(t) << "</text>\n";
  }
  svg << "</g>\n";

  // user-marked positions (e.g. predicted resonances)
  for (const auto& [pos, label] : options.marked_ticks) {
    if (pos < x_lo || pos > x_hi) continue;
    const double x = px(pos);
    svg << "<line x1=\"" << fmt(x) << "\" y1=\"" << fmt(mt) << "\" x2=\""
        << fmt(x) << "\" y2=\"" << fmt(mt + ph)
        << "\" stroke=\"#999\" stroke-dasharray=\"5,3\"/>\n"
        << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(mt + ph + 32)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\" fill=\"#555\">"
        << xml_escape(label) << "</text>\n";
  }

  // frame
  svg << "<rect x=\"" << fmt(ml) << "\" y=\"" << fmt(mt) << "\" width=\""
      << fmt(pw) << "\" height=\"" << fmt(ph)
      << "\" fill=\"none\" stroke=\"#000\"/>\n";

  // axis labels
  svg << "<text x=\"" << fmt(ml + pw / 2) << "\" y=\"" << fmt(h - 8)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\">"
      << xml_escape(options.x_label) << "</text>\n";
  if (!options.y_label.empty()) {
    svg << "<text x=\"14\" y=\"" << fmt(mt + ph / 2)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"13\" transform=\"rotate(-90 14 "
        << fmt(mt + ph / 2) << ")\">" << xml_escape(options.y_label)
        << "</text>\n";
  }

  // series
  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % (sizeof(kPalette) / sizeof(*kPalette))];
    svg << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < series[s].x.size(); ++i) {
      if (i) svg << ' ';
      svg << fmt(px(series[s].x[i])) << ',' << fmt(py(series[s].y[i]));
    }
    svg << "\"/>\n";
  }

  // legend
  svg << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  const double lx = ml + pw - 150, ly0 = mt + 12;
  svg << "<rect x=\"" << fmt(lx - 8) << "\" y=\"" << fmt(ly0 - 12)
      << "\" width=\"150\" height=\""
      << fmt(series.size() * 18.0 + 8) << "\" fill=\"white\" "
         "fill-opacity=\"0.85\" stroke=\"#ccc\"/>\n";
  for (std::size_t s = 0; s < series.size(); ++s) {
    const double ly = ly0 + 18.0 * s;
    const char* color = kPalette[s % (sizeof(kPalette) / sizeof(*kPalette))];
    svg << "<line x1=\"" << fmt(lx) << "\" y1=\"" << fmt(ly - 4) << "\" x2=\""
        << fmt(lx + 24) << "\" y2=\"" << fmt(ly - 4) << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << fmt(lx + 30) << "\" y=\"" << fmt(ly) << "\">"
        << xml_escape(series[s].label) << "</text>\n";
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

void emit_plot_svg(const std::vector<PlotSeries>& series,
                   const std::string& path, const PlotOptions& options) {
  write_file_atomic(path, render_plot_svg(series, options));
}

}  // namespace gscat
