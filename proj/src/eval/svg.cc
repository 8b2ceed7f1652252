// Copyright 2026 The SITK Authors.
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

#include "sitk/svg.h"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "sitk/error.h"

namespace sitk {
namespace {

constexpr double kWidth = 640, kHeight = 480;
constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 60;
constexpr int kTicks = 5;

std::string Num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  std::string s = buf;
  if (s == "-0.00") s = "0.00";
  return s;
}

std::string Tick(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  std::string s = buf;
  if (s == "-0") s = "0";
  return s;
}

std::string Escape(const std::string &text) {
  std::string out;
  for (char c : text) {
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

struct Range {
  double lo, hi;
  double Map(double v, double from, double to) const {
    return from + (v - lo) / (hi - lo) * (to - from);
  }
};

// Pads a degenerate or empty range so a single point still plots.
Range MakeRange(double lo, double hi) {
  if (!(hi > lo)) {
    const double pad = std::max(1.0, std::abs(lo) * 0.1);
    return {lo - pad, lo + pad};
  }
  const double pad = (hi - lo) * 0.05;
  return {lo - pad, hi + pad};
}

std::string Header(const ChartLabels &labels) {
  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
       "viewBox=\"0 0 640 480\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s += "<rect x=\"0\" y=\"0\" width=\"640\" height=\"480\" fill=\"white\"/>\n";
  s += "<text x=\"320\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" +
       Escape(labels.title) + "</text>\n";
  s += "<line x1=\"" + Num(kLeft) + "\" y1=\"" + Num(kHeight - kBottom) + "\" x2=\"" +
       Num(kWidth - kRight) + "\" y2=\"" + Num(kHeight - kBottom) + "\" stroke=\"black\"/>\n";
  s += "<line x1=\"" + Num(kLeft) + "\" y1=\"" + Num(kTop) + "\" x2=\"" + Num(kLeft) +
       "\" y2=\"" + Num(kHeight - kBottom) + "\" stroke=\"black\"/>\n";
  s += "<text x=\"" + Num((kLeft + kWidth - kRight) / 2) + "\" y=\"" + Num(kHeight - 18) +
       "\" text-anchor=\"middle\">" + Escape(labels.x_label) + "</text>\n";
  s += "<text x=\"18\" y=\"" + Num((kTop + kHeight - kBottom) / 2) +
       "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
       Num((kTop + kHeight - kBottom) / 2) + ")\">" + Escape(labels.y_label) + "</text>\n";
  return s;
}

std::string YTicks(const Range &y) {
  std::string s;
  for (int i = 0; i <= kTicks; ++i) {
    const double v = y.lo + (y.hi - y.lo) * i / kTicks;
    const double py = y.Map(v, kHeight - kBottom, kTop);
    s += "<line x1=\"" + Num(kLeft - 4) + "\" y1=\"" + Num(py) + "\" x2=\"" + Num(kLeft) +
         "\" y2=\"" + Num(py) + "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + Num(kLeft - 6) + "\" y=\"" + Num(py + 4) +
         "\" text-anchor=\"end\">" + Tick(v) + "</text>\n";
  }
  return s;
}

}  // namespace

std::string SvgBarChart(const std::vector<std::pair<std::string, double>> &bars,
                        const ChartLabels &labels) {
  double top = 0;
  for (const auto &[name, value] : bars) {
    if (!(value >= 0)) throw DataError("bar values must be >= 0");
    top = std::max(top, value);
  }
  const Range y{0, top > 0 ? top * 1.05 : 1.0};
  std::string s = Header(labels) + YTicks(y);
  const double plot_w = kWidth - kLeft - kRight;
  const double slot = bars.empty() ? plot_w : plot_w / static_cast<double>(bars.size());
  for (size_t i = 0; i < bars.size(); ++i) {
    const double x = kLeft + slot * static_cast<double>(i);
    const double py = y.Map(bars[i].second, kHeight - kBottom, kTop);
    s += "<rect class=\"bar\" x=\"" + Num(x + slot * 0.1) + "\" y=\"" + Num(py) +
         "\" width=\"" + Num(slot * 0.8) + "\" height=\"" + Num(kHeight - kBottom - py) +
         "\" fill=\"steelblue\"/>\n";
    s += "<text x=\"" + Num(x + slot / 2) + "\" y=\"" + Num(kHeight - kBottom + 16) +
         "\" text-anchor=\"middle\">" + Escape(bars[i].first) + "</text>\n";
  }
  s += "</svg>\n";
  return s;
}

std::string SvgLinePlot(const std::vector<std::pair<double, double>> &points,
                        const std::vector<std::string> &point_labels,
                        const ChartLabels &labels) {
  if (!point_labels.empty() && point_labels.size() != points.size()) {
    throw DataError("point labels do not match points");
  }
  double xlo = 0, xhi = 0, ylo = 0, yhi = 0;
  for (size_t i = 0; i < points.size(); ++i) {
    const auto [x, y] = points[i];
    if (!std::isfinite(x) || !std::isfinite(y)) throw DataError("non-finite point");
    if (i == 0) {
      xlo = xhi = x;
      ylo = yhi = y;
    }
    xlo = std::min(xlo, x);
    xhi = std::max(xhi, x);
    ylo = std::min(ylo, y);
    yhi = std::max(yhi, y);
  }
  const Range xr = MakeRange(xlo, xhi), yr = MakeRange(ylo, yhi);
  std::string s = Header(labels) + YTicks(yr);
  for (int i = 0; i <= kTicks; ++i) {
    const double v = xr.lo + (xr.hi - xr.lo) * i / kTicks;
    const double px = xr.Map(v, kLeft, kWidth - kRight);
    s += "<line x1=\"" + Num(px) + "\" y1=\"" + Num(kHeight - kBottom) + "\" x2=\"" +
         Num(px) + "\" y2=\"" + Num(kHeight - kBottom + 4) + "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + Num(px) + "\" y=\"" + Num(kHeight - kBottom + 16) +
         "\" text-anchor=\"middle\">" + Tick(v) + "</text>\n";
  }
  std::vector<std::pair<std::string, std::string>> xy;
  for (const auto &[x, y] : points) {
    xy.emplace_back(Num(xr.Map(x, kLeft, kWidth - kRight)),
                    Num(yr.Map(y, kHeight - kBottom, kTop)));
  }
  if (xy.size() > 1) {
    s += "<polyline fill=\"none\" stroke=\"steelblue\" points=\"";
    for (size_t i = 0; i < xy.size(); ++i) {
      s += (i ? " " : "") + xy[i].first + "," + xy[i].second;
    }
    s += "\"/>\n";
  }
  for (size_t i = 0; i < xy.size(); ++i) {
    s += "<circle class=\"marker\" cx=\"" + xy[i].first + "\" cy=\"" + xy[i].second +
         "\" r=\"4\" fill=\"steelblue\"/>\n";
    if (!point_labels.empty()) {
      s += "<text x=\"" + xy[i].first + "\" y=\"" + xy[i].second +
           "\" dx=\"6\" dy=\"-6\" font-size=\"10\">" + Escape(point_labels[i]) + "</text>\n";
    }
  }
  s += "</svg>\n";
  return s;
}

}  // namespace sitk
