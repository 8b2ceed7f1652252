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

#ifndef SITK_SVG_H_
#define SITK_SVG_H_

#include <string>
#include <utility>
#include <vector>

namespace sitk {

// Minimal fixed-size (640x480) SVG charts. Output depends only on the
// arguments, so identical input gives identical bytes.

struct ChartLabels {
  std::string title;
  std::string x_label;
  std::string y_label;
};

// One bar per (label, value); values must be >= 0.
std::string SvgBarChart(const std::vector<std::pair<std::string, double>> &bars,
                        const ChartLabels &labels);

// Markers joined by a line in the given order. `point_labels` is either
// empty or one label per point (drawn next to the marker). Every marker is a
// <circle class="marker">.
std::string SvgLinePlot(const std::vector<std::pair<double, double>> &points,
                        const std::vector<std::string> &point_labels,
                        const ChartLabels &labels);

}  // namespace sitk

#endif  // SITK_SVG_H_
