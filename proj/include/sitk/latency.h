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

#ifndef SITK_LATENCY_H_
#define SITK_LATENCY_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sitk/simulator.h"

namespace sitk {

enum class LatencyUnit { kTokens, kMs };
std::string_view LatencyUnitName(LatencyUnit unit);
LatencyUnit ParseLatencyUnit(std::string_view name);
LatencyUnit UnitOf(const ReadWriteTrace &trace);

// Average Lagging. With |x| source units, |y| target tokens and
// tau = first i with d_i == |x| (|y| if none):
//   AL = 1/tau * sum_{i<=tau} (d_i - (i-1) * |x| / |y|)
// Speech traces measure d_i and |x| in ms (cumulative unit durations).
// Throws DataError on a trace without WRITEs.
double AverageLagging(const ReadWriteTrace &trace);

// AL with |y| replaced by max(|y|, ref_len). Throws DataError when
// ref_len < 1 or the trace has no WRITEs.
double LengthAdaptiveAverageLagging(const ReadWriteTrace &trace, int ref_len);

// Average Token Delay on a shared timeline: READ j costs its unit cost (1 in
// text, cost_ms in speech), each WRITE costs write_cost. Token t is paired
// with source unit a(t) = min(a(t-1) + 1, r(t)), r(t) = units read before it:
//   ATD = 1/|y| * sum_t (end(y_t) - end(x_a(t)))
double AverageTokenDelay(const ReadWriteTrace &trace, double write_cost);

// 1 for text, 0 ms for speech.
double DefaultWriteCost(SourceMode mode);

struct LatencyReport {
  std::string trace_id;
  int k = 0;
  double al = 0;
  double laal = 0;
  double atd = 0;
  LatencyUnit unit = LatencyUnit::kTokens;
  bool operator==(const LatencyReport &) const = default;
};

// All three metrics for one trace. trace_id defaults to "<utterance>@k<k>".
LatencyReport EvaluateLatency(const ReadWriteTrace &trace, int ref_len,
                              std::optional<double> write_cost = std::nullopt,
                              std::optional<std::string> trace_id = std::nullopt);

// Arithmetic mean of each metric. Throws DataError on an empty list or
// mixed units. The result keeps k when all inputs agree (else 0) and gets
// trace_id "mean".
LatencyReport Aggregate(const std::vector<LatencyReport> &reports);

nlohmann::json ToJson(const LatencyReport &report);
LatencyReport LatencyReportFromJson(const nlohmann::json &j);
void SaveLatencyReports(const std::vector<LatencyReport> &reports,
                        const std::filesystem::path &path);
std::vector<LatencyReport> LoadLatencyReports(const std::filesystem::path &path);

}  // namespace sitk

#endif  // SITK_LATENCY_H_
