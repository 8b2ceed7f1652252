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

#include "sitk/latency.h"

#include <cmath>

#include "sitk/corpus_inl.h"
#include "sitk/io.h"

namespace sitk {
namespace {

void RequireWrites(const ReadWriteTrace &trace) {
  if (trace.delays.empty()) {
    throw DataError("trace " + trace.utterance_id + " has no WRITE actions");
  }
  if (trace.source_total_units < 1) {
    throw DataError("trace " + trace.utterance_id + " has no source units");
  }
}

// Elapsed source time after reading `units` units.
std::vector<double> Cumulative(const ReadWriteTrace &trace) {
  std::vector<double> cum(trace.source_total_units + 1, 0.0);
  for (int j = 0; j < trace.source_total_units; ++j) {
    const double cost = trace.mode == SourceMode::kSpeech ? trace.unit_costs_ms.at(j) : 1.0;
    cum[j + 1] = cum[j] + cost;
  }
  return cum;
}

double Lagging(const ReadWriteTrace &trace, size_t target_len) {
  RequireWrites(trace);
  const std::vector<double> cum = Cumulative(trace);
  const double source_len = cum.back();
  const double len = static_cast<double>(target_len);
  const int total = trace.source_total_units;
  double sum = 0;
  size_t tau = 0;
  for (size_t i = 0; i < trace.delays.size(); ++i) {
    // (i - 1) / gamma with gamma = len / source_len, written so the same
    // rounding applies to AL and LAAL.
    sum += cum[trace.delays[i]] - static_cast<double>(i) * source_len / len;
    tau = i + 1;
    if (trace.delays[i] == total) break;
  }
  return sum / static_cast<double>(tau);
}

}  // namespace

std::string_view LatencyUnitName(LatencyUnit unit) {
  return unit == LatencyUnit::kTokens ? "tokens" : "ms";
}

LatencyUnit ParseLatencyUnit(std::string_view name) {
  if (name == "tokens") return LatencyUnit::kTokens;
  if (name == "ms") return LatencyUnit::kMs;
  throw DataError("unknown latency unit \"" + std::string(name) + "\"");
}

LatencyUnit UnitOf(const ReadWriteTrace &trace) {
  return trace.mode == SourceMode::kSpeech ? LatencyUnit::kMs : LatencyUnit::kTokens;
}

double AverageLagging(const ReadWriteTrace &trace) {
  return Lagging(trace, trace.delays.size());
}

double LengthAdaptiveAverageLagging(const ReadWriteTrace &trace, int ref_len) {
  if (ref_len < 1) throw DataError("reference length must be >= 1");
  return Lagging(trace, std::max(trace.delays.size(), static_cast<size_t>(ref_len)));
}

double DefaultWriteCost(SourceMode mode) {
  return mode == SourceMode::kSpeech ? 0.0 : 1.0;
}

double AverageTokenDelay(const ReadWriteTrace &trace, double write_cost) {
  RequireWrites(trace);
  if (!(write_cost >= 0)) throw DataError("write_cost must be >= 0");
  std::vector<double> read_end(trace.source_total_units + 1, 0.0);
  double clock = 0;
  int reads = 0;
  int a = 0;
  size_t t = 0;
  double sum = 0;
  for (const auto &action : trace.actions) {
    if (action.type == ActionType::kRead) {
      clock += trace.mode == SourceMode::kSpeech ? trace.unit_costs_ms.at(reads) : 1.0;
      read_end[++reads] = clock;
    } else {
      clock += write_cost;
      a = std::min(a + 1, reads);
      sum += clock - read_end[a];
      ++t;
    }
  }
  if (t != trace.delays.size()) throw DataError("trace actions disagree with delays");
  return sum / static_cast<double>(t);
}

LatencyReport EvaluateLatency(const ReadWriteTrace &trace, int ref_len,
                              std::optional<double> write_cost,
                              std::optional<std::string> trace_id) {
  LatencyReport r;
  r.trace_id = trace_id.value_or(trace.utterance_id + "@k" + std::to_string(trace.k));
  r.k = trace.k;
  r.unit = UnitOf(trace);
  r.al = AverageLagging(trace);
  r.laal = LengthAdaptiveAverageLagging(trace, ref_len);
  r.atd = AverageTokenDelay(trace, write_cost.value_or(DefaultWriteCost(trace.mode)));
  return r;
}

LatencyReport Aggregate(const std::vector<LatencyReport> &reports) {
  if (reports.empty()) throw DataError("cannot aggregate zero latency reports");
  LatencyReport out;
  out.trace_id = "mean";
  out.unit = reports.front().unit;
  out.k = reports.front().k;
  for (const auto &r : reports) {
    if (r.unit != out.unit) throw DataError("cannot aggregate reports with mixed units");
    if (r.k != out.k) out.k = 0;
    out.al += r.al;
    out.laal += r.laal;
    out.atd += r.atd;
  }
  const double n = static_cast<double>(reports.size());
  out.al /= n;
  out.laal /= n;
  out.atd /= n;
  if (reports.size() == 1) out.trace_id = reports.front().trace_id;
  return out;
}

nlohmann::json ToJson(const LatencyReport &r) {
  return {{"trace_id", r.trace_id}, {"k", r.k},     {"al", r.al},
          {"laal", r.laal},         {"atd", r.atd}, {"unit", LatencyUnitName(r.unit)}};
}

LatencyReport LatencyReportFromJson(const nlohmann::json &j) {
  LatencyReport r;
  r.trace_id = j.at("trace_id").get<std::string>();
  r.k = j.at("k").get<int>();
  r.al = j.at("al").get<double>();
  r.laal = j.at("laal").get<double>();
  r.atd = j.at("atd").get<double>();
  r.unit = ParseLatencyUnit(j.at("unit").get<std::string>());
  return r;
}

void SaveLatencyReports(const std::vector<LatencyReport> &reports,
                        const std::filesystem::path &path) {
  std::string out;
  for (const auto &r : reports) out += ToJson(r).dump() + "\n";
  WriteFileAtomic(path, out);
}

std::vector<LatencyReport> LoadLatencyReports(const std::filesystem::path &path) {
  std::ifstream in = OpenInput(path);
  std::vector<LatencyReport> out;
  ForEachJsonLine(in, path.string(),
                  [&](int, const nlohmann::json &j) { out.push_back(LatencyReportFromJson(j)); });
  return out;
}

}  // namespace sitk
