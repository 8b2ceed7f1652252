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

#ifndef SITK_REPORT_H_
#define SITK_REPORT_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sitk/config.h"
#include "sitk/corpus.h"
#include "sitk/latency.h"
#include "sitk/quality.h"
#include "sitk/simulator.h"

namespace sitk {

// One latency/quality point of a wait-k sweep.
struct CurvePoint {
  int k = 0;
  double al = 0, laal = 0, atd = 0;
  double bleu = 0, chrf = 0;
  std::optional<std::map<std::string, double>> neural;
  int64_t n_utterances = 0;
  LatencyUnit unit = LatencyUnit::kTokens;

  bool operator==(const CurvePoint &) const = default;
};

nlohmann::json ToJson(const CurvePoint &point);
CurvePoint CurvePointFromJson(const nlohmann::json &j);
void SaveCurvePoints(const std::vector<CurvePoint> &points, const std::filesystem::path &path);
// Throws ParseError on malformed lines and DataError on duplicate k.
std::vector<CurvePoint> LoadCurvePoints(const std::filesystem::path &path);

// "k,al,laal,atd,bleu,chrf" then one row per point, values in shortest
// round-trip form.
std::string CurveCsv(const std::vector<CurvePoint> &points);

// File name -> SVG for every quality/latency pair: bleu_al.svg, bleu_laal.svg,
// bleu_atd.svg, chrf_*.svg, plus <metric>_*.svg for neural metrics present
// on every point. Points are drawn in k order.
std::map<std::string, std::string> CurveSvgs(const std::vector<CurvePoint> &points);

// Stores the mean of `scores` under `metric` on the point with this k.
void AttachNeuralScore(std::vector<CurvePoint> &points, int k, const std::string &metric,
                       const std::vector<double> &scores);

// Simulation run settings, read from a key = value file. Unknown keys are
// rejected.
//   mode = text | speech
//   k_set = 1:35:2
//   unit_frames = 160
//   agent = echo | http://host:port/path
//   agent_timeout_ms = 30000
//   tokenize = ja_char | whitespace
//   write_cost = <number>        (default 1 text, 0 speech)
//   max_target_len = <int>       (default 4 * units + 20)
//   corpus = <path>
//   output_dir = <path>
//   parallelism = <int>
struct RunConfig {
  SourceMode mode = SourceMode::kText;
  std::vector<int> k_set = DefaultKs();
  int unit_frames = kDefaultUnitFrames;
  std::string agent = "echo";
  int agent_timeout_ms = 30000;
  BleuTokenize tokenize = BleuTokenize::kJaChar;
  std::optional<double> write_cost;
  std::optional<int> max_target_len;
  std::filesystem::path corpus;
  std::filesystem::path output_dir = "sim_out";
  int parallelism = 1;

  // Throws DataError.
  void Validate() const;
  static RunConfig FromConfig(const KeyValueConfig &config);
};

AgentFactory MakeAgentFactory(const RunConfig &config);

// Source units for one pair under the configured mode. Speech needs the
// pair's speech reference.
SourceUnits UnitsFor(const SegmentPair &pair, const RunConfig &config);

// Number of reference tokens under the BLEU tokenization, used as the
// reference length for LAAL.
int ReferenceLength(const std::string &reference, BleuTokenize tokenize);

struct SimulationResult {
  std::vector<CurvePoint> points;
  std::map<int, std::vector<ReadWriteTrace>> traces;
  std::vector<LatencyReport> latency;  // per trace, k then utterance order
  std::vector<SweepFailure> failures;
  // Per k, in trace order: texts for an external neural scorer.
  std::map<int, std::vector<std::string>> sources, hypotheses, references;
};

// Sweeps every k, scores each trace against the pair's target_text and
// averages per k. Throws DataError on an empty corpus or a pair without
// target_text.
SimulationResult RunSimulation(const Corpus &corpus, const RunConfig &config,
                               const AgentFactory &factory);

// Writes traces_k<k>.jsonl, neural_k<k>.jsonl, latency.jsonl, points.jsonl and
// curve.csv.
void WriteSimulation(const SimulationResult &result, const std::filesystem::path &dir);

}  // namespace sitk

#endif  // SITK_REPORT_H_
