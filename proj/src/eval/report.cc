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

#include "sitk/report.h"

#include <algorithm>
#include <functional>
#include <set>

#include "sitk/corpus_inl.h"
#include "sitk/io.h"
#include "sitk/svg.h"
#include "sitk/text.h"

namespace sitk {

nlohmann::json ToJson(const CurvePoint &p) {
  nlohmann::json j = {{"k", p.k},       {"al", p.al},     {"laal", p.laal},
                      {"atd", p.atd},   {"bleu", p.bleu}, {"chrf", p.chrf},
                      {"n_utterances", p.n_utterances},   {"unit", LatencyUnitName(p.unit)}};
  if (p.neural) j["neural"] = *p.neural;
  return j;
}

CurvePoint CurvePointFromJson(const nlohmann::json &j) {
  static const std::set<std::string> kKeys = {"k",    "al",   "laal",         "atd",  "bleu",
                                              "chrf", "neural", "n_utterances", "unit"};
  for (const auto &[key, value] : j.items()) {
    if (!kKeys.count(key)) throw DataError("unknown curve point key \"" + key + "\"");
  }
  CurvePoint p;
  p.k = j.at("k").get<int>();
  p.al = j.at("al").get<double>();
  p.laal = j.at("laal").get<double>();
  p.atd = j.at("atd").get<double>();
  p.bleu = j.at("bleu").get<double>();
  p.chrf = j.at("chrf").get<double>();
  p.n_utterances = j.value("n_utterances", int64_t{0});
  p.unit = ParseLatencyUnit(j.value("unit", std::string("tokens")));
  if (j.contains("neural")) p.neural = j.at("neural").get<std::map<std::string, double>>();
  if (p.k < 0) throw DataError("k must be >= 0");
  return p;
}

void SaveCurvePoints(const std::vector<CurvePoint> &points, const std::filesystem::path &path) {
  std::string out;
  for (const auto &p : points) out += ToJson(p).dump() + "\n";
  WriteFileAtomic(path, out);
}

std::vector<CurvePoint> LoadCurvePoints(const std::filesystem::path &path) {
  std::ifstream in = OpenInput(path);
  std::vector<CurvePoint> points;
  std::set<int> ks;
  ForEachJsonLine(in, path.string(), [&](int, const nlohmann::json &j) {
    CurvePoint p = CurvePointFromJson(j);
    if (!ks.insert(p.k).second) throw DataError("duplicate point for k=" + std::to_string(p.k));
    points.push_back(std::move(p));
  });
  return points;
}

std::string CurveCsv(const std::vector<CurvePoint> &points) {
  std::string out = "k,al,laal,atd,bleu,chrf\n";
  for (const auto &p : points) {
    out += std::to_string(p.k) + "," + FormatDouble(p.al) + "," + FormatDouble(p.laal) + "," +
           FormatDouble(p.atd) + "," + FormatDouble(p.bleu) + "," + FormatDouble(p.chrf) + "\n";
  }
  return out;
}

std::map<std::string, std::string> CurveSvgs(const std::vector<CurvePoint> &input) {
  std::vector<CurvePoint> points = input;
  std::stable_sort(points.begin(), points.end(),
                   [](const CurvePoint &a, const CurvePoint &b) { return a.k < b.k; });
  const std::string unit = points.empty() ? "tokens" : std::string(LatencyUnitName(points[0].unit));

  struct Latency {
    const char *name;
    const char *label;
    double CurvePoint::*field;
  };
  const std::vector<Latency> latencies = {{"al", "AL", &CurvePoint::al},
                                          {"laal", "LAAL", &CurvePoint::laal},
                                          {"atd", "ATD", &CurvePoint::atd}};
  std::vector<std::pair<std::string, std::function<double(const CurvePoint &)>>> qualities = {
      {"bleu", [](const CurvePoint &p) { return p.bleu; }},
      {"chrf", [](const CurvePoint &p) { return p.chrf; }}};
  // Neural metrics only when every point has them.
  if (!points.empty() && points[0].neural) {
    for (const auto &[metric, v] : *points[0].neural) {
      bool everywhere = true;
      for (const auto &p : points) everywhere &= p.neural && p.neural->count(metric) > 0;
      if (everywhere) {
        const std::string m = metric;
        qualities.emplace_back(m, [m](const CurvePoint &p) { return p.neural->at(m); });
      }
    }
  }
  const std::map<std::string, std::string> quality_labels = {{"bleu", "BLEU"}, {"chrf", "chrF"}};

  std::vector<std::string> labels;
  for (const auto &p : points) labels.push_back("k=" + std::to_string(p.k));
  std::map<std::string, std::string> out;
  for (const auto &[qname, get] : qualities) {
    auto ql = quality_labels.find(qname);
    const std::string qlabel = ql == quality_labels.end() ? qname : ql->second;
    for (const auto &lat : latencies) {
      std::vector<std::pair<double, double>> xy;
      for (const auto &p : points) xy.emplace_back(p.*(lat.field), get(p));
      out[qname + "_" + lat.name + ".svg"] =
          SvgLinePlot(xy, labels,
                      {qlabel + " vs " + lat.label, std::string(lat.label) + " (" + unit + ")",
                       qlabel});
    }
  }
  return out;
}

void AttachNeuralScore(std::vector<CurvePoint> &points, int k, const std::string &metric,
                       const std::vector<double> &scores) {
  if (scores.empty()) throw DataError("no scores to attach for " + metric);
  double sum = 0;
  for (double s : scores) sum += s;
  for (auto &p : points) {
    if (p.k != k) continue;
    if (!p.neural) p.neural.emplace();
    (*p.neural)[metric] = sum / static_cast<double>(scores.size());
    return;
  }
  throw DataError("no curve point with k=" + std::to_string(k));
}

void RunConfig::Validate() const {
  if (k_set.empty()) throw DataError("k_set is empty");
  std::set<int> seen;
  for (int k : k_set) {
    if (k < 1) throw DataError("k_set values must be >= 1");
    if (!seen.insert(k).second) throw DataError("k_set has duplicate k=" + std::to_string(k));
  }
  if (unit_frames < 1) throw DataError("unit_frames must be >= 1");
  if (agent.empty()) throw DataError("agent is empty");
  if (agent != "echo" && agent.rfind("http://", 0) != 0 && agent.rfind("https://", 0) != 0) {
    throw DataError("agent must be \"echo\" or an http(s) URL");
  }
  if (agent_timeout_ms < 1) throw DataError("agent_timeout_ms must be >= 1");
  if (write_cost && !(*write_cost >= 0)) throw DataError("write_cost must be >= 0");
  if (max_target_len && *max_target_len < 1) throw DataError("max_target_len must be >= 1");
  if (parallelism < 1) throw DataError("parallelism must be >= 1");
}

RunConfig RunConfig::FromConfig(const KeyValueConfig &config) {
  config.RequireKnownKeys({"mode", "k_set", "unit_frames", "agent", "agent_timeout_ms",
                           "tokenize", "write_cost", "max_target_len", "corpus", "output_dir",
                           "parallelism"});
  RunConfig c;
  c.mode = ParseSourceMode(config.GetString("mode", std::string(SourceModeName(c.mode))));
  c.k_set = config.GetIntList("k_set", c.k_set);
  c.unit_frames = static_cast<int>(config.GetInt("unit_frames", c.unit_frames));
  c.agent = config.GetString("agent", c.agent);
  c.agent_timeout_ms = static_cast<int>(config.GetInt("agent_timeout_ms", c.agent_timeout_ms));
  c.tokenize = ParseBleuTokenize(
      config.GetString("tokenize", std::string(BleuTokenizeName(c.tokenize))));
  if (config.Has("write_cost")) c.write_cost = config.GetDouble("write_cost", 0);
  if (config.Has("max_target_len")) {
    c.max_target_len = static_cast<int>(config.GetInt("max_target_len", 0));
  }
  c.corpus = config.GetString("corpus", c.corpus.string());
  c.output_dir = config.GetString("output_dir", c.output_dir.string());
  c.parallelism = static_cast<int>(config.GetInt("parallelism", c.parallelism));
  c.Validate();
  return c;
}

AgentFactory MakeAgentFactory(const RunConfig &config) {
  if (config.agent == "echo") {
    return [](const SourceUnits &) { return std::make_unique<PrefixEchoAgent>(); };
  }
  const std::string url = config.agent;
  const int timeout = config.agent_timeout_ms;
  return [url, timeout](const SourceUnits &) { return std::make_unique<RemoteAgent>(url, timeout); };
}

SourceUnits UnitsFor(const SegmentPair &pair, const RunConfig &config) {
  if (config.mode == SourceMode::kText) return TextUnits(pair.id, pair.source_text);
  if (!pair.speech) throw DataError("pair " + pair.id + " has no speech reference");
  return SegmentSpeech(*pair.speech, config.unit_frames, pair.id);
}

int ReferenceLength(const std::string &reference, BleuTokenize tokenize) {
  const std::u32string text = DecodeUtf8(reference);
  if (tokenize == BleuTokenize::kWhitespace) {
    return static_cast<int>(SplitUnicodeWhitespace(text).size());
  }
  return static_cast<int>(StripWhitespace(text).size());
}

SimulationResult RunSimulation(const Corpus &corpus, const RunConfig &config,
                               const AgentFactory &factory) {
  config.Validate();
  if (corpus.pairs.empty()) throw DataError("corpus " + corpus.name + " is empty");
  std::vector<SourceUnits> utterances;
  std::map<std::string, const SegmentPair *> by_id;
  for (const auto &p : corpus.pairs) {
    if (!p.target_text) throw DataError("pair " + p.id + " has no target_text to score against");
    utterances.push_back(UnitsFor(p, config));
    by_id[p.id] = &p;
  }
  SweepOptions opts;
  opts.parallelism = config.parallelism;
  opts.max_target_len = config.max_target_len;
  SweepResult sweep = SweepK(factory, utterances, config.k_set, opts);

  SimulationResult result;
  result.failures = sweep.failures;
  for (auto &[k, traces] : sweep.traces) {
    if (traces.empty()) continue;
    std::vector<LatencyReport> reports;
    std::vector<std::string> hyps, refs;
    for (const auto &t : traces) {
      const SegmentPair &pair = *by_id.at(t.utterance_id);
      const int ref_len = std::max(1, ReferenceLength(*pair.target_text, config.tokenize));
      reports.push_back(EvaluateLatency(t, ref_len, config.write_cost));
      std::string hyp;
      for (size_t i = 0; i < t.target_tokens.size(); ++i) {
        hyp += (i ? " " : "") + t.target_tokens[i];
      }
      hyps.push_back(std::move(hyp));
      refs.push_back(*pair.target_text);
    }
    const LatencyReport mean = Aggregate(reports);
    const QualityReport quality = EvaluateQuality(hyps, refs, config.tokenize);
    CurvePoint p;
    p.k = k;
    p.al = mean.al;
    p.laal = mean.laal;
    p.atd = mean.atd;
    p.unit = mean.unit;
    p.bleu = quality.bleu;
    p.chrf = quality.chrf;
    p.n_utterances = static_cast<int64_t>(traces.size());
    result.points.push_back(p);
    result.latency.insert(result.latency.end(), reports.begin(), reports.end());
    for (const auto &tr : traces) {
      result.sources[k].push_back(by_id.at(tr.utterance_id)->source_text);
    }
    result.hypotheses[k] = std::move(hyps);
    result.references[k] = std::move(refs);
  }
  result.traces = std::move(sweep.traces);
  return result;
}

void WriteSimulation(const SimulationResult &result, const std::filesystem::path &dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  for (const auto &[k, traces] : result.traces) {
    SaveTraces(traces, dir / ("traces_k" + std::to_string(k) + ".jsonl"));
  }
  for (const auto &[k, hyps] : result.hypotheses) {
    ExportNeuralScoring(result.sources.at(k), hyps, result.references.at(k),
                        dir / ("neural_k" + std::to_string(k) + ".jsonl"));
  }
  SaveLatencyReports(result.latency, dir / "latency.jsonl");
  SaveCurvePoints(result.points, dir / "points.jsonl");
  WriteFileAtomic(dir / "curve.csv", CurveCsv(result.points));
}

}  // namespace sitk
