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

#include "sitk/simulator.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <numeric>
#include <thread>

#include "httplib.h"
#include "sitk/corpus_inl.h"
#include "sitk/io.h"
#include "sitk/text.h"

namespace sitk {

using nlohmann::json;

std::string_view SourceModeName(SourceMode mode) {
  return mode == SourceMode::kText ? "text" : "speech";
}

SourceMode ParseSourceMode(std::string_view name) {
  if (name == "text") return SourceMode::kText;
  if (name == "speech") return SourceMode::kSpeech;
  throw DataError("unknown source mode \"" + std::string(name) + "\"");
}

double SourceUnits::total_ms() const {
  double sum = 0;
  for (const auto &u : units) sum += u.cost_ms;
  return sum;
}

void SourceUnits::Validate() const {
  if (units.empty()) throw DataError("utterance " + utterance_id + " has no units");
  if (mode != SourceMode::kSpeech) return;
  if (unit_frames < 1) throw DataError("unit_frames must be >= 1");
  for (size_t i = 0; i < units.size(); ++i) {
    const int64_t f = units[i].frames;
    const bool last = i + 1 == units.size();
    if (last ? (f < 1 || f > unit_frames) : f != unit_frames) {
      throw DataError("utterance " + utterance_id + ": unit " + std::to_string(i) +
                      " has " + std::to_string(f) + " frames");
    }
  }
}

SourceUnits TextUnits(const std::string &utterance_id, const std::string &text) {
  SourceUnits out;
  out.utterance_id = utterance_id;
  out.mode = SourceMode::kText;
  for (auto &token : SplitWhitespace(text)) {
    out.units.push_back(Unit{std::move(token), 0, 0.0});
  }
  if (out.units.empty()) throw DataError("utterance " + utterance_id + " is empty");
  return out;
}

SourceUnits SegmentFrames(int64_t total_frames, double frame_hop_ms,
                          int unit_frames, const std::string &utterance_id) {
  if (unit_frames < 1) throw DataError("unit_frames must be >= 1");
  if (total_frames <= 0) throw DataError("speech input has zero duration");
  if (!(frame_hop_ms > 0)) throw DataError("frame hop must be positive");
  SourceUnits out;
  out.utterance_id = utterance_id;
  out.mode = SourceMode::kSpeech;
  out.unit_frames = unit_frames;
  for (int64_t start = 0; start < total_frames; start += unit_frames) {
    const int64_t frames = std::min<int64_t>(unit_frames, total_frames - start);
    out.units.push_back(Unit{"", frames, static_cast<double>(frames) * frame_hop_ms});
  }
  return out;
}

SourceUnits SegmentSpeech(const SpeechRef &ref, int unit_frames,
                          const std::string &utterance_id) {
  if (ref.duration_ms <= 0) throw DataError("speech input has zero duration");
  ref.Validate();
  return SegmentFrames(ref.FrameCount(), ref.frame_hop_ms, unit_frames, utterance_id);
}

// ------------------------------------------------------------------ agents

std::optional<std::string> ScriptedAgent::NextToken(const AgentQuery &query) {
  const size_t i = query.target_prefix->size();
  if (i >= tokens_.size()) return std::nullopt;
  return tokens_[i];
}

std::optional<std::string> PrefixEchoAgent::NextToken(const AgentQuery &query) {
  const size_t i = query.target_prefix->size();
  if (i >= query.units_read) return std::nullopt;
  const SourceUnits &src = *query.source;
  if (src.mode == SourceMode::kText) return src.units[i].token;
  return "u" + std::to_string(i);
}

RemoteAgent::RemoteAgent(std::string endpoint_url, int timeout_ms)
    : timeout_ms_(timeout_ms) {
  const size_t scheme_end = endpoint_url.find("://");
  if (scheme_end == std::string::npos) {
    throw DataError("agent endpoint needs a scheme: " + endpoint_url);
  }
  const size_t path_start = endpoint_url.find('/', scheme_end + 3);
  origin_ = endpoint_url.substr(0, path_start);
  path_ = path_start == std::string::npos ? "/" : endpoint_url.substr(path_start);
}

json RemoteAgent::RequestJson(const AgentQuery &query) {
  const SourceUnits &src = *query.source;
  json prefix = json::array();
  double end_ms = 0;
  for (size_t i = 0; i < query.units_read; ++i) {
    if (src.mode == SourceMode::kText) {
      prefix.push_back(src.units[i].token);
    } else {
      end_ms += src.units[i].cost_ms;
      prefix.push_back({{"index", i}, {"frames", src.units[i].frames}, {"end_ms", end_ms}});
    }
  }
  return {{"mode", SourceModeName(src.mode)},
          {"source_prefix", std::move(prefix)},
          {"target_prefix", *query.target_prefix},
          {"utterance_id", src.utterance_id}};
}

std::optional<std::string> RemoteAgent::NextToken(const AgentQuery &query) {
  httplib::Client client(origin_);
  const auto timeout = std::chrono::milliseconds(timeout_ms_);
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  auto res = client.Post(path_, RequestJson(query).dump(), "application/json");
  if (!res) throw IoError("agent request failed: " + httplib::to_string(res.error()));
  if (res->status != 200) {
    throw IoError("agent returned HTTP " + std::to_string(res->status));
  }
  json j;
  try {
    j = json::parse(res->body);
  } catch (const json::exception &e) {
    throw DataError(std::string("agent reply is not JSON: ") + e.what());
  }
  if (j.is_object() && j.contains("end") && j.at("end") == true) return std::nullopt;
  if (j.is_object() && j.contains("token") && j.at("token").is_string()) {
    return j.at("token").get<std::string>();
  }
  throw DataError("agent reply has neither \"token\" nor \"end\": " + res->body);
}

// ------------------------------------------------------------------- trace

void ReadWriteTrace::Validate() const {
  auto bad = [&](const std::string &what) {
    throw DataError("trace " + utterance_id + " (k=" + std::to_string(k) + "): " + what);
  };
  if (source_total_units < 1) bad("no source units");
  if (delays.size() != target_tokens.size()) bad("delays and tokens differ in length");
  size_t writes = 0;
  int reads = 0;
  for (const auto &a : actions) {
    if (a.type == ActionType::kRead) {
      if (a.unit_index != reads) bad("reads out of order");
      ++reads;
    } else {
      if (writes >= delays.size()) bad("more WRITEs than tokens");
      if (delays[writes] != reads) bad("delay disagrees with actions");
      if (a.token != target_tokens[writes]) bad("WRITE token disagrees");
      ++writes;
    }
  }
  if (writes != delays.size()) bad("WRITE count differs from token count");
  if (reads > source_total_units) bad("more READs than source units");
  for (size_t i = 0; i < delays.size(); ++i) {
    if (delays[i] < 1 || delays[i] > source_total_units) bad("delay out of range");
    if (i > 0 && delays[i] < delays[i - 1]) bad("delays decrease");
  }
  if (mode == SourceMode::kSpeech &&
      unit_costs_ms.size() != static_cast<size_t>(source_total_units)) {
    bad("speech trace needs one cost per unit");
  }
}

ReadWriteTrace TraceFromDelays(const std::vector<int> &delays, int source_total_units,
                               int k) {
  ReadWriteTrace t;
  t.k = k;
  t.source_total_units = source_total_units;
  int read = 0;
  for (size_t i = 0; i < delays.size(); ++i) {
    while (read < delays[i]) t.actions.push_back({ActionType::kRead, read++, ""});
    const std::string token = "y" + std::to_string(i);
    t.actions.push_back({ActionType::kWrite, 0, token});
    t.target_tokens.push_back(token);
    t.delays.push_back(delays[i]);
  }
  while (read < source_total_units) t.actions.push_back({ActionType::kRead, read++, ""});
  t.Validate();
  return t;
}

json ToJson(const ReadWriteTrace &t) {
  json actions = json::array();
  for (const auto &a : t.actions) {
    if (a.type == ActionType::kRead) {
      actions.push_back({{"type", "READ"}, {"unit_index", a.unit_index}});
    } else {
      actions.push_back({{"type", "WRITE"}, {"token", a.token}});
    }
  }
  json j = {{"utterance_id", t.utterance_id},
            {"k", t.k},
            {"mode", SourceModeName(t.mode)},
            {"actions", std::move(actions)},
            {"delays", t.delays},
            {"source_total_units", t.source_total_units},
            {"source_total_ms", t.source_total_ms ? json(*t.source_total_ms) : json()},
            {"target_tokens", t.target_tokens},
            {"early_stop", t.early_stop},
            {"truncated", t.truncated}};
  if (t.mode == SourceMode::kSpeech) j["unit_costs_ms"] = t.unit_costs_ms;
  return j;
}

ReadWriteTrace TraceFromJson(const json &j) {
  ReadWriteTrace t;
  t.utterance_id = j.at("utterance_id").get<std::string>();
  t.k = j.at("k").get<int>();
  t.mode = ParseSourceMode(j.at("mode").get<std::string>());
  for (const auto &a : j.at("actions")) {
    const std::string type = a.at("type").get<std::string>();
    if (type == "READ") {
      t.actions.push_back({ActionType::kRead, a.at("unit_index").get<int>(), ""});
    } else if (type == "WRITE") {
      t.actions.push_back({ActionType::kWrite, 0, a.at("token").get<std::string>()});
    } else {
      throw DataError("unknown action type \"" + type + "\"");
    }
  }
  t.delays = j.at("delays").get<std::vector<int>>();
  t.source_total_units = j.at("source_total_units").get<int>();
  if (j.contains("source_total_ms") && !j.at("source_total_ms").is_null()) {
    t.source_total_ms = j.at("source_total_ms").get<double>();
  }
  t.target_tokens = j.at("target_tokens").get<std::vector<std::string>>();
  t.early_stop = j.value("early_stop", false);
  t.truncated = j.value("truncated", false);
  if (j.contains("unit_costs_ms")) {
    t.unit_costs_ms = j.at("unit_costs_ms").get<std::vector<double>>();
  }
  t.Validate();
  return t;
}

void SaveTraces(const std::vector<ReadWriteTrace> &traces,
                const std::filesystem::path &path) {
  std::string out;
  for (const auto &t : traces) {
    out += ToJson(t).dump();
    out += '\n';
  }
  WriteFileAtomic(path, out);
}

std::vector<ReadWriteTrace> LoadTraces(const std::filesystem::path &path) {
  std::ifstream in = OpenInput(path);
  std::vector<ReadWriteTrace> out;
  ForEachJsonLine(in, path.string(), [&](int, const json &j) {
    out.push_back(TraceFromJson(j));
  });
  return out;
}

// ------------------------------------------------------------------ policy

int DefaultMaxTargetLen(const SourceUnits &source) {
  return 4 * static_cast<int>(source.total()) + 20;
}

ReadWriteTrace RunWaitK(Agent &agent, const SourceUnits &source, int k,
                        std::optional<int> max_target_len) {
  source.Validate();
  if (k < 1) throw DataError("k must be >= 1");
  const int limit = max_target_len.value_or(DefaultMaxTargetLen(source));
  if (limit < 1) throw DataError("max_target_len must be >= 1");

  ReadWriteTrace t;
  t.utterance_id = source.utterance_id;
  t.k = k;
  t.mode = source.mode;
  t.source_total_units = static_cast<int>(source.total());
  if (source.mode == SourceMode::kSpeech) {
    t.source_total_ms = source.total_ms();
    for (const auto &u : source.units) t.unit_costs_ms.push_back(u.cost_ms);
  }

  const int total = t.source_total_units;
  int read = 0;
  auto read_one = [&] { t.actions.push_back({ActionType::kRead, read++, ""}); };
  auto ask = [&]() -> std::optional<std::string> {
    AgentQuery q{&source, static_cast<size_t>(read), &t.target_tokens};
    try {
      return agent.NextToken(q);
    } catch (const std::exception &e) {
      throw AgentError("agent failed on " + source.utterance_id + " after " +
                           std::to_string(t.target_tokens.size()) + " tokens: " + e.what(),
                       t);
    }
  };

  while (read < std::min(k, total)) read_one();
  for (;;) {
    if (static_cast<int>(t.target_tokens.size()) >= limit) {
      // Probe once so an agent that was about to stop is not flagged.
      if (ask()) t.truncated = true;
      break;
    }
    std::optional<std::string> token = ask();
    if (!token) {
      if (read < total) t.early_stop = true;
      break;
    }
    t.actions.push_back({ActionType::kWrite, 0, *token});
    t.target_tokens.push_back(std::move(*token));
    t.delays.push_back(read);
    if (read < total) read_one();
  }
  while (read < total) read_one();
  return t;
}

std::vector<int> DefaultKs() {
  std::vector<int> ks;
  for (int k = 1; k <= 35; k += 2) ks.push_back(k);
  return ks;
}

size_t SweepResult::trace_count() const {
  size_t n = 0;
  for (const auto &[k, traces] : traces) n += traces.size();
  return n;
}

SweepResult SweepK(const AgentFactory &factory,
                   const std::vector<SourceUnits> &utterances,
                   const std::vector<int> &ks, const SweepOptions &options) {
  if (ks.empty()) throw DataError("ks must not be empty");
  for (size_t i = 0; i < ks.size(); ++i) {
    if (ks[i] < 1) throw DataError("k must be >= 1");
    if (std::find(ks.begin(), ks.begin() + i, ks[i]) != ks.begin() + i) {
      throw DataError("k = " + std::to_string(ks[i]) + " listed twice");
    }
  }
  if (options.parallelism < 1) throw DataError("parallelism must be >= 1");

  const size_t n_utt = utterances.size();
  const size_t jobs = ks.size() * n_utt;
  std::vector<std::optional<ReadWriteTrace>> slots(jobs);
  std::vector<std::optional<SweepFailure>> failed(jobs);
  std::atomic<size_t> next{0};

  auto worker = [&] {
    for (size_t job = next++; job < jobs; job = next++) {
      const int k = ks[job / n_utt];
      const SourceUnits &src = utterances[job % n_utt];
      try {
        std::unique_ptr<Agent> agent = factory(src);
        slots[job] = RunWaitK(*agent, src, k, options.max_target_len);
      } catch (const std::exception &e) {
        failed[job] = SweepFailure{src.utterance_id, k, e.what()};
      }
    }
  };
  const size_t threads = std::min<size_t>(options.parallelism, std::max<size_t>(jobs, 1));
  std::vector<std::thread> pool;
  for (size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  for (auto &th : pool) th.join();

  SweepResult result;
  for (size_t job = 0; job < jobs; ++job) {
    const int k = ks[job / n_utt];
    auto &bucket = result.traces[k];
    if (slots[job]) bucket.push_back(std::move(*slots[job]));
    if (failed[job]) result.failures.push_back(std::move(*failed[job]));
  }
  for (int k : ks) result.traces[k];  // keys exist even with no utterances
  return result;
}

}  // namespace sitk
