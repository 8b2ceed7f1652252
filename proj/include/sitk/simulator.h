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

#ifndef SITK_SIMULATOR_H_
#define SITK_SIMULATOR_H_

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sitk/corpus.h"
#include "sitk/error.h"

namespace sitk {

inline constexpr int kDefaultUnitFrames = 160;

enum class SourceMode { kText, kSpeech };
std::string_view SourceModeName(SourceMode mode);
SourceMode ParseSourceMode(std::string_view name);

// A text unit is one token (cost 1). A speech unit is a run of frames whose
// cost is its duration in ms.
struct Unit {
  std::string token;
  int64_t frames = 0;
  double cost_ms = 0.0;
};

struct SourceUnits {
  std::string utterance_id;
  SourceMode mode = SourceMode::kText;
  std::vector<Unit> units;
  int unit_frames = kDefaultUnitFrames;  // speech only

  size_t total() const { return units.size(); }
  // Sum of cost_ms over all units (speech).
  double total_ms() const;
  // Throws DataError when empty, or when a speech unit other than the last
  // does not have exactly unit_frames frames.
  void Validate() const;
};

// Whitespace tokens of `text`. Throws DataError on empty text.
SourceUnits TextUnits(const std::string &utterance_id, const std::string &text);

// ceil(frames / unit_frames) units; each unit's cost_ms = frames * hop.
// Throws DataError on zero duration or unit_frames < 1.
SourceUnits SegmentSpeech(const SpeechRef &ref, int unit_frames = kDefaultUnitFrames,
                          const std::string &utterance_id = "");
SourceUnits SegmentFrames(int64_t total_frames, double frame_hop_ms,
                          int unit_frames = kDefaultUnitFrames,
                          const std::string &utterance_id = "");

// One policy step's view of the world.
struct AgentQuery {
  const SourceUnits *source = nullptr;
  size_t units_read = 0;  // source prefix = units[0, units_read)
  const std::vector<std::string> *target_prefix = nullptr;
};

// Translation backend behind the policy. Returns the next target token, or
// nullopt for END. END is final: the simulator does not ask again.
class Agent {
 public:
  virtual ~Agent() = default;
  virtual std::optional<std::string> NextToken(const AgentQuery &query) = 0;
};

using AgentFactory = std::function<std::unique_ptr<Agent>(const SourceUnits &)>;

// Replays a fixed token list, then END.
class ScriptedAgent : public Agent {
 public:
  explicit ScriptedAgent(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {}
  std::optional<std::string> NextToken(const AgentQuery &query) override;

 private:
  std::vector<std::string> tokens_;
};

// Copies source tokens (text) or "u<index>" labels (speech) one for one,
// never past what has been read; END after the whole source is echoed.
class PrefixEchoAgent : public Agent {
 public:
  std::optional<std::string> NextToken(const AgentQuery &query) override;
};

// POSTs {"mode","source_prefix","target_prefix","utterance_id"} to an HTTP
// endpoint and expects {"token": string} or {"end": true}. Speech prefixes
// are sent as [{"index","frames","end_ms"}].
class RemoteAgent : public Agent {
 public:
  explicit RemoteAgent(std::string endpoint_url, int timeout_ms = 30000);
  std::optional<std::string> NextToken(const AgentQuery &query) override;

  static nlohmann::json RequestJson(const AgentQuery &query);

 private:
  std::string origin_;
  std::string path_;
  int timeout_ms_;
};

enum class ActionType { kRead, kWrite };

struct Action {
  ActionType type = ActionType::kRead;
  int unit_index = 0;  // READ: 0-based unit read
  std::string token;   // WRITE: emitted token
  bool operator==(const Action &) const = default;
};

struct ReadWriteTrace {
  std::string utterance_id;
  int k = 0;
  SourceMode mode = SourceMode::kText;
  std::vector<Action> actions;
  // delays[i]: source units read when target token i was written.
  std::vector<int> delays;
  int source_total_units = 0;
  std::optional<double> source_total_ms;
  std::vector<std::string> target_tokens;
  // Per-unit durations; speech only.
  std::vector<double> unit_costs_ms;
  bool early_stop = false;
  bool truncated = false;

  // Throws DataError when the invariants do not hold (delays non-decreasing
  // and within [1, total], WRITE count == tokens == delays, reads in order).
  void Validate() const;
  bool operator==(const ReadWriteTrace &) const = default;
};

// Builds the text trace that the given delays imply: before token i, reads
// up to delays[i]; any unread units are read at the end.
ReadWriteTrace TraceFromDelays(const std::vector<int> &delays, int source_total_units,
                               int k = 0);

nlohmann::json ToJson(const ReadWriteTrace &trace);
ReadWriteTrace TraceFromJson(const nlohmann::json &j);
void SaveTraces(const std::vector<ReadWriteTrace> &traces,
                const std::filesystem::path &path);
std::vector<ReadWriteTrace> LoadTraces(const std::filesystem::path &path);

// 4 * units + 20.
int DefaultMaxTargetLen(const SourceUnits &source);

// Agent failure, with everything the policy did before it.
class AgentError : public Error {
 public:
  AgentError(const std::string &message, ReadWriteTrace partial)
      : Error(message), partial_(std::move(partial)) {}
  const ReadWriteTrace &partial() const { return partial_; }

 private:
  ReadWriteTrace partial_;
};

// Test-time wait-k: READ min(k, total), then alternate WRITE / READ while
// source remains, then WRITE until END or max_target_len. END with unread
// source reads the rest and marks early_stop; hitting max_target_len while
// the agent still has output marks truncated.
ReadWriteTrace RunWaitK(Agent &agent, const SourceUnits &source, int k,
                        std::optional<int> max_target_len = std::nullopt);

// {1, 3, ..., 35}.
std::vector<int> DefaultKs();

struct SweepFailure {
  std::string utterance_id;
  int k = 0;
  std::string message;
};

struct SweepResult {
  // k -> traces in utterance order (failed runs omitted).
  std::map<int, std::vector<ReadWriteTrace>> traces;
  std::vector<SweepFailure> failures;
  size_t trace_count() const;
};

struct SweepOptions {
  int parallelism = 1;
  std::optional<int> max_target_len;  // default per utterance
};

// One fresh agent per (k, utterance) run; runs are independent and may
// execute in parallel. Throws DataError on an empty ks list or k < 1.
SweepResult SweepK(const AgentFactory &factory,
                   const std::vector<SourceUnits> &utterances,
                   const std::vector<int> &ks = DefaultKs(),
                   const SweepOptions &options = {});

}  // namespace sitk

#endif  // SITK_SIMULATOR_H_
