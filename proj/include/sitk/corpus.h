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

#ifndef SITK_CORPUS_H_
#define SITK_CORPUS_H_

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace sitk {

enum class Split { kTrain, kDev, kTest };

std::string_view SplitName(Split split);
// Throws DataError for anything but "train", "dev" or "test".
Split ParseSplit(std::string_view name);

// Location of an utterance inside an audio file. Audio is never decoded; the
// simulator only needs the frame count.
struct SpeechRef {
  std::string audio_path;
  int64_t offset_ms = 0;
  int64_t duration_ms = 0;
  double frame_hop_ms = 10.0;

  // ceil(duration_ms / frame_hop_ms).
  int64_t FrameCount() const;
  // Throws DataError when duration_ms <= 0, offset_ms < 0 or the hop is not
  // positive.
  void Validate() const;

  bool operator==(const SpeechRef &) const = default;
};

struct SegmentPair {
  std::string id;
  std::string talk_id;
  Split split = Split::kTrain;
  std::string source_text;
  std::optional<std::string> target_text;
  std::optional<SpeechRef> speech;

  bool operator==(const SegmentPair &) const = default;
};

struct Corpus {
  std::string name;
  std::vector<SegmentPair> pairs;

  // Linear lookup; nullptr when absent.
  const SegmentPair *Find(std::string_view id) const;

  bool operator==(const Corpus &) const = default;
};

// Fixed violation vocabulary for SI records. The first five come from the
// record validator, the rest from response parsing and transport.
enum class ViolationCode {
  kChunksNotPartition,
  kLengthMismatch,
  kEmptyChunkTranslation,
  kOrderBroken,
  kExcessConnector,
  kEmptyFinalText,
  kMalformedResponse,
  kMissingKey,
  kRequestFailed,
};

enum class Severity { kWarning, kError };

std::string_view ViolationCodeName(ViolationCode code);
ViolationCode ParseViolationCode(std::string_view name);
Severity SeverityOf(ViolationCode code);

struct Violation {
  ViolationCode code;
  std::optional<int> chunk_index;
  std::string message;

  Severity severity() const { return SeverityOf(code); }
  bool operator==(const Violation &) const = default;
};

// `passed` is kept equal to "no violation has severity kError".
struct ValidationReport {
  std::vector<Violation> violations;
  bool passed = true;

  void Add(ViolationCode code, std::optional<int> chunk_index,
           std::string message);
  void Merge(const ValidationReport &other);
  bool Has(ViolationCode code) const;
  std::vector<ViolationCode> Codes() const;

  bool operator==(const ValidationReport &) const = default;
};

// Output of the three-step LLM conversion for one source sentence.
struct SIRecord {
  std::string source_id;
  std::string model_id;
  std::vector<std::string> chunks;
  std::vector<std::string> chunk_translations;
  std::string final_text;
  std::string raw_response;
  ValidationReport validation;
  double cost_usd = 0.0;

  bool operator==(const SIRecord &) const = default;
};

enum class CorpusFormat { kJsonl, kTsv };

// Guesses the format from the file extension (".tsv" -> TSV, else JSONL).
CorpusFormat FormatFromPath(const std::filesystem::path &path);

// Reads a corpus. Text fields are NFC- and whitespace-normalized. Throws
// IoError if the file cannot be opened and ParseError (with line number) on
// malformed lines, duplicate ids or missing required fields.
Corpus LoadCorpus(const std::filesystem::path &path, CorpusFormat format);
Corpus ReadCorpus(std::istream &in, CorpusFormat format,
                  const std::string &name);

void SaveCorpus(const Corpus &corpus, const std::filesystem::path &path);
void WriteCorpus(const Corpus &corpus, std::ostream &out);

nlohmann::json ToJson(const SegmentPair &pair);
SegmentPair PairFromJson(const nlohmann::json &j);

nlohmann::json ToJson(const ValidationReport &report);
ValidationReport ValidationFromJson(const nlohmann::json &j);

nlohmann::json ToJson(const SIRecord &record);
SIRecord RecordFromJson(const nlohmann::json &j);

// One JSON object per line, input order.
void SaveRecords(const std::vector<SIRecord> &records,
                 const std::filesystem::path &path);
void WriteRecords(const std::vector<SIRecord> &records, std::ostream &out);
std::vector<SIRecord> LoadRecords(const std::filesystem::path &path);
std::vector<SIRecord> ReadRecords(std::istream &in, const std::string &name);

struct CorpusStats {
  int64_t n_pairs = 0;
  int64_t n_tokens_source = 0;
  double mean_source_len = 0.0;
  std::map<Split, int64_t> split_counts;
};

CorpusStats ComputeCorpusStats(const Corpus &corpus);

// Feeds every line of a JSONL file to `fn(line_number, json)`; blank
// lines are skipped. Used by all JSONL readers in the toolkit.
template <typename Fn>
void ForEachJsonLine(std::istream &in, const std::string &name, Fn &&fn);

}  // namespace sitk

#include "sitk/corpus_inl.h"

#endif  // SITK_CORPUS_H_
