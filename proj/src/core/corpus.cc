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

#include "sitk/corpus.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_set>

#include "sitk/error.h"
#include "sitk/io.h"
#include "sitk/text.h"

namespace sitk {
namespace {

using nlohmann::json;

struct CodeInfo {
  ViolationCode code;
  std::string_view name;
  Severity severity;
};

constexpr CodeInfo kCodes[] = {
    {ViolationCode::kChunksNotPartition, "CHUNKS_NOT_PARTITION",
     Severity::kWarning},
    {ViolationCode::kLengthMismatch, "LENGTH_MISMATCH", Severity::kError},
    {ViolationCode::kEmptyChunkTranslation, "EMPTY_CHUNK_TRANSLATION",
     Severity::kError},
    {ViolationCode::kOrderBroken, "ORDER_BROKEN", Severity::kError},
    {ViolationCode::kExcessConnector, "EXCESS_CONNECTOR", Severity::kWarning},
    {ViolationCode::kEmptyFinalText, "EMPTY_FINAL_TEXT", Severity::kError},
    {ViolationCode::kMalformedResponse, "MALFORMED_RESPONSE",
     Severity::kError},
    {ViolationCode::kMissingKey, "MISSING_KEY", Severity::kError},
    {ViolationCode::kRequestFailed, "REQUEST_FAILED", Severity::kError},
};

const CodeInfo &Info(ViolationCode code) {
  for (const auto &info : kCodes) {
    if (info.code == code) return info;
  }
  throw Error("unknown violation code");
}

const std::set<std::string> kCorpusKeys = {"id",          "talk_id",
                                           "split",       "source_text",
                                           "target_text", "speech"};
const std::set<std::string> kSpeechKeys = {"audio_path", "offset_ms",
                                           "duration_ms", "frame_hop_ms"};

std::string RequireString(const json &j, const char *key) {
  auto it = j.find(key);
  if (it == j.end()) throw DataError(std::string("missing field \"") + key + "\"");
  if (!it->is_string()) {
    throw DataError(std::string("field \"") + key + "\" must be a string");
  }
  return it->get<std::string>();
}

void RejectUnknownKeys(const json &j, const std::set<std::string> &allowed,
                       const char *what) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key())) {
      throw DataError(std::string("unknown ") + what + " key \"" + it.key() +
                      "\"");
    }
  }
}

SpeechRef SpeechFromJson(const json &j) {
  if (!j.is_object()) throw DataError("\"speech\" must be an object");
  RejectUnknownKeys(j, kSpeechKeys, "speech");
  SpeechRef ref;
  ref.audio_path = RequireString(j, "audio_path");
  for (const char *key : {"offset_ms", "duration_ms", "frame_hop_ms"}) {
    if (!j.contains(key) || !j.at(key).is_number()) {
      throw DataError(std::string("speech field \"") + key +
                      "\" missing or not a number");
    }
  }
  if (!j.at("offset_ms").is_number_integer() ||
      !j.at("duration_ms").is_number_integer()) {
    throw DataError("speech offset_ms/duration_ms must be integers");
  }
  ref.offset_ms = j.at("offset_ms").get<int64_t>();
  ref.duration_ms = j.at("duration_ms").get<int64_t>();
  ref.frame_hop_ms = j.at("frame_hop_ms").get<double>();
  ref.Validate();
  return ref;
}

// Shared post-parse checks for both formats.
void FinishPair(SegmentPair &pair) {
  if (pair.id.empty()) throw DataError("empty id");
  pair.source_text = NormalizeText(pair.source_text);
  if (pair.source_text.empty()) throw DataError("empty source_text");
  if (pair.target_text) pair.target_text = NormalizeText(*pair.target_text);
}

std::vector<std::string> SplitTabs(const std::string &line) {
  std::vector<std::string> fields;
  size_t start = 0;
  while (true) {
    size_t tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return fields;
}

}  // namespace

std::string_view SplitName(Split split) {
  switch (split) {
    case Split::kTrain: return "train";
    case Split::kDev: return "dev";
    case Split::kTest: return "test";
  }
  return "train";
}

Split ParseSplit(std::string_view name) {
  if (name == "train") return Split::kTrain;
  if (name == "dev") return Split::kDev;
  if (name == "test") return Split::kTest;
  throw DataError("invalid split \"" + std::string(name) + "\"");
}

int64_t SpeechRef::FrameCount() const {
  // The epsilon keeps exact multiples (8010 ms / 10 ms) from rounding up.
  const double frames =
      std::ceil(static_cast<double>(duration_ms) / frame_hop_ms - 1e-9);
  return std::max<int64_t>(1, static_cast<int64_t>(frames));
}

void SpeechRef::Validate() const {
  if (duration_ms <= 0) throw DataError("speech duration_ms must be > 0");
  if (offset_ms < 0) throw DataError("speech offset_ms must be >= 0");
  if (!(frame_hop_ms > 0) || !std::isfinite(frame_hop_ms)) {
    throw DataError("speech frame_hop_ms must be > 0");
  }
}

const SegmentPair *Corpus::Find(std::string_view id) const {
  for (const auto &pair : pairs) {
    if (pair.id == id) return &pair;
  }
  return nullptr;
}

std::string_view ViolationCodeName(ViolationCode code) {
  return Info(code).name;
}

ViolationCode ParseViolationCode(std::string_view name) {
  for (const auto &info : kCodes) {
    if (info.name == name) return info.code;
  }
  throw DataError("unknown violation code \"" + std::string(name) + "\"");
}

Severity SeverityOf(ViolationCode code) { return Info(code).severity; }

void ValidationReport::Add(ViolationCode code, std::optional<int> chunk_index,
                           std::string message) {
  violations.push_back({code, chunk_index, std::move(message)});
  if (SeverityOf(code) == Severity::kError) passed = false;
}

void ValidationReport::Merge(const ValidationReport &other) {
  for (const auto &v : other.violations) Add(v.code, v.chunk_index, v.message);
}

bool ValidationReport::Has(ViolationCode code) const {
  return std::any_of(violations.begin(), violations.end(),
                     [code](const Violation &v) { return v.code == code; });
}

std::vector<ViolationCode> ValidationReport::Codes() const {
  std::vector<ViolationCode> codes;
  for (const auto &v : violations) {
    if (std::find(codes.begin(), codes.end(), v.code) == codes.end()) {
      codes.push_back(v.code);
    }
  }
  return codes;
}

CorpusFormat FormatFromPath(const std::filesystem::path &path) {
  return path.extension() == ".tsv" ? CorpusFormat::kTsv : CorpusFormat::kJsonl;
}

json ToJson(const SegmentPair &pair) {
  json j = json::object();
  j["id"] = pair.id;
  j["talk_id"] = pair.talk_id;
  j["split"] = SplitName(pair.split);
  j["source_text"] = pair.source_text;
  if (pair.target_text) j["target_text"] = *pair.target_text;
  if (pair.speech) {
    j["speech"] = {{"audio_path", pair.speech->audio_path},
                   {"offset_ms", pair.speech->offset_ms},
                   {"duration_ms", pair.speech->duration_ms},
                   {"frame_hop_ms", pair.speech->frame_hop_ms}};
  }
  return j;
}

SegmentPair PairFromJson(const json &j) {
  RejectUnknownKeys(j, kCorpusKeys, "corpus");
  SegmentPair pair;
  pair.id = RequireString(j, "id");
  pair.talk_id = RequireString(j, "talk_id");
  pair.split = ParseSplit(RequireString(j, "split"));
  pair.source_text = RequireString(j, "source_text");
  if (j.contains("target_text") && !j.at("target_text").is_null()) {
    pair.target_text = RequireString(j, "target_text");
  }
  if (j.contains("speech") && !j.at("speech").is_null()) {
    pair.speech = SpeechFromJson(j.at("speech"));
  }
  FinishPair(pair);
  return pair;
}

Corpus ReadCorpus(std::istream &in, CorpusFormat format,
                  const std::string &name) {
  Corpus corpus;
  corpus.name = name;
  std::unordered_set<std::string> seen;
  auto add = [&](SegmentPair pair, int line_number) {
    if (!seen.insert(pair.id).second) {
      throw ParseError(name, line_number, "duplicate id \"" + pair.id + "\"");
    }
    corpus.pairs.push_back(std::move(pair));
  };

  if (format == CorpusFormat::kJsonl) {
    ForEachJsonLine(in, name, [&](int line_number, const json &j) {
      add(PairFromJson(j), line_number);
    });
    return corpus;
  }

  // TSV columns: id, source_text, target_text, talk_id, split.
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = SplitTabs(line);
    if (fields.size() < 2) {
      throw ParseError(name, line_number, "expected at least 2 columns");
    }
    if (fields.size() > 5) {
      throw ParseError(name, line_number, "expected at most 5 columns");
    }
    SegmentPair pair;
    try {
      pair.id = fields[0];
      pair.source_text = fields[1];
      if (fields.size() > 2 && !fields[2].empty()) pair.target_text = fields[2];
      if (fields.size() > 3) pair.talk_id = fields[3];
      if (fields.size() > 4) pair.split = ParseSplit(fields[4]);
      FinishPair(pair);
    } catch (const DataError &e) {
      throw ParseError(name, line_number, e.what());
    }
    add(std::move(pair), line_number);
  }
  return corpus;
}

Corpus LoadCorpus(const std::filesystem::path &path, CorpusFormat format) {
  std::ifstream in = OpenInput(path);
  return ReadCorpus(in, format, path.string());
}

void WriteCorpus(const Corpus &corpus, std::ostream &out) {
  for (const auto &pair : corpus.pairs) out << ToJson(pair).dump() << '\n';
}

void SaveCorpus(const Corpus &corpus, const std::filesystem::path &path) {
  std::ofstream out = OpenOutput(path);
  WriteCorpus(corpus, out);
  if (!out) throw IoError("write failed: " + path.string());
}

json ToJson(const ValidationReport &report) {
  json violations = json::array();
  for (const auto &v : report.violations) {
    json item = {{"code", ViolationCodeName(v.code)},
                 {"severity",
                  v.severity() == Severity::kError ? "ERROR" : "WARNING"},
                 {"message", v.message}};
    if (v.chunk_index) item["chunk_index"] = *v.chunk_index;
    violations.push_back(std::move(item));
  }
  return {{"passed", report.passed}, {"violations", std::move(violations)}};
}

ValidationReport ValidationFromJson(const json &j) {
  ValidationReport report;
  for (const auto &item : j.at("violations")) {
    std::optional<int> index;
    if (item.contains("chunk_index")) index = item.at("chunk_index").get<int>();
    report.Add(ParseViolationCode(item.at("code").get<std::string>()), index,
               item.value("message", ""));
  }
  if (j.contains("passed") && j.at("passed").get<bool>() != report.passed) {
    throw DataError("validation.passed disagrees with its violations");
  }
  return report;
}

json ToJson(const SIRecord &record) {
  return {{"source_id", record.source_id},
          {"model_id", record.model_id},
          {"chunks", record.chunks},
          {"chunk_translations", record.chunk_translations},
          {"final_text", record.final_text},
          {"cost_usd", record.cost_usd},
          {"validation", ToJson(record.validation)},
          {"raw_response", record.raw_response}};
}

SIRecord RecordFromJson(const json &j) {
  SIRecord record;
  record.source_id = RequireString(j, "source_id");
  record.model_id = RequireString(j, "model_id");
  record.chunks = j.at("chunks").get<std::vector<std::string>>();
  record.chunk_translations =
      j.at("chunk_translations").get<std::vector<std::string>>();
  record.final_text = RequireString(j, "final_text");
  record.cost_usd = j.at("cost_usd").get<double>();
  if (record.cost_usd < 0) throw DataError("cost_usd must be >= 0");
  record.validation = ValidationFromJson(j.at("validation"));
  record.raw_response = j.value("raw_response", "");
  return record;
}

void WriteRecords(const std::vector<SIRecord> &records, std::ostream &out) {
  for (const auto &record : records) out << ToJson(record).dump() << '\n';
}

void SaveRecords(const std::vector<SIRecord> &records,
                 const std::filesystem::path &path) {
  std::ofstream out = OpenOutput(path);
  WriteRecords(records, out);
  if (!out) throw IoError("write failed: " + path.string());
}

std::vector<SIRecord> ReadRecords(std::istream &in, const std::string &name) {
  std::vector<SIRecord> records;
  ForEachJsonLine(in, name, [&](int, const json &j) {
    records.push_back(RecordFromJson(j));
  });
  return records;
}

std::vector<SIRecord> LoadRecords(const std::filesystem::path &path) {
  std::ifstream in = OpenInput(path);
  return ReadRecords(in, path.string());
}

CorpusStats ComputeCorpusStats(const Corpus &corpus) {
  CorpusStats stats;
  stats.split_counts = {{Split::kTrain, 0}, {Split::kDev, 0}, {Split::kTest, 0}};
  for (const auto &pair : corpus.pairs) {
    ++stats.n_pairs;
    stats.n_tokens_source +=
        static_cast<int64_t>(SplitWhitespace(pair.source_text).size());
    ++stats.split_counts[pair.split];
  }
  if (stats.n_pairs > 0) {
    stats.mean_source_len = static_cast<double>(stats.n_tokens_source) /
                            static_cast<double>(stats.n_pairs);
  }
  return stats;
}

}  // namespace sitk
