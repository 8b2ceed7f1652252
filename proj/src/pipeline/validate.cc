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

#include "sitk/validate.h"

#include "sitk/text.h"

namespace sitk {
namespace {

std::string JoinChunks(const std::vector<std::string> &chunks) {
  std::string joined;
  for (const auto &c : chunks) {
    if (!joined.empty()) joined += ' ';
    joined += c;
  }
  return NormalizeText(joined);
}

bool IsBlank(std::string_view s) { return NormalizeWhitespace(s).empty(); }

}  // namespace

bool IsAllowedConnector(std::u32string_view gap,
                        const ValidatorOptions &options) {
  const std::u32string text = StripWhitespace(gap);
  if (text.size() > options.connector_budget) return false;
  std::vector<std::u32string> words;
  for (const auto &w : options.connectors) {
    std::u32string u = DecodeUtf8(w);
    if (!u.empty()) words.push_back(std::move(u));
  }
  // reachable[i]: text[0, i) splits into connectors.
  std::vector<bool> reachable(text.size() + 1, false);
  reachable[0] = true;
  for (size_t i = 0; i < text.size(); ++i) {
    if (!reachable[i]) continue;
    for (const auto &w : words) {
      if (text.compare(i, w.size(), w) == 0) reachable[i + w.size()] = true;
    }
  }
  return reachable[text.size()];
}

ValidationReport ValidateRecord(const SIRecord &record,
                                std::string_view source_text,
                                const ValidatorOptions &options) {
  ValidationReport report;
  const std::string source = NormalizeText(source_text);
  if (record.chunks.empty() || JoinChunks(record.chunks) != source) {
    report.Add(ViolationCode::kChunksNotPartition, std::nullopt,
               "chunks do not concatenate to the source sentence");
  }
  if (record.chunks.size() != record.chunk_translations.size()) {
    report.Add(ViolationCode::kLengthMismatch, std::nullopt,
               std::to_string(record.chunks.size()) + " chunks but " +
                   std::to_string(record.chunk_translations.size()) +
                   " chunk translations");
  }
  for (size_t i = 0; i < record.chunk_translations.size(); ++i) {
    if (IsBlank(record.chunk_translations[i])) {
      report.Add(ViolationCode::kEmptyChunkTranslation, static_cast<int>(i),
                 "chunk translation " + std::to_string(i) + " is empty");
    }
  }
  if (IsBlank(record.final_text)) {
    report.Add(ViolationCode::kEmptyFinalText, std::nullopt,
               "final_text is empty");
    return report;
  }
  if (record.chunk_translations.empty()) return report;

  const ChunkAlignment align = AlignInOrder(record.chunk_translations,
                                            record.final_text,
                                            options.fuzzy_ratio);
  if (!align.complete()) {
    report.Add(ViolationCode::kOrderBroken, std::nullopt,
               "only " + std::to_string(align.matched) + " of " +
                   std::to_string(align.total) +
                   " chunk translations appear in order");
    return report;
  }
  size_t cursor = 0;
  for (size_t i = 0; i <= align.spans.size(); ++i) {
    const size_t gap_end =
        i < align.spans.size() ? align.spans[i].begin : align.text.size();
    const std::u32string_view gap =
        std::u32string_view(align.text).substr(cursor, gap_end - cursor);
    if (!IsAllowedConnector(gap, options)) {
      report.Add(ViolationCode::kExcessConnector, static_cast<int>(i),
                 "unexpected material before chunk " + std::to_string(i) +
                     ": \"" + EncodeUtf8(gap) + "\"");
    }
    if (i < align.spans.size()) cursor = std::max(cursor, align.spans[i].end);
  }
  return report;
}

ValidationReport Revalidate(const SIRecord &record,
                            std::string_view source_text,
                            const ValidatorOptions &options) {
  for (ViolationCode code :
       {ViolationCode::kMalformedResponse, ViolationCode::kMissingKey,
        ViolationCode::kRequestFailed}) {
    if (record.validation.Has(code)) return record.validation;
  }
  return ValidateRecord(record, source_text, options);
}

}  // namespace sitk
