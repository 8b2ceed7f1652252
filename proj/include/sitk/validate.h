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

#ifndef SITK_VALIDATE_H_
#define SITK_VALIDATE_H_

#include <string>
#include <string_view>
#include <vector>

#include "sitk/alignment.h"
#include "sitk/corpus.h"

namespace sitk {

struct ValidatorOptions {
  double fuzzy_ratio = kDefaultFuzzyRatio;
  // Longest gap (in code points, whitespace removed) tolerated between or
  // around matched chunk translations.
  size_t connector_budget = 12;
  // Gaps must split entirely into these words.
  std::vector<std::string> connectors = {"それ", "これ", "その", "この", "そして",
                                         "しかし", "だから", "また", "、", "。"};
};

// Checks the structural rules on the parsed fields of `record` against its
// source sentence. Pure: the record itself is not touched.
//   CHUNKS_NOT_PARTITION  chunks do not rebuild the normalized source
//   LENGTH_MISMATCH       chunk and translation counts differ
//   EMPTY_CHUNK_TRANSLATION
//   EMPTY_FINAL_TEXT
//   ORDER_BROKEN          translations do not occur in order in final_text
//   EXCESS_CONNECTOR      text outside the translations is not a short
//                         connector (only checked when the order holds)
ValidationReport ValidateRecord(const SIRecord &record,
                                std::string_view source_text,
                                const ValidatorOptions &options = {});

// True when `gap` (whitespace removed) is within budget and splits into
// allowed connectors. The empty gap is allowed.
bool IsAllowedConnector(std::u32string_view gap, const ValidatorOptions &options);

// Re-validates a stored record. Records whose response never parsed keep
// their MALFORMED_RESPONSE / MISSING_KEY / REQUEST_FAILED findings; the rest
// are checked from scratch.
ValidationReport Revalidate(const SIRecord &record, std::string_view source_text,
                            const ValidatorOptions &options = {});

}  // namespace sitk

#endif  // SITK_VALIDATE_H_
