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

#ifndef SITK_ANALYTICS_H_
#define SITK_ANALYTICS_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sitk/alignment.h"
#include "sitk/corpus.h"

namespace sitk {

// Signed per-sentence chunk count differences (a - b).
struct ChunkDiffHistogram {
  std::map<int, int64_t> bins;
  int64_t n_sentences = 0;
  double mean = 0;
  double median = 0;

  std::string ToTsv() const;  // "bin\tcount" rows, ascending bin
  std::string ToSvg(const std::string &title) const;
  bool operator==(const ChunkDiffHistogram &) const = default;
};

// Throws DataError on length mismatch or an empty input.
ChunkDiffHistogram ChunkCountDiff(const std::vector<int> &a, const std::vector<int> &b);

// Fraction of the record's chunk translations found in order inside its
// final text (fuzzy, whitespace-insensitive). 0 when it has no translations.
double MonotonicityScore(const SIRecord &record, double ratio = kDefaultFuzzyRatio);

// True when the record carries only a transport or parse failure, so there
// is nothing to score.
bool HasNoContent(const SIRecord &record);

struct MonotonicitySummary {
  double mean = 0;
  int64_t n_scored = 0;
  int64_t n_skipped = 0;  // records with no content
  // Bin i (0..9) counts scores in [i/10, (i+1)/10); bin 10 counts exactly 1.
  std::vector<int64_t> histogram = std::vector<int64_t>(11, 0);

  std::string ToTsv() const;
};

// Throws DataError when no record has content to score.
MonotonicitySummary CorpusMonotonicity(const std::vector<SIRecord> &records,
                                       double ratio = kDefaultFuzzyRatio);

}  // namespace sitk

#endif  // SITK_ANALYTICS_H_
