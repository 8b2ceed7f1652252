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

#ifndef SITK_QUALITY_H_
#define SITK_QUALITY_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sitk/corpus.h"

namespace sitk {

// Corpus BLEU and chrF computed the way sacreBLEU 2.x does by default for a
// single reference: BLEU with 'exp' smoothing and no effective order; chrF
// with 6 character orders, no word n-grams, beta 2, whitespace removed.

enum class BleuTokenize {
  kJaChar,      // one token per code point, whitespace dropped
  kWhitespace,  // split on Unicode whitespace
};
std::string_view BleuTokenizeName(BleuTokenize tok);
BleuTokenize ParseBleuTokenize(std::string_view name);

inline constexpr int kBleuMaxOrder = 4;
inline constexpr int kChrfCharOrder = 6;
inline constexpr double kChrfBeta = 2.0;

struct BleuResult {
  double score = 0;
  std::array<int64_t, kBleuMaxOrder> correct{};
  std::array<int64_t, kBleuMaxOrder> total{};
  std::array<double, kBleuMaxOrder> precisions{};
  double brevity_penalty = 0;
  int64_t sys_len = 0;
  int64_t ref_len = 0;
};

// Throws DataError on an empty corpus or mismatched lengths.
BleuResult CorpusBleu(const std::vector<std::string> &hypotheses,
                      const std::vector<std::string> &references,
                      BleuTokenize tokenize = BleuTokenize::kJaChar);
double CorpusChrf(const std::vector<std::string> &hypotheses,
                  const std::vector<std::string> &references);

std::string BleuSignature(BleuTokenize tokenize);
std::string ChrfSignature();

struct QualityReport {
  double bleu = 0;
  double chrf = 0;
  std::string signature;

  bool operator==(const QualityReport &) const = default;
};

QualityReport EvaluateQuality(const std::vector<std::string> &hypotheses,
                              const std::vector<std::string> &references,
                              BleuTokenize tokenize = BleuTokenize::kJaChar);

// Writes {"src","mt","ref"} per line for external neural scorers; with
// qe_only the "ref" field is left out and `references` may be empty.
// Throws DataError on misaligned lists.
void ExportNeuralScoring(const std::vector<std::string> &sources,
                         const std::vector<std::string> &hypotheses,
                         const std::vector<std::string> &references,
                         const std::filesystem::path &path, bool qe_only = false);

// Reads one {"score": number} per line, in order.
std::vector<double> ImportNeuralScores(const std::filesystem::path &path);

// One row per variant: BLEU/chrF of the variant's target_text against the
// base corpus' target_text, matched by id.
struct SimilarityRow {
  std::string name;
  double bleu = 0;
  double chrf = 0;
  std::map<std::string, double> neural;  // filled by import only
};

struct SimilarityTable {
  std::vector<SimilarityRow> rows;
  std::string signature;

  // Mean of `scores` stored under `metric` for the named row.
  void AttachNeural(const std::string &row, const std::string &metric,
                    const std::vector<double> &scores);
  std::string ToTsv() const;
  std::string ToText() const;  // aligned columns
};

// Throws DataError when a variant's ids differ from the base's or a pair
// lacks target_text.
SimilarityTable BuildSimilarityTable(const Corpus &base,
                                     const std::vector<Corpus> &variants,
                                     BleuTokenize tokenize = BleuTokenize::kJaChar);

}  // namespace sitk

#endif  // SITK_QUALITY_H_
