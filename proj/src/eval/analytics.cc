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

#include "sitk/analytics.h"

#include <algorithm>
#include <cmath>

#include "sitk/io.h"
#include "sitk/svg.h"

namespace sitk {

ChunkDiffHistogram ChunkCountDiff(const std::vector<int> &a, const std::vector<int> &b) {
  if (a.size() != b.size()) {
    throw DataError("chunk count lists differ in length (" + std::to_string(a.size()) +
                    " vs " + std::to_string(b.size()) + ")");
  }
  if (a.empty()) throw DataError("no sentences to compare");
  ChunkDiffHistogram h;
  std::vector<int> diffs;
  diffs.reserve(a.size());
  double sum = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    const int d = a[i] - b[i];
    diffs.push_back(d);
    ++h.bins[d];
    sum += d;
  }
  h.n_sentences = static_cast<int64_t>(a.size());
  h.mean = sum / static_cast<double>(a.size());
  std::sort(diffs.begin(), diffs.end());
  const size_t mid = diffs.size() / 2;
  h.median = diffs.size() % 2 ? diffs[mid] : (diffs[mid - 1] + diffs[mid]) / 2.0;
  return h;
}

std::string ChunkDiffHistogram::ToTsv() const {
  std::string out = "bin\tcount\n";
  for (const auto &[bin, count] : bins) {
    out += std::to_string(bin) + "\t" + std::to_string(count) + "\n";
  }
  return out;
}

std::string ChunkDiffHistogram::ToSvg(const std::string &title) const {
  std::vector<std::pair<std::string, double>> bars;
  if (!bins.empty()) {
    // Contiguous bins so gaps show as zero-height bars.
    for (int b = bins.begin()->first; b <= bins.rbegin()->first; ++b) {
      auto it = bins.find(b);
      bars.emplace_back(std::to_string(b),
                        it == bins.end() ? 0.0 : static_cast<double>(it->second));
    }
  }
  return SvgBarChart(bars, {title + " (n=" + std::to_string(n_sentences) + ")",
                            "chunk count difference", "sentences"});
}

bool HasNoContent(const SIRecord &record) {
  return record.chunk_translations.empty() &&
         (record.validation.Has(ViolationCode::kMalformedResponse) ||
          record.validation.Has(ViolationCode::kMissingKey) ||
          record.validation.Has(ViolationCode::kRequestFailed));
}

double MonotonicityScore(const SIRecord &record, double ratio) {
  if (record.chunk_translations.empty()) return 0.0;
  const ChunkAlignment a = AlignInOrder(record.chunk_translations, record.final_text, ratio);
  return static_cast<double>(a.matched) / static_cast<double>(a.total);
}

MonotonicitySummary CorpusMonotonicity(const std::vector<SIRecord> &records, double ratio) {
  MonotonicitySummary s;
  double sum = 0;
  for (const auto &r : records) {
    if (HasNoContent(r)) {
      ++s.n_skipped;
      continue;
    }
    const double score = MonotonicityScore(r, ratio);
    sum += score;
    ++s.n_scored;
    const int bin = score >= 1.0 ? 10 : std::min(9, static_cast<int>(std::floor(score * 10)));
    ++s.histogram[bin];
  }
  if (s.n_scored == 0) throw DataError("no records with content to score");
  s.mean = sum / static_cast<double>(s.n_scored);
  return s;
}

std::string MonotonicitySummary::ToTsv() const {
  std::string out = "bin\tcount\n";
  for (int i = 0; i < 10; ++i) {
    out += "[" + std::to_string(i * 10) + "%," + std::to_string(i * 10 + 10) + "%)\t" +
           std::to_string(histogram[i]) + "\n";
  }
  out += "100%\t" + std::to_string(histogram[10]) + "\n";
  out += "# mean\t" + FormatDouble(mean) + "\n";
  out += "# scored\t" + std::to_string(n_scored) + "\n";
  out += "# skipped\t" + std::to_string(n_skipped) + "\n";
  return out;
}

}  // namespace sitk
