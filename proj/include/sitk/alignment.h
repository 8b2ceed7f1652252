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

#ifndef SITK_ALIGNMENT_H_
#define SITK_ALIGNMENT_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sitk {

// Edit budget for fuzzy containment: a piece of length m may differ from the
// matched substring by at most floor(m * kDefaultFuzzyRatio) edits.
inline constexpr double kDefaultFuzzyRatio = 0.10;

// Half-open code point range.
struct Span {
  size_t begin = 0;
  size_t end = 0;
  bool operator==(const Span &) const = default;
};

// Finds the earliest-ending substring of `text` that starts at or after
// `from` and is within the edit budget of `pattern`. Among alignments ending
// at the same position the shortest is returned.
std::optional<Span> FindFuzzy(std::u32string_view text,
                              std::u32string_view pattern, size_t from,
                              double ratio = kDefaultFuzzyRatio);

// How the chunk translations of a record sit inside its final text. Both
// sides are compared with whitespace removed.
struct ChunkAlignment {
  size_t total = 0;
  // Length of the longest chain of pieces that match in order.
  size_t matched = 0;
  // Filled only when every piece matched in order.
  std::vector<Span> spans;
  std::u32string text;  // final text without whitespace

  bool complete() const { return matched == total; }
};

ChunkAlignment AlignInOrder(const std::vector<std::string> &pieces,
                            std::string_view final_text,
                            double ratio = kDefaultFuzzyRatio);

}  // namespace sitk

#endif  // SITK_ALIGNMENT_H_
