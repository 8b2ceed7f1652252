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

#include "sitk/alignment.h"

#include <cmath>
#include <limits>

#include "sitk/text.h"

namespace sitk {
namespace {

size_t Budget(size_t length, double ratio) {
  return static_cast<size_t>(std::floor(static_cast<double>(length) * ratio + 1e-9));
}

}  // namespace

std::optional<Span> FindFuzzy(std::u32string_view text,
                              std::u32string_view pattern, size_t from,
                              double ratio) {
  const size_t m = pattern.size();
  const size_t budget = Budget(m, ratio);
  if (from > text.size()) return std::nullopt;
  if (m <= budget) return Span{from, from};

  // Sellers' column recurrence; start[i] remembers where the cheapest
  // alignment of pattern[0, i) began.
  std::vector<size_t> cost(m + 1), start(m + 1, from);
  std::vector<size_t> prev_cost(m + 1), prev_start(m + 1);
  for (size_t i = 0; i <= m; ++i) cost[i] = i;

  std::optional<Span> best;
  size_t best_cost = std::numeric_limits<size_t>::max();
  size_t horizon = text.size();
  for (size_t j = from; j < text.size() && j < horizon; ++j) {
    prev_cost.swap(cost);
    prev_start.swap(start);
    cost[0] = 0;
    start[0] = j + 1;
    for (size_t i = 1; i <= m; ++i) {
      size_t c = prev_cost[i - 1] + (pattern[i - 1] == text[j] ? 0 : 1);
      size_t s = prev_start[i - 1];
      auto consider = [&](size_t cc, size_t ss) {
        if (cc < c || (cc == c && ss > s)) {
          c = cc;
          s = ss;
        }
      };
      consider(cost[i - 1] + 1, start[i - 1]);
      consider(prev_cost[i] + 1, prev_start[i]);
      cost[i] = c;
      start[i] = s;
    }
    if (cost[m] <= budget && cost[m] < best_cost) {
      // First acceptable end found: look a few positions further for a
      // cheaper alignment so trailing characters are not cut off.
      if (!best) horizon = std::min(text.size(), j + 1 + budget);
      best = Span{start[m], j + 1};
      best_cost = cost[m];
      if (best_cost == 0) break;
    }
  }
  return best;
}

ChunkAlignment AlignInOrder(const std::vector<std::string> &pieces,
                            std::string_view final_text, double ratio) {
  ChunkAlignment out;
  out.total = pieces.size();
  out.text = StripWhitespace(DecodeUtf8(final_text));

  std::vector<std::u32string> stripped;
  stripped.reserve(pieces.size());
  for (const auto &p : pieces) stripped.push_back(StripWhitespace(DecodeUtf8(p)));

  // frontier[j]: smallest end position of a chain of j in-order matches.
  constexpr size_t kNone = std::numeric_limits<size_t>::max();
  std::vector<size_t> frontier(pieces.size() + 1, kNone);
  frontier[0] = 0;
  // Spans of the all-pieces chain; it exists iff frontier[i] is set for
  // every prefix i, and then it equals the greedy earliest-end walk.
  std::vector<Span> spans;
  for (size_t i = 0; i < stripped.size(); ++i) {
    for (size_t j = i + 1; j-- > 0;) {
      if (frontier[j] == kNone) continue;
      const auto hit = FindFuzzy(out.text, stripped[i], frontier[j], ratio);
      if (!hit) continue;
      if (hit->end < frontier[j + 1]) frontier[j + 1] = hit->end;
      if (j == i && spans.size() == i) spans.push_back(*hit);
    }
  }
  for (size_t j = pieces.size() + 1; j-- > 0;) {
    if (frontier[j] != kNone) {
      out.matched = j;
      break;
    }
  }
  if (out.complete()) out.spans = std::move(spans);
  return out;
}

}  // namespace sitk
