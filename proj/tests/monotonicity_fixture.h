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

#ifndef SITK_TESTS_MONOTONICITY_FIXTURE_H_
#define SITK_TESTS_MONOTONICITY_FIXTURE_H_

#include <string>
#include <vector>

#include "sitk/corpus.h"

namespace sitk::testing {

struct MonotonicityCase {
  std::string name;
  SIRecord record;
  std::string source_text;
  double expected_score;
};

inline MonotonicityCase MakeMonotonicityCase(std::string name, std::vector<std::string> chunks,
                                             std::vector<std::string> translations,
                                             std::string final_text, double expected) {
  MonotonicityCase c;
  c.name = std::move(name);
  c.record.source_id = c.name;
  c.record.model_id = "fixture";
  for (size_t i = 0; i < chunks.size(); ++i) {
    c.source_text += (i ? " " : "") + chunks[i];
  }
  c.record.chunks = std::move(chunks);
  c.record.chunk_translations = std::move(translations);
  c.record.final_text = std::move(final_text);
  c.expected_score = expected;
  return c;
}

// Hand-built records with their expected monotonicity scores.
inline std::vector<MonotonicityCase> MonotonicityFixture() {
  return {
      MakeMonotonicityCase("concat3", {"We walked", "to the station", "in the rain."},
                           {"私たちは歩いた", "駅まで", "雨の中を。"},
                           "私たちは歩いた駅まで雨の中を。", 1.0),
      MakeMonotonicityCase("swap2", {"Because the bus never came,", "we walked."},
                           {"バスが来なかったので", "私たちは歩いた。"},
                           "私たちは歩いた。バスが来なかったので", 0.5),
      MakeMonotonicityCase(
          "interleave",
          {"A few weeks later,", "the department", "received a letter", "from the homeowner",
           "thanking us", "for the valiant effort displayed in saving her home."},
          {"数週間後、", "その部門が", "手紙を受け取った", "自宅から所有者から",
           "それは、私たちに感謝の意を表すもので、",
           "彼女の家を救うために勇敢な努力がなされた。"},
          "数週間後、その部門が手紙を自宅から所有者から受け取った。"
          "それは、私たちに感謝の意を表すもので、彼女の家を救うために勇敢な努力がなされた。",
          5.0 / 6.0),
      MakeMonotonicityCase("connectors", {"It rained,", "so we stayed home."},
                           {"雨が降った", "私たちは家にいた"},
                           "雨が降った、だから私たちは家にいた。", 1.0),
      MakeMonotonicityCase("swap_of_four", {"First,", "the committee", "approved", "the plan."},
                           {"まず", "委員会は", "承認した", "その計画を"},
                           "まず委員会はその計画を承認した", 0.75),
      MakeMonotonicityCase("fuzzy", {"The researchers", "proposed a new method."},
                           {"研究者たちは国際会議で", "新しい方法を提案した"},
                           "研究者たちが国際会議で新しい方法を提案した", 1.0),
      MakeMonotonicityCase("reversed", {"one", "two", "three"}, {"いち", "に", "さん"},
                           "さんにいち", 1.0 / 3.0),
      MakeMonotonicityCase("single", {"Thank you."}, {"ありがとう。"}, "ありがとう。", 1.0),
      MakeMonotonicityCase("spaced", {"Tokyo,", "Osaka,", "Kyoto."}, {"東京", "大阪", "京都"},
                           "東京 大阪 京都", 1.0),
      MakeMonotonicityCase("excess_connector", {"He left,", "she stayed."}, {"彼は去った", "彼女は残った"},
                           "彼は去った。その後長い時間が経ってから、ようやく彼女は残った", 1.0),
      MakeMonotonicityCase("dropped_middle", {"In 2019,", "the team", "won the cup."},
                           {"2019年に", "そのチームは", "優勝した"}, "2019年に優勝した", 2.0 / 3.0),
  };
}

}  // namespace sitk::testing

#endif  // SITK_TESTS_MONOTONICITY_FIXTURE_H_
