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

#include "sitk/chunker.h"

#include <gtest/gtest.h>

#include <random>

#include "sitk/error.h"

namespace sitk {
namespace {

using Texts = std::vector<std::string>;

constexpr const char *kAnonymous =
    "Groups like Anonymous have risen up over the last 12 months and have "
    "become a major player in the field of online attacks.";
constexpr const char *kRobinHood =
    "Back in New York, I am the head of development for a non-profit called "
    "Robin Hood.";

TEST(TokenizeTest, Empty) { EXPECT_TRUE(Tokenize("").empty()); }

TEST(TokenizeTest, DetachesTrailingPunctuation) {
  EXPECT_EQ(Tokenize("A few weeks later, the department"),
            (Texts{"A", "few", "weeks", "later", ",", "the", "department"}));
  EXPECT_EQ(Tokenize("Anonymous."), (Texts{"Anonymous", "."}));
  EXPECT_EQ(Tokenize("Really?!"), (Texts{"Really", "?", "!"}));
  EXPECT_EQ(Tokenize("non-profit , ok"), (Texts{"non-profit", ",", "ok"}));
}

TEST(TokenizeTest, OffsetsPointIntoText) {
  const std::string text = "Hi, you.";
  for (const auto &t : TokenizeWithOffsets(text)) {
    EXPECT_EQ(text.substr(t.begin, t.end - t.begin), t.text);
  }
}

TEST(ChunkerTest, AnonymousSentenceMatchesReferenceSegmentation) {
  const ChunkedSentence s = ChunkSentence(kAnonymous);
  EXPECT_EQ(s.ChunkTexts(),
            (Texts{"Groups like Anonymous", "have risen up",
                   "over the last 12 months", "and have become a major player",
                   "in the field of online attacks."}));
  ASSERT_EQ(s.chunks.size(), 5u);
  EXPECT_EQ(s.chunks[1].fired_rules, RuleSet{Rule::kR3});
  EXPECT_EQ(s.chunks[2].fired_rules, RuleSet{Rule::kR2});
  EXPECT_EQ(s.chunks[3].fired_rules, RuleSet{Rule::kR1});
  EXPECT_EQ(s.chunks[4].fired_rules, RuleSet{Rule::kR2});
  CheckPartition(s);
}

TEST(ChunkerTest, DetectBoundariesOnPreTokenizedInput) {
  const auto tokens = Tokenize(
      "Groups like Anonymous have risen up over the last 12 months and have "
      "become a major player in the field of online attacks .");
  const BoundaryMap b = DetectBoundaries(tokens, Lexicon::Default());
  std::vector<int> gaps;
  for (const auto &[gap, rules] : b) gaps.push_back(gap);
  EXPECT_EQ(gaps, (std::vector<int>{3, 6, 11, 17}));
}

TEST(ChunkerTest, NoRuleFires) {
  EXPECT_TRUE(DetectBoundaries(Tokenize("I ran ."), Lexicon::Default()).empty());
  EXPECT_EQ(ChunkSentence("Hello.").chunks.size(), 1u);
}

TEST(ChunkerTest, RobinHoodDefaultOptions) {
  const ChunkedSentence s = ChunkSentence(kRobinHood);
  EXPECT_EQ(s.ChunkTexts(),
            (Texts{"Back in New York,", "I am the head of development",
                   "for a non-profit called Robin Hood."}));
  EXPECT_TRUE(s.chunks[1].fired_rules.count(Rule::kR4));
  EXPECT_EQ(s.chunks[2].fired_rules, RuleSet{Rule::kR2});
}

TEST(ChunkerTest, RobinHoodWithoutR2) {
  ChunkOptions options;
  options.apply_r2 = false;
  const ChunkedSentence s = ChunkSentence(kRobinHood, options);
  EXPECT_EQ(s.ChunkTexts(),
            (Texts{"Back in New York,",
                   "I am the head of development for a non-profit called "
                   "Robin Hood."}));
}

TEST(ChunkerTest, EmptyInputIsAnError) {
  EXPECT_THROW(ChunkSentence("   "), DataError);
}

TEST(ChunkerTest, RelativeClauseInsideSubjectDoesNotSplit) {
  const ChunkedSentence s = ChunkSentence("The man who lives here is tall.");
  EXPECT_EQ(s.ChunkTexts(), (Texts{"The man who lives here", "is tall."}));
  EXPECT_EQ(s.chunks[1].fired_rules, RuleSet{Rule::kR3});
}

TEST(ChunkerTest, SubordinatingConjunctionOpensChunk) {
  const ChunkedSentence s =
      ChunkSentence("I stayed home because it was raining.");
  EXPECT_EQ(s.ChunkTexts(), (Texts{"I stayed home", "because it was raining."}));
}

TEST(ChunkerTest, CoordinatedNounsDoNotSplit) {
  EXPECT_EQ(ChunkSentence("Cats and dogs sleep.").chunks.size(), 1u);
}

TEST(ChunkerTest, WordListCommasAreNotBoundaries) {
  const ChunkedSentence s = ChunkSentence("We bought red, green, blue paint.");
  EXPECT_EQ(s.chunks.size(), 1u);
}

TEST(ChunkerTest, InitialPrepositionalPhraseClosesBeforeSubject) {
  const ChunkedSentence s = ChunkSentence("In 2010 we launched it.");
  EXPECT_EQ(s.ChunkTexts(), (Texts{"In 2010", "we launched it."}));
  EXPECT_EQ(s.chunks[1].fired_rules, RuleSet{Rule::kR5});
}

TEST(ChunkerTest, DashStartsNewChunk) {
  const ChunkedSentence s = ChunkSentence("It was cold — very cold.");
  EXPECT_EQ(s.ChunkTexts(), (Texts{"It was cold", "— very cold."}));
  EXPECT_EQ(s.chunks[1].fired_rules, RuleSet{Rule::kR4});
}

TEST(ChunkerTest, MinChunkTokensSuppressesShortR2Chunks) {
  ChunkOptions options;
  options.min_chunk_tokens = 4;
  const ChunkedSentence s = ChunkSentence(kAnonymous, options);
  // "have risen up" has 3 tokens, so the R2 split before "over" is dropped.
  EXPECT_EQ(s.ChunkTexts(),
            (Texts{"Groups like Anonymous", "have risen up over the last 12 months",
                   "and have become a major player",
                   "in the field of online attacks."}));
}

TEST(ChunkerTest, AttachedPunctuationNeverStartsAChunk) {
  const ChunkedSentence s = ChunkSentence("Well,, I think so; maybe.");
  CheckPartition(s);
}

TEST(ChunkCorpusTest, PreservesOrder) {
  EXPECT_TRUE(ChunkCorpus(Corpus{}).sentences.empty());
  Corpus c;
  c.pairs.push_back({"b", "", Split::kTest, kAnonymous, {}, {}});
  c.pairs.push_back({"a", "", Split::kTest, "Hello.", {}, {}});
  const ChunkedCorpus out = ChunkCorpus(c);
  ASSERT_EQ(out.sentences.size(), 2u);
  EXPECT_EQ(out.ids, (Texts{"b", "a"}));
  EXPECT_EQ(out.sentences[0].chunks.size(), 5u);
  EXPECT_EQ(out.sentences[1].chunks.size(), 1u);
}

TEST(ChunkCorpusTest, CollectsFailuresWithoutStopping) {
  Corpus c;
  c.pairs.push_back({"ok", "", Split::kTest, "Hello.", {}, {}});
  c.pairs.push_back({"bad", "", Split::kTest, "", {}, {}});
  c.pairs.push_back({"ok2", "", Split::kTest, "Bye.", {}, {}});
  const ChunkedCorpus out = ChunkCorpus(c);
  EXPECT_EQ(out.sentences.size(), 2u);
  ASSERT_EQ(out.failures.size(), 1u);
  EXPECT_EQ(out.failures[0].id, "bad");
  EXPECT_EQ(out.failures[0].index, 1u);
}

TEST(LexiconTest, DefaultIsValid) {
  const Lexicon &lex = Lexicon::Default();
  EXPECT_NO_THROW(lex.Validate());
  EXPECT_TRUE(lex.prepositions.count("over"));
  EXPECT_TRUE(lex.relative_pronouns.count("which"));
}

TEST(LexiconTest, RejectsOverlapAndUppercase) {
  const std::string base =
      "#class subordinating_conjunctions\nbecause\n"
      "#class coordinating_conjunctions\nand\n"
      "#class relative_pronouns\nwhich\n"
      "#class prepositions\nin\n"
      "#class demonstratives\nthis\n"
      "#class adverbial_heads\nthen\n"
      "#class subject_pronouns\nwe\n"
      "#class finite_verbs\nis\n"
      "#class gerund_exceptions\nthing\n";
  EXPECT_NO_THROW(Lexicon::Parse(base));
  EXPECT_THROW(Lexicon::Parse(base + "#class relative_pronouns\nand\n"),
               DataError);
  EXPECT_THROW(Lexicon::Parse(base + "#class prepositions\nOver\n"), DataError);
  EXPECT_THROW(Lexicon::Parse(base + "#class nouns\ncat\n"), DataError);
  EXPECT_THROW(Lexicon::Parse("#class prepositions\nin\n"), DataError);
}

// Fuzzed sentences built from lexicon words, punctuation and filler.
std::string RandomSentence(std::mt19937 &rng) {
  static const char *vocab[] = {
      "the", "man", "who", "and", "because", "in", "over", "to", "running",
      "is", "have", "we", "I", ",", ";", "—", "-", "--", ":", "Back", "New",
      "York", "that", "which", "of", "for", "12", "months", "today", "then",
      "thing", "called", "a", "very", "long", "sentence", "..."};
  std::uniform_int_distribution<size_t> pick(0, std::size(vocab) - 1);
  std::uniform_int_distribution<int> len(1, 30), glue(0, 4);
  std::string s;
  for (int i = len(rng); i > 0; --i) {
    const std::string w = vocab[pick(rng)];
    if (!s.empty() && !(glue(rng) == 0 && w.size() == 1)) s += ' ';
    s += w;
  }
  if (glue(rng) < 3) s += '.';
  return s;
}

TEST(ChunkerPropertyTest, PartitionDeterminismAndRuleSubset) {
  std::mt19937 rng(2024);
  ChunkOptions no_r2;
  no_r2.apply_r2 = false;
  for (int trial = 0; trial < 500; ++trial) {
    const std::string text = RandomSentence(rng);
    const ChunkedSentence with = ChunkSentence(text);
    ASSERT_NO_THROW(CheckPartition(with)) << text;
    EXPECT_EQ(ChunkSentence(text), with) << text;

    const ChunkedSentence without = ChunkSentence(text, no_r2);
    ASSERT_NO_THROW(CheckPartition(without)) << text;
    EXPECT_LE(without.chunks.size(), with.chunks.size()) << text;
    // Every non-R2 boundary survives when R2 is enabled.
    for (size_t i = 1; i < without.chunks.size(); ++i) {
      const int gap = without.chunks[i].begin;
      bool found = false;
      for (const auto &c : with.chunks) found |= c.begin == gap;
      EXPECT_TRUE(found) << text << " gap " << gap;
    }
  }
}

}  // namespace
}  // namespace sitk
