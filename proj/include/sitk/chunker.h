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

#ifndef SITK_CHUNKER_H_
#define SITK_CHUNKER_H_

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sitk/corpus.h"
#include "sitk/lexicon.h"

namespace sitk {

// Chunk-boundary rules. kLlm marks boundaries that came from an LLM chunking
// rather than from this chunker.
enum class Rule { kR1, kR2, kR3, kR4, kR5, kLlm };

std::string_view RuleName(Rule rule);
Rule ParseRule(std::string_view name);

using RuleSet = std::set<Rule>;

// A token and its byte span in the (normalized) text it came from.
// `attached` is true when no whitespace separates it from the previous token.
struct Token {
  std::string text;
  size_t begin = 0;
  size_t end = 0;
  bool attached = false;
};

// Whitespace split with trailing , ; : . ! ? peeled off as separate tokens.
std::vector<std::string> Tokenize(std::string_view text);
std::vector<Token> TokenizeWithOffsets(std::string_view text);

struct ChunkOptions {
  bool apply_r2 = true;
  int min_chunk_tokens = 1;
};

// Gap g sits between tokens[g - 1] and tokens[g]; valid gaps are
// 1..tokens.size() - 1. Each gap maps to every rule that fired there.
using BoundaryMap = std::map<int, RuleSet>;

// Runs R4, R1, R5 and R3, then (optionally) R2 from right to left.
// `attached[i]` marks tokens glued to their predecessor; no boundary is placed
// in front of them. An empty `attached` means every gap is whitespace.
BoundaryMap DetectBoundaries(const std::vector<std::string> &tokens,
                             const Lexicon &lexicon,
                             const ChunkOptions &options = {},
                             const std::vector<bool> &attached = {});

struct Chunk {
  int index = 0;
  int begin = 0;  // token span [begin, end)
  int end = 0;
  std::string text;
  // Rules at the boundary that opens this chunk; empty for the first chunk.
  RuleSet fired_rules;

  bool operator==(const Chunk &) const = default;
};

struct ChunkedSentence {
  std::string source_text;  // normalized
  std::vector<std::string> tokens;
  std::vector<Chunk> chunks;

  std::vector<std::string> ChunkTexts() const;
  bool operator==(const ChunkedSentence &) const = default;
};

// Normalizes `text` and splits it into chunks. Throws DataError when the text
// is empty after normalization.
ChunkedSentence ChunkSentence(std::string_view text,
                              const ChunkOptions &options = {},
                              const Lexicon &lexicon = Lexicon::Default());

// Throws DataError if `sentence` violates the partition invariants.
void CheckPartition(const ChunkedSentence &sentence);

struct ChunkFailure {
  size_t index;
  std::string id;
  std::string message;
};

struct ChunkedCorpus {
  // One entry per pair that chunked successfully, in corpus order.
  std::vector<std::string> ids;
  std::vector<ChunkedSentence> sentences;
  std::vector<ChunkFailure> failures;
};

ChunkedCorpus ChunkCorpus(const Corpus &corpus, const ChunkOptions &options = {},
                          const Lexicon &lexicon = Lexicon::Default());

nlohmann::json ToJson(const ChunkedSentence &sentence, std::string_view id);

}  // namespace sitk

#endif  // SITK_CHUNKER_H_
