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

#include <algorithm>
#include <cctype>
#include <optional>

#include "sitk/error.h"
#include "sitk/text.h"

namespace sitk {
namespace {

constexpr std::string_view kDetachable = ",;:.!?";

// Gerunds must be longer than the bare suffix ("ing", "king" is excluded by
// the lexicon anyway).
constexpr size_t kMinGerundLength = 5;

// R1 for a subordinating conjunction that doubles as a preposition ("after",
// "before") needs a finite verb within this many tokens.
constexpr int kClauseWindow = 6;

// R2 needs at least this many words after the head, before the next boundary.
constexpr int kMinR2Following = 3;

// R3 needs at least this many tokens in front of the first finite verb.
constexpr int kMinSubjectTokens = 3;

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char &c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool IsPunctuation(std::string_view token) {
  if (token.empty()) return false;
  if (token == "—" || token == "–" || token == "…") return true;
  return std::all_of(token.begin(), token.end(), [](unsigned char c) {
    return c < 0x80 && std::ispunct(c);
  });
}

// Per-sentence view of the tokens with lexicon lookups precomputed.
class RuleEngine {
 public:
  RuleEngine(const std::vector<std::string> &tokens, const Lexicon &lexicon,
             const ChunkOptions &options, const std::vector<bool> &attached)
      : lexicon_(lexicon), options_(options), n_(static_cast<int>(tokens.size())) {
    lower_.reserve(tokens.size());
    for (const auto &t : tokens) lower_.push_back(Lower(t));
    punct_.reserve(tokens.size());
    for (const auto &t : tokens) punct_.push_back(IsPunctuation(t));
    attached_ = attached;
    attached_.resize(tokens.size(), false);
  }

  BoundaryMap Run() {
    if (n_ < 2) return {};
    ApplyR4();
    FindR1Candidates();

    // R3 looks at everything except relative-pronoun R1 boundaries, whose
    // survival depends on where the subject ends.
    BoundaryMap provisional = boundaries_;
    for (int gap : r1_conjunctions_) provisional[gap].insert(Rule::kR1);
    ApplyR5(provisional, r1_conjunctions_);
    const std::optional<int> subject_end = FindR3(provisional);

    for (int gap : r1_conjunctions_) Add(gap, Rule::kR1);
    std::vector<int> clause_starts = r1_conjunctions_;
    for (int gap : r1_relatives_) {
      // A relative clause inside the subject modifies the subject.
      if (subject_end && gap < *subject_end) continue;
      Add(gap, Rule::kR1);
      clause_starts.push_back(gap);
    }
    if (subject_end) Add(*subject_end, Rule::kR3);
    ApplyR5(boundaries_, clause_starts);

    if (options_.apply_r2) ApplyR2();
    return std::move(boundaries_);
  }

 private:
  bool In(const std::set<std::string> &set, int i) const {
    return i >= 0 && i < n_ && set.count(lower_[i]) > 0;
  }
  bool IsWord(int i) const { return i >= 0 && i < n_ && !punct_[i]; }
  bool IsFiniteVerb(int i) const {
    return IsWord(i) && In(lexicon_.finite_verbs, i) &&
           !In(lexicon_.prepositions, i);
  }
  bool IsPhraseHead(int i) const {
    return IsWord(i) &&
           (In(lexicon_.prepositions, i) || In(lexicon_.adverbial_heads, i));
  }
  bool IsConjunction(int i) const {
    return In(lexicon_.subordinating_conjunctions, i) ||
           In(lexicon_.coordinating_conjunctions, i);
  }
  bool IsGerund(int i) const {
    const std::string &w = lower_[i];
    return IsWord(i) && w.size() >= kMinGerundLength &&
           w.compare(w.size() - 3, 3, "ing") == 0 &&
           !In(lexicon_.gerund_exceptions, i);
  }
  bool IsBoundaryPunct(int i) const {
    return i >= 0 && i < n_ && lexicon_.punctuation_boundary.count(lower_[i]);
  }
  bool IsDash(int i) const {
    return IsBoundaryPunct(i) && lower_[i] != "," && lower_[i] != ";" &&
           lower_[i] != ":";
  }
  bool HasWordFrom(int i) const {
    for (int j = i; j < n_; ++j) {
      if (IsWord(j)) return true;
    }
    return false;
  }
  bool ValidGap(int gap) const { return gap >= 1 && gap < n_ && !attached_[gap]; }

  void Add(int gap, Rule rule) {
    if (ValidGap(gap)) boundaries_[gap].insert(rule);
  }

  // Commas between single words that are themselves next to commas form a
  // list ("red , green , blue") and do not split.
  bool IsListComma(int i) const {
    if (lower_[i] != ",") return false;
    if (!IsWord(i - 1) || !IsWord(i + 1)) return false;
    return (i - 2 >= 0 && lower_[i - 2] == ",") ||
           (i + 2 < n_ && lower_[i + 2] == ",");
  }

  // R4: after , ; : and before dashes.
  void ApplyR4() {
    for (int i = 0; i < n_; ++i) {
      if (!IsBoundaryPunct(i)) continue;
      if (IsDash(i)) {
        if (i > 0 && HasWordFrom(i + 1)) Add(i, Rule::kR4);
        continue;
      }
      if (IsListComma(i)) continue;
      if (HasWordFrom(i + 1)) Add(i + 1, Rule::kR4);
    }
  }

  bool IntroducesClause(int i) const {
    for (int j = i + 1; j < n_ && j <= i + kClauseWindow; ++j) {
      if (IsBoundaryPunct(j)) return false;
      if (IsFiniteVerb(j)) return true;
    }
    return false;
  }

  // R1: before a conjunction or relative pronoun that opens a clause.
  void FindR1Candidates() {
    for (int j = 1; j < n_; ++j) {
      if (!IsWord(j) || !HasWordFrom(j + 1)) continue;
      if (In(lexicon_.subordinating_conjunctions, j)) {
        if (!In(lexicon_.prepositions, j) || IntroducesClause(j)) {
          r1_conjunctions_.push_back(j);
        }
      } else if (In(lexicon_.coordinating_conjunctions, j)) {
        if (IsFiniteVerb(j + 1) || In(lexicon_.subject_pronouns, j + 1)) {
          r1_conjunctions_.push_back(j);
        }
      } else if (In(lexicon_.relative_pronouns, j)) {
        r1_relatives_.push_back(j);
      }
    }
  }

  // R5 has two triggers:
  //  (a) a phrase head right after a clause-opening conjunction or relative
  //      pronoun, or after a sentence-initial conjunction ("And | in 2010");
  //  (b) a sentence- or clause-initial prepositional/adverbial phrase is
  //      closed before the subject pronoun that follows it
  //      ("In 2010 | we launched").
  void ApplyR5(BoundaryMap &target, const std::vector<int> &clause_starts) const {
    auto add = [&](int gap) {
      if (ValidGap(gap)) target[gap].insert(Rule::kR5);
    };
    std::vector<int> starts = {0};
    for (int gap : clause_starts) {
      starts.push_back(gap);
      if (IsPhraseHead(gap + 1)) add(gap + 1);
    }
    if (IsConjunction(0) && IsPhraseHead(1)) add(1);

    for (int start : starts) {
      int head = start;
      if (IsConjunction(head) || In(lexicon_.relative_pronouns, head)) ++head;
      if (!IsPhraseHead(head)) continue;
      for (int p = head + 1; p < n_; ++p) {
        if (IsFiniteVerb(p)) break;
        if (In(lexicon_.subject_pronouns, p) && IsWord(p)) {
          add(p);
          break;
        }
        // Stop at any boundary already inside the phrase, except one sitting
        // exactly on the subject.
        if (target.count(p) && !In(lexicon_.subject_pronouns, p)) break;
      }
    }
  }

  // R3: before the first finite verb when the subject in front of it has at
  // least three tokens and nothing split the sentence earlier. A verb right
  // after a relative pronoun belongs to the relative clause and is skipped.
  std::optional<int> FindR3(const BoundaryMap &earlier) const {
    bool skip_next_verb = false;
    for (int i = 0; i < n_; ++i) {
      if (In(lexicon_.relative_pronouns, i) && i > 0) {
        skip_next_verb = true;
        continue;
      }
      if (!IsFiniteVerb(i)) continue;
      if (skip_next_verb) {
        skip_next_verb = false;
        continue;
      }
      int words = 0;
      for (int j = 0; j < i; ++j) words += IsWord(j) ? 1 : 0;
      if (words < kMinSubjectTokens) return std::nullopt;
      auto first = earlier.begin();
      if (first != earlier.end() && first->first < i) return std::nullopt;
      if (!ValidGap(i)) return std::nullopt;
      return i;
    }
    return std::nullopt;
  }

  bool IsR2Head(int j) const {
    if (!IsWord(j)) return false;
    // "to" + anything but a preposition is an infinitive; other prepositions
    // head prepositional phrases. Both trigger the same way.
    return In(lexicon_.prepositions, j) || IsGerund(j);
  }

  int NextBoundary(int gap) const {
    auto it = boundaries_.upper_bound(gap);
    return it == boundaries_.end() ? n_ : it->first;
  }
  int PrevBoundary(int gap) const {
    auto it = boundaries_.lower_bound(gap);
    if (it == boundaries_.begin()) return 0;
    return std::prev(it)->first;
  }

  // R2, last and right to left: before an infinitive, preposition or gerund
  // followed by at least three words up to the next boundary.
  void ApplyR2() {
    for (int j = n_ - 1; j >= 1; --j) {
      if (!IsR2Head(j) || !ValidGap(j)) continue;
      const int next = NextBoundary(j);
      int following = 0;
      for (int k = j + 1; k < next; ++k) following += IsWord(k) ? 1 : 0;
      if (following < kMinR2Following) continue;
      if (boundaries_.count(j)) {
        boundaries_[j].insert(Rule::kR2);
        continue;
      }
      const int prev = PrevBoundary(j);
      if (j - prev < options_.min_chunk_tokens) continue;
      if (next - j < options_.min_chunk_tokens) continue;
      boundaries_[j].insert(Rule::kR2);
    }
  }

  const Lexicon &lexicon_;
  const ChunkOptions &options_;
  const int n_;
  std::vector<std::string> lower_;
  std::vector<bool> punct_;
  std::vector<bool> attached_;
  BoundaryMap boundaries_;
  std::vector<int> r1_conjunctions_;
  std::vector<int> r1_relatives_;
};

}  // namespace

std::string_view RuleName(Rule rule) {
  switch (rule) {
    case Rule::kR1: return "R1";
    case Rule::kR2: return "R2";
    case Rule::kR3: return "R3";
    case Rule::kR4: return "R4";
    case Rule::kR5: return "R5";
    case Rule::kLlm: return "LLM";
  }
  return "?";
}

Rule ParseRule(std::string_view name) {
  for (Rule r : {Rule::kR1, Rule::kR2, Rule::kR3, Rule::kR4, Rule::kR5,
                 Rule::kLlm}) {
    if (RuleName(r) == name) return r;
  }
  throw DataError("unknown rule \"" + std::string(name) + "\"");
}

std::vector<Token> TokenizeWithOffsets(std::string_view text) {
  std::vector<Token> tokens;
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j == i) break;
    size_t stem_end = j;
    while (stem_end - i > 1 && kDetachable.find(text[stem_end - 1]) != std::string_view::npos) {
      --stem_end;
    }
    tokens.push_back({std::string(text.substr(i, stem_end - i)), i, stem_end, false});
    for (size_t k = stem_end; k < j; ++k) {
      tokens.push_back({std::string(1, text[k]), k, k + 1, true});
    }
    i = j;
  }
  return tokens;
}

std::vector<std::string> Tokenize(std::string_view text) {
  std::vector<std::string> out;
  for (auto &t : TokenizeWithOffsets(text)) out.push_back(std::move(t.text));
  return out;
}

BoundaryMap DetectBoundaries(const std::vector<std::string> &tokens,
                             const Lexicon &lexicon,
                             const ChunkOptions &options,
                             const std::vector<bool> &attached) {
  return RuleEngine(tokens, lexicon, options, attached).Run();
}

std::vector<std::string> ChunkedSentence::ChunkTexts() const {
  std::vector<std::string> texts;
  for (const auto &c : chunks) texts.push_back(c.text);
  return texts;
}

ChunkedSentence ChunkSentence(std::string_view text,
                              const ChunkOptions &options,
                              const Lexicon &lexicon) {
  ChunkedSentence out;
  out.source_text = NormalizeText(text);
  if (out.source_text.empty()) throw DataError("cannot chunk empty text");
  const std::vector<Token> tokens = TokenizeWithOffsets(out.source_text);
  std::vector<bool> attached;
  for (const auto &t : tokens) {
    out.tokens.push_back(t.text);
    attached.push_back(t.attached);
  }
  const BoundaryMap boundaries =
      DetectBoundaries(out.tokens, lexicon, options, attached);

  std::vector<std::pair<int, RuleSet>> starts = {{0, {}}};
  for (const auto &[gap, rules] : boundaries) starts.emplace_back(gap, rules);
  const int n = static_cast<int>(tokens.size());
  for (size_t c = 0; c < starts.size(); ++c) {
    Chunk chunk;
    chunk.index = static_cast<int>(c);
    chunk.begin = starts[c].first;
    chunk.end = c + 1 < starts.size() ? starts[c + 1].first : n;
    chunk.fired_rules = starts[c].second;
    const size_t from = tokens[chunk.begin].begin;
    const size_t to = tokens[chunk.end - 1].end;
    chunk.text = out.source_text.substr(from, to - from);
    out.chunks.push_back(std::move(chunk));
  }
  return out;
}

void CheckPartition(const ChunkedSentence &sentence) {
  int expected_begin = 0;
  std::string joined;
  for (size_t i = 0; i < sentence.chunks.size(); ++i) {
    const Chunk &c = sentence.chunks[i];
    if (c.index != static_cast<int>(i)) throw DataError("chunk index out of order");
    if (c.begin != expected_begin) throw DataError("chunk spans leave a gap");
    if (c.end <= c.begin) throw DataError("empty chunk");
    if (i > 0 && c.fired_rules.empty()) throw DataError("untagged boundary");
    expected_begin = c.end;
    if (!joined.empty()) joined.push_back(' ');
    joined += c.text;
  }
  if (expected_begin != static_cast<int>(sentence.tokens.size())) {
    throw DataError("chunks do not cover every token");
  }
  if (NormalizeWhitespace(joined) != sentence.source_text) {
    throw DataError("chunk texts do not reproduce the source");
  }
}

ChunkedCorpus ChunkCorpus(const Corpus &corpus, const ChunkOptions &options,
                          const Lexicon &lexicon) {
  ChunkedCorpus out;
  for (size_t i = 0; i < corpus.pairs.size(); ++i) {
    const auto &pair = corpus.pairs[i];
    try {
      out.sentences.push_back(ChunkSentence(pair.source_text, options, lexicon));
      out.ids.push_back(pair.id);
    } catch (const Error &e) {
      out.failures.push_back({i, pair.id, e.what()});
    }
  }
  return out;
}

nlohmann::json ToJson(const ChunkedSentence &sentence, std::string_view id) {
  nlohmann::json chunks = nlohmann::json::array();
  for (const auto &c : sentence.chunks) {
    std::vector<std::string> rules;
    for (Rule r : c.fired_rules) rules.emplace_back(RuleName(r));
    chunks.push_back({{"index", c.index},
                      {"span", {c.begin, c.end}},
                      {"text", c.text},
                      {"fired_rules", rules}});
  }
  return {{"id", id},
          {"source_text", sentence.source_text},
          {"tokens", sentence.tokens},
          {"chunks", std::move(chunks)}};
}

}  // namespace sitk
