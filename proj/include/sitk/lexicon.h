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

#ifndef SITK_LEXICON_H_
#define SITK_LEXICON_H_

#include <filesystem>
#include <set>
#include <string>
#include <string_view>

namespace sitk {

// Closed-class word lists the chunk-boundary rules quantify over.
//
// File format: one section per class introduced by a "#class <name>" line,
// followed by one lowercase word per line. Blank lines and lines starting
// with "# " are ignored. Unknown class names are rejected.
struct Lexicon {
  std::set<std::string> subordinating_conjunctions;
  std::set<std::string> coordinating_conjunctions;
  std::set<std::string> relative_pronouns;
  std::set<std::string> prepositions;
  std::set<std::string> demonstratives;
  std::set<std::string> adverbial_heads;
  std::set<std::string> subject_pronouns;
  std::set<std::string> finite_verbs;
  std::set<std::string> gerund_exceptions;
  std::set<std::string> punctuation_boundary = {",", ";", ":", "—",
                                                "–", "--", "-"};

  static Lexicon Parse(std::string_view text);
  static Lexicon Load(const std::filesystem::path &path);
  // The lexicon shipped in data/lexicon.txt, compiled in.
  static const Lexicon &Default();

  // Throws DataError unless every class is non-empty and lowercase, and the
  // two conjunction classes and the relative pronouns are pairwise disjoint.
  void Validate() const;
};

}  // namespace sitk

#endif  // SITK_LEXICON_H_
