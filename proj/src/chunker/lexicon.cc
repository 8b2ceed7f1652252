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

#include "sitk/lexicon.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "sitk/error.h"
#include "sitk/io.h"
#include "sitk/text.h"

namespace sitk {

extern const char kDefaultLexiconText[];

namespace {

std::map<std::string, std::set<std::string> Lexicon::*> ClassTable() {
  return {
      {"subordinating_conjunctions", &Lexicon::subordinating_conjunctions},
      {"coordinating_conjunctions", &Lexicon::coordinating_conjunctions},
      {"relative_pronouns", &Lexicon::relative_pronouns},
      {"prepositions", &Lexicon::prepositions},
      {"demonstratives", &Lexicon::demonstratives},
      {"adverbial_heads", &Lexicon::adverbial_heads},
      {"subject_pronouns", &Lexicon::subject_pronouns},
      {"finite_verbs", &Lexicon::finite_verbs},
      {"gerund_exceptions", &Lexicon::gerund_exceptions},
  };
}

bool IsLowercase(const std::string &word) {
  return std::none_of(word.begin(), word.end(), [](unsigned char c) {
    return std::isupper(c) != 0;
  });
}

}  // namespace

Lexicon Lexicon::Parse(std::string_view text) {
  const auto table = ClassTable();
  Lexicon lexicon;
  std::set<std::string> *current = nullptr;
  std::set<std::string> seen_classes;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    line = NormalizeWhitespace(line);
    if (line.empty()) continue;
    if (line.rfind("#class", 0) == 0) {
      const auto parts = SplitWhitespace(line);
      if (parts.size() != 2) {
        throw ParseError("lexicon", line_number, "expected \"#class <name>\"");
      }
      auto it = table.find(parts[1]);
      if (it == table.end()) {
        throw ParseError("lexicon", line_number,
                         "unknown class \"" + parts[1] + "\"");
      }
      current = &(lexicon.*(it->second));
      seen_classes.insert(parts[1]);
      continue;
    }
    if (line[0] == '#') continue;
    if (current == nullptr) {
      throw ParseError("lexicon", line_number, "word outside of a #class");
    }
    if (line.find(' ') != std::string::npos) {
      throw ParseError("lexicon", line_number, "one word per line");
    }
    current->insert(line);
  }
  for (const auto &[name, member] : table) {
    if (!seen_classes.count(name)) {
      throw DataError("lexicon is missing class \"" + name + "\"");
    }
  }
  lexicon.Validate();
  return lexicon;
}

Lexicon Lexicon::Load(const std::filesystem::path &path) {
  return Parse(ReadFile(path));
}

const Lexicon &Lexicon::Default() {
  static const Lexicon lexicon = Parse(kDefaultLexiconText);
  return lexicon;
}

void Lexicon::Validate() const {
  for (const auto &[name, member] : ClassTable()) {
    const auto &words = this->*member;
    if (words.empty()) throw DataError("lexicon class " + name + " is empty");
    for (const auto &word : words) {
      if (!IsLowercase(word)) {
        throw DataError("lexicon word \"" + word + "\" is not lowercase");
      }
    }
  }
  if (punctuation_boundary.empty()) {
    throw DataError("lexicon has no boundary punctuation");
  }
  const std::pair<const std::set<std::string> *, const std::set<std::string> *>
      disjoint[] = {
          {&subordinating_conjunctions, &coordinating_conjunctions},
          {&subordinating_conjunctions, &relative_pronouns},
          {&coordinating_conjunctions, &relative_pronouns},
      };
  for (const auto &[a, b] : disjoint) {
    for (const auto &word : *a) {
      if (b->count(word)) {
        throw DataError("lexicon word \"" + word +
                        "\" appears in two exclusive classes");
      }
    }
  }
}

}  // namespace sitk
