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

#include "sitk/prompt.h"

#include "sitk/error.h"
#include "sitk/io.h"
#include "sitk/text.h"

namespace sitk {

extern const char kDefaultPromptText[];

namespace {

size_t CountOccurrences(std::string_view haystack, std::string_view needle) {
  size_t count = 0;
  for (size_t pos = haystack.find(needle); pos != std::string_view::npos;
       pos = haystack.find(needle, pos + needle.size())) {
    ++count;
  }
  return count;
}

}  // namespace

const PromptTemplate &PromptTemplate::Default() {
  static const PromptTemplate tmpl = [] {
    PromptTemplate t{kDefaultPromptText, "v1"};
    t.Validate();
    return t;
  }();
  return tmpl;
}

PromptTemplate PromptTemplate::Load(const std::filesystem::path &path,
                                    std::string version) {
  PromptTemplate t{ReadFile(path), std::move(version)};
  t.Validate();
  return t;
}

void PromptTemplate::Validate() const {
  if (CountOccurrences(text, kSentencePlaceholder) != 1) {
    throw DataError("prompt template " + version +
                    " must contain {source_sentence} exactly once");
  }
  size_t last = 0;
  for (std::string_view step : {"Step 1", "Step 2", "Step 3"}) {
    const size_t pos = text.find(step, last);
    if (pos == std::string::npos) {
      throw DataError("prompt template " + version + " lacks \"" +
                      std::string(step) + "\" (in order)");
    }
    last = pos;
  }
  for (std::string_view key :
       {"JSON", "\"chunks\"", "\"chunk_translations\"", "\"final_text\""}) {
    if (text.find(key, last) == std::string::npos) {
      throw DataError("prompt template " + version +
                      " lacks the JSON output instruction (" +
                      std::string(key) + ")");
    }
  }
}

std::string BuildPrompt(std::string_view source_sentence,
                        const PromptTemplate &tmpl) {
  const std::string sentence = NormalizeWhitespace(source_sentence);
  if (sentence.empty()) throw DataError("cannot build a prompt for an empty sentence");
  const size_t pos = tmpl.text.find(kSentencePlaceholder);
  if (pos == std::string::npos) throw DataError("template has no placeholder");
  std::string out;
  out.reserve(tmpl.text.size() + sentence.size());
  out.append(tmpl.text, 0, pos);
  out.append(sentence);
  out.append(tmpl.text, pos + kSentencePlaceholder.size());
  return out;
}

}  // namespace sitk
