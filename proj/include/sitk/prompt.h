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

#ifndef SITK_PROMPT_H_
#define SITK_PROMPT_H_

#include <filesystem>
#include <string>
#include <string_view>

namespace sitk {

inline constexpr std::string_view kSentencePlaceholder = "{source_sentence}";

// A prompt with exactly one {source_sentence} placeholder. A valid template
// carries the three step sections (chunking, chunk translation,
// concatenation), in that order, and the JSON output instruction naming the
// response keys.
struct PromptTemplate {
  std::string text;
  std::string version;

  // The versioned template shipped in data/prompt_v1.txt.
  static const PromptTemplate &Default();
  static PromptTemplate Load(const std::filesystem::path &path,
                             std::string version);

  // Throws DataError when a required section or the placeholder is missing.
  void Validate() const;
};

// Substitutes the sentence into the template. The sentence is inserted
// verbatim; braces inside it are not re-expanded. Throws DataError on an
// empty sentence.
std::string BuildPrompt(std::string_view source_sentence,
                        const PromptTemplate &tmpl = PromptTemplate::Default());

}  // namespace sitk

#endif  // SITK_PROMPT_H_
