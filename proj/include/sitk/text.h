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

#ifndef SITK_TEXT_H_
#define SITK_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

namespace sitk {

// Collapses runs of whitespace to a single ASCII space and strips both ends.
std::string NormalizeWhitespace(std::string_view text);

// Unicode NFC. Throws DataError on invalid UTF-8.
std::string NormalizeNfc(std::string_view text);

// NFC followed by whitespace normalization. Every text field read from a
// corpus goes through this.
std::string NormalizeText(std::string_view text);

bool IsValidUtf8(std::string_view text);

// Code point conversion. Decoding throws DataError on invalid UTF-8.
std::u32string DecodeUtf8(std::string_view text);
std::string EncodeUtf8(std::u32string_view text);

std::vector<std::string> SplitWhitespace(std::string_view text);

// The Unicode whitespace set (ASCII controls 9-13 and 28-31, space, U+0085,
// U+00A0, U+1680, U+2000-U+200A, U+2028, U+2029, U+202F, U+205F, U+3000).
bool IsUnicodeSpace(char32_t c);
std::vector<std::u32string> SplitUnicodeWhitespace(std::u32string_view text);

// Removes every IsUnicodeSpace code point.
std::u32string StripWhitespace(std::u32string_view text);

}  // namespace sitk

#endif  // SITK_TEXT_H_
