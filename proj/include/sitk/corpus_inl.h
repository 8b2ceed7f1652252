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

#ifndef SITK_CORPUS_INL_H_
#define SITK_CORPUS_INL_H_

#include <string>

#include "sitk/error.h"

namespace sitk {

template <typename Fn>
void ForEachJsonLine(std::istream &in, const std::string &name, Fn &&fn) {
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error &e) {
      throw ParseError(name, line_number, std::string("malformed JSON: ") +
                                              e.what());
    }
    if (!j.is_object()) {
      throw ParseError(name, line_number, "expected a JSON object");
    }
    try {
      fn(line_number, j);
    } catch (const ParseError &) {
      throw;
    } catch (const nlohmann::json::exception &e) {
      throw ParseError(name, line_number, e.what());
    } catch (const DataError &e) {
      throw ParseError(name, line_number, e.what());
    }
  }
}

}  // namespace sitk

#endif  // SITK_CORPUS_INL_H_
