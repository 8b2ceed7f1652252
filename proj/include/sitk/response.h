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

#ifndef SITK_RESPONSE_H_
#define SITK_RESPONSE_H_

#include <string>
#include <string_view>
#include <vector>

#include "sitk/corpus.h"
#include "sitk/error.h"

namespace sitk {

// The documented response schema:
//   {"chunks": [string], "chunk_translations": [string], "final_text": string}
// No other keys are accepted and no value is coerced.
struct ParsedResponse {
  std::vector<std::string> chunks;
  std::vector<std::string> chunk_translations;
  std::string final_text;
  // Non-fatal findings (currently LENGTH_MISMATCH).
  ValidationReport issues;
};

// Raised for responses that cannot be turned into a record at all. `code` is
// kMalformedResponse or kMissingKey.
class ResponseError : public DataError {
 public:
  ResponseError(ViolationCode code, const std::string &message)
      : DataError(message), code_(code) {}
  ViolationCode code() const { return code_; }

 private:
  ViolationCode code_;
};

ParsedResponse ParseResponse(std::string_view raw);

}  // namespace sitk

#endif  // SITK_RESPONSE_H_
