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

#include "sitk/response.h"

#include "json.hpp"

namespace sitk {
namespace {

using nlohmann::json;

std::vector<std::string> StringArray(const json &j, const char *key) {
  const json &value = j.at(key);
  if (!value.is_array()) {
    throw ResponseError(ViolationCode::kMalformedResponse,
                        std::string("\"") + key + "\" is not an array");
  }
  std::vector<std::string> out;
  out.reserve(value.size());
  for (const auto &item : value) {
    if (!item.is_string()) {
      throw ResponseError(ViolationCode::kMalformedResponse,
                          std::string("\"") + key + "\" holds a non-string");
    }
    out.push_back(item.get<std::string>());
  }
  return out;
}

}  // namespace

ParsedResponse ParseResponse(std::string_view raw) {
  json j;
  try {
    j = json::parse(raw);
  } catch (const json::parse_error &e) {
    throw ResponseError(ViolationCode::kMalformedResponse,
                        std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) {
    throw ResponseError(ViolationCode::kMalformedResponse,
                        "response is not a JSON object");
  }
  for (const char *key : {"chunks", "chunk_translations", "final_text"}) {
    if (!j.contains(key)) {
      throw ResponseError(ViolationCode::kMissingKey,
                          std::string("missing key \"") + key + "\"");
    }
  }
  if (j.size() != 3) {
    throw ResponseError(ViolationCode::kMalformedResponse,
                        "response has keys outside the schema");
  }
  ParsedResponse out;
  out.chunks = StringArray(j, "chunks");
  out.chunk_translations = StringArray(j, "chunk_translations");
  if (!j.at("final_text").is_string()) {
    throw ResponseError(ViolationCode::kMalformedResponse,
                        "\"final_text\" is not a string");
  }
  out.final_text = j.at("final_text").get<std::string>();
  if (out.chunks.size() != out.chunk_translations.size()) {
    out.issues.Add(ViolationCode::kLengthMismatch, std::nullopt,
                   std::to_string(out.chunks.size()) + " chunks but " +
                       std::to_string(out.chunk_translations.size()) +
                       " chunk translations");
  }
  return out;
}

}  // namespace sitk
