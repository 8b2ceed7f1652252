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

#include "sitk/cache.h"

#include <openssl/evp.h>

#include <chrono>
#include <mutex>

#include "json.hpp"
#include "sitk/error.h"
#include "sitk/io.h"

namespace sitk {

std::string Sha256Hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(),
                 nullptr) != 1) {
    throw Error("SHA-256 failed");
  }
  static const char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xf];
  }
  return out;
}

ResponseCache::ResponseCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw IoError("cannot create cache dir " + dir_.string() + ": " + ec.message());
}

std::string ResponseCache::Key(std::string_view model_id,
                               std::string_view prompt) {
  std::string material;
  material.reserve(model_id.size() + prompt.size() + 1);
  material.append(model_id);
  material += '\n';
  material.append(prompt);
  return Sha256Hex(material);
}

std::filesystem::path ResponseCache::PathFor(const std::string &key) const {
  return dir_ / (key + ".json");
}

std::optional<CacheEntry> ResponseCache::Get(std::string_view model_id,
                                             std::string_view prompt) const {
  const std::string key = Key(model_id, prompt);
  const auto path = PathFor(key);
  std::string text;
  {
    std::shared_lock lock(mu_);
    if (!std::filesystem::exists(path)) return std::nullopt;
    text = ReadFile(path);
  }
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception &) {
    return std::nullopt;  // torn or foreign file: treat as a miss
  }
  if (!j.is_object() || j.value("key", "") != key ||
      j.value("model_id", "") != model_id || !j.contains("response")) {
    return std::nullopt;
  }
  CacheEntry entry;
  entry.key = key;
  entry.model_id = std::string(model_id);
  entry.response = j.at("response").get<std::string>();
  entry.created_at = j.value("created_at", int64_t{0});
  return entry;
}

void ResponseCache::Put(std::string_view model_id, std::string_view prompt,
                        std::string_view response) {
  const std::string key = Key(model_id, prompt);
  const int64_t now = std::chrono::duration_cast<std::chrono::seconds>(
                          std::chrono::system_clock::now().time_since_epoch())
                          .count();
  nlohmann::json j = {{"key", key},
                      {"model_id", model_id},
                      {"response", response},
                      {"created_at", now}};
  std::unique_lock lock(mu_);
  WriteFileAtomic(PathFor(key), j.dump() + "\n");
}

}  // namespace sitk
