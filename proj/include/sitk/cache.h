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

#ifndef SITK_CACHE_H_
#define SITK_CACHE_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>

namespace sitk {

// Lowercase hex SHA-256.
std::string Sha256Hex(std::string_view data);

struct CacheEntry {
  std::string key;
  std::string model_id;
  std::string response;
  int64_t created_at = 0;  // unix seconds
};

// Content-addressed response store: one JSON file per entry, named by
// Sha256Hex(model_id + '\n' + prompt). Lookups verify the stored model id, so
// entries never leak across models. Concurrent readers, serialized writers.
class ResponseCache {
 public:
  explicit ResponseCache(std::filesystem::path dir);

  static std::string Key(std::string_view model_id, std::string_view prompt);

  std::optional<CacheEntry> Get(std::string_view model_id,
                                std::string_view prompt) const;
  // Overwrites any existing entry atomically.
  void Put(std::string_view model_id, std::string_view prompt,
           std::string_view response);

  const std::filesystem::path &dir() const { return dir_; }

 private:
  std::filesystem::path PathFor(const std::string &key) const;

  std::filesystem::path dir_;
  mutable std::shared_mutex mu_;
};

}  // namespace sitk

#endif  // SITK_CACHE_H_
