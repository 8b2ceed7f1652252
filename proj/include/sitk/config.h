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

#ifndef SITK_CONFIG_H_
#define SITK_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace sitk {

// Plain-text configuration: one "key = value" per line, '#' starts a comment
// line, blank lines are ignored. Keys are unique. Typed getters throw
// DataError naming the key and line when a value does not parse.
class KeyValueConfig {
 public:
  static KeyValueConfig Parse(std::string_view text, std::string name);
  static KeyValueConfig Load(const std::filesystem::path &path);

  // Throws DataError listing the first key not in `allowed`.
  void RequireKnownKeys(const std::set<std::string> &allowed) const;

  bool Has(const std::string &key) const { return values_.count(key) > 0; }
  std::optional<std::string> Get(const std::string &key) const;

  std::string GetString(const std::string &key, std::string fallback) const;
  int64_t GetInt(const std::string &key, int64_t fallback) const;
  double GetDouble(const std::string &key, double fallback) const;
  bool GetBool(const std::string &key, bool fallback) const;
  // Comma-separated integers; "a:b:step" expands to an inclusive range.
  std::vector<int> GetIntList(const std::string &key,
                              std::vector<int> fallback) const;

  void Set(const std::string &key, std::string value);

 private:
  struct Entry {
    std::string value;
    int line = 0;
  };
  [[noreturn]] void Bad(const std::string &key, const char *what) const;

  std::string name_;
  std::map<std::string, Entry> values_;
};

// Parses "1,3,5" or "1:35:2" (inclusive range with step).
std::vector<int> ParseIntList(std::string_view text);

}  // namespace sitk

#endif  // SITK_CONFIG_H_
