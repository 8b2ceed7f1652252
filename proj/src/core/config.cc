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

#include "sitk/config.h"

#include <charconv>
#include <sstream>

#include "sitk/error.h"
#include "sitk/io.h"
#include "sitk/text.h"

namespace sitk {
namespace {

std::string Trim(std::string_view s) {
  const size_t b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return "";
  const size_t e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

bool ParseInt(std::string_view s, int64_t &out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

std::vector<int> ParseIntList(std::string_view text) {
  const std::string t = Trim(text);
  std::vector<int> out;
  if (t.find(':') != std::string::npos) {
    std::vector<int64_t> parts;
    std::stringstream ss(t);
    std::string part;
    while (std::getline(ss, part, ':')) {
      int64_t v;
      if (!ParseInt(Trim(part), v)) throw DataError("bad range \"" + t + "\"");
      parts.push_back(v);
    }
    if (parts.size() != 3 || parts[2] <= 0 || parts[1] < parts[0]) {
      throw DataError("range must be start:end:step with step > 0");
    }
    for (int64_t v = parts[0]; v <= parts[1]; v += parts[2]) {
      out.push_back(static_cast<int>(v));
    }
    return out;
  }
  std::stringstream ss(t);
  std::string part;
  while (std::getline(ss, part, ',')) {
    int64_t v;
    if (!ParseInt(Trim(part), v)) throw DataError("bad integer list \"" + t + "\"");
    out.push_back(static_cast<int>(v));
  }
  if (out.empty()) throw DataError("empty integer list");
  return out;
}

KeyValueConfig KeyValueConfig::Parse(std::string_view text, std::string name) {
  KeyValueConfig config;
  config.name_ = std::move(name);
  std::istringstream in{std::string(text)};
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const std::string t = Trim(line);
    if (t.empty() || t[0] == '#') continue;
    const size_t eq = t.find('=');
    if (eq == std::string::npos) {
      throw ParseError(config.name_, line_number, "expected key = value");
    }
    const std::string key = Trim(std::string_view(t).substr(0, eq));
    const std::string value = Trim(std::string_view(t).substr(eq + 1));
    if (key.empty()) throw ParseError(config.name_, line_number, "empty key");
    if (config.values_.count(key)) {
      throw ParseError(config.name_, line_number, "duplicate key \"" + key + "\"");
    }
    config.values_[key] = {value, line_number};
  }
  return config;
}

KeyValueConfig KeyValueConfig::Load(const std::filesystem::path &path) {
  return Parse(ReadFile(path), path.string());
}

void KeyValueConfig::RequireKnownKeys(
    const std::set<std::string> &allowed) const {
  for (const auto &[key, entry] : values_) {
    if (!allowed.count(key)) {
      throw ParseError(name_, entry.line, "unknown key \"" + key + "\"");
    }
  }
}

std::optional<std::string> KeyValueConfig::Get(const std::string &key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second.value;
}

void KeyValueConfig::Bad(const std::string &key, const char *what) const {
  const auto &entry = values_.at(key);
  throw ParseError(name_, entry.line,
                   "\"" + key + "\" " + what + ", got \"" + entry.value + "\"");
}

std::string KeyValueConfig::GetString(const std::string &key,
                                      std::string fallback) const {
  auto v = Get(key);
  return v ? *v : std::move(fallback);
}

int64_t KeyValueConfig::GetInt(const std::string &key, int64_t fallback) const {
  auto v = Get(key);
  if (!v) return fallback;
  int64_t out;
  if (!ParseInt(*v, out)) Bad(key, "must be an integer");
  return out;
}

double KeyValueConfig::GetDouble(const std::string &key,
                                 double fallback) const {
  auto v = Get(key);
  if (!v) return fallback;
  double out;
  auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
  if (ec != std::errc() || ptr != v->data() + v->size()) {
    Bad(key, "must be a number");
  }
  return out;
}

bool KeyValueConfig::GetBool(const std::string &key, bool fallback) const {
  auto v = Get(key);
  if (!v) return fallback;
  if (*v == "true" || *v == "1" || *v == "yes") return true;
  if (*v == "false" || *v == "0" || *v == "no") return false;
  Bad(key, "must be true or false");
}

std::vector<int> KeyValueConfig::GetIntList(const std::string &key,
                                            std::vector<int> fallback) const {
  auto v = Get(key);
  if (!v) return fallback;
  try {
    return ParseIntList(*v);
  } catch (const DataError &) {
    Bad(key, "must be an integer list (1,3,5 or 1:35:2)");
  }
}

void KeyValueConfig::Set(const std::string &key, std::string value) {
  values_[key] = {std::move(value), 0};
}

}  // namespace sitk
