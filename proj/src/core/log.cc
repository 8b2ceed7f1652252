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

#include "sitk/log.h"

#include <atomic>
#include <iostream>
#include <mutex>
#include <string>

namespace sitk {
namespace {

std::atomic<LogLevel> g_level{LogLevel::kWarning};
std::mutex g_mu;

const char *Tag(LogLevel level) {
  switch (level) {
    case LogLevel::kDebug: return "D";
    case LogLevel::kInfo: return "I";
    case LogLevel::kWarning: return "W";
    case LogLevel::kError: return "E";
    case LogLevel::kSilent: break;
  }
  return "?";
}

}  // namespace

void SetLogLevel(LogLevel level) { g_level = level; }
LogLevel GetLogLevel() { return g_level; }

void Log(LogLevel level, std::string_view message) {
  if (level < g_level || level == LogLevel::kSilent) return;
  std::string line = std::string("[sitk ") + Tag(level) + "] ";
  line.append(message);
  line += '\n';
  std::lock_guard<std::mutex> lock(g_mu);
  std::cerr << line;
}

}  // namespace sitk
