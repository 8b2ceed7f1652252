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

#ifndef SITK_LOG_H_
#define SITK_LOG_H_

#include <string_view>

namespace sitk {

enum class LogLevel { kDebug = 0, kInfo = 1, kWarning = 2, kError = 3, kSilent = 4 };

// Messages below the threshold are dropped. Default: kWarning.
void SetLogLevel(LogLevel level);
LogLevel GetLogLevel();

// Thread-safe, one line per call, written to stderr.
void Log(LogLevel level, std::string_view message);

}  // namespace sitk

#endif  // SITK_LOG_H_
