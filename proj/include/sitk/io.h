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

#ifndef SITK_IO_H_
#define SITK_IO_H_

#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>

namespace sitk {

// Both throw IoError when the file cannot be opened. Output files are opened
// in binary mode so line endings stay LF.
std::ifstream OpenInput(const std::filesystem::path &path);
std::ofstream OpenOutput(const std::filesystem::path &path);

std::string ReadFile(const std::filesystem::path &path);

// Writes to a sibling temporary file and renames it over `path`.
void WriteFileAtomic(const std::filesystem::path &path,
                     std::string_view contents);

// Shortest decimal form that round-trips to the same double.
std::string FormatDouble(double value);

}  // namespace sitk

#endif  // SITK_IO_H_
