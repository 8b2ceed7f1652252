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

#ifndef SITK_ERROR_H_
#define SITK_ERROR_H_

#include <stdexcept>
#include <string>

namespace sitk {

// Base class for all toolkit errors. The CLI maps subclasses onto exit codes:
// IoError -> 1, DataError -> 2, UserAbort -> 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File system and transport failures.
class IoError : public Error {
 public:
  using Error::Error;
};

// Malformed or inconsistent input data (bad records, bad config, bad
// arguments).
class DataError : public Error {
 public:
  using Error::Error;
};

// A parse failure tied to a line of an input file. Line numbers are 1-based.
class ParseError : public DataError {
 public:
  ParseError(const std::string &path, int line, const std::string &message)
      : DataError(path + ":" + std::to_string(line) + ": " + message),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

// The user declined to proceed (e.g. a cost confirmation was not given).
class UserAbort : public Error {
 public:
  using Error::Error;
};

}  // namespace sitk

#endif  // SITK_ERROR_H_
