// Copyright 2026 The GemFrame Authors.
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

#ifndef GEMFRAME_ERROR_H_
#define GEMFRAME_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gemframe {

// Rejected input. Carries the byte offset of the failure and, where the
// input is line-oriented, the 1-based line number (0 when unknown).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, size_t position, size_t line = 0)
      : std::runtime_error(Format(what, position, line)),
        position_(position),
        line_(line) {}

  size_t position() const { return position_; }
  size_t line() const { return line_; }

 private:
  static std::string Format(const std::string& what, size_t position,
                            size_t line) {
    if (line > 0) return "line " + std::to_string(line) + ": " + what;
    return "byte " + std::to_string(position) + ": " + what;
  }

  size_t position_;
  size_t line_;
};

// Structurally well-formed input that violates a model invariant.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A broken internal invariant. Indicates a bug, not bad input.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace gemframe

#endif  // GEMFRAME_ERROR_H_
