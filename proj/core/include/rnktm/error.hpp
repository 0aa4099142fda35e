// Copyright 2026 The rnktm Authors.
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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rnktm {

// Base of everything the library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller-supplied input violates a documented precondition or invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A persisted file does not follow its declared layout.
class FormatError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Text input (BVH, manifest CSV) failed to parse; carries the 1-based line.
class ParseError : public ValidationError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : ValidationError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Computation produced a non-finite value or a geometric degeneracy.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace rnktm
