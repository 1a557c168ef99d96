// Copyright 2026 The curvsir Authors.
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

#ifndef CURVSIR_ERROR_HPP_
#define CURVSIR_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace curvsir {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad graph, bad config key, inconsistent parameters.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Text file could not be parsed. `line()` is 1-based; 0 when not applicable.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// A numerical procedure failed: non-convergence, NaN, empty bracket.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Argument outside the domain of a mathematical function (e.g. log of 0).
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace curvsir

#endif  // CURVSIR_ERROR_HPP_
