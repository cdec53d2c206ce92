// Copyright 2026 The gfb Authors
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

#ifndef GFB_ERROR_HPP
#define GFB_ERROR_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace gfb {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed model, partition or expression text. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// A value, node kind or operation that is not legal for the domain at hand.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A configured size limit was exceeded (support cutoff, term cap, state space).
/// Callers usually react by switching to another backend.
class LimitError : public Error {
 public:
  using Error::Error;
};

/// The lumped vector field could not be written over block variables.
class LumpingError : public Error {
 public:
  LumpingError(const std::string& message, std::vector<std::string> offending)
      : Error(message), offending_(std::move(offending)) {}

  const std::vector<std::string>& offending_monomials() const { return offending_; }

 private:
  std::vector<std::string> offending_;
};

}  // namespace gfb

#endif
