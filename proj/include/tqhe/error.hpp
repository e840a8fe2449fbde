// Copyright 2026 The tqhe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace tqhe {

/// Bad input to a library call: dimension mismatch, non-finite angle,
/// non-unitary matrix where one is required.
class InvalidArgument : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// A qubit label or key entry that does not exist.
class NotFound : public std::out_of_range {
  public:
    using std::out_of_range::out_of_range;
};

/// A party received something the protocol does not allow at that point.
class ProtocolViolation : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

/// Key generation could not satisfy its constraints within the retry budget.
class GenerationFailure : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed scenario text; carries the 1-based line number, or 0 when the
/// problem is with the document as a whole.
class ParseError : public std::runtime_error {
  public:
    ParseError(int line, const std::string &what)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    int line() const noexcept { return line_; }

  private:
    int line_;
};

}  // namespace tqhe
