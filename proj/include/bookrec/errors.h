// Copyright 2026 The Bookrec Authors.
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


#ifndef BOOKREC_ERRORS_H_
#define BOOKREC_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bookrec {

// Malformed input file. line() is 1-based, 0 when not line-oriented.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                    : message),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// A rating outside the integer range 1..10.
class InvalidRating : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A (slot, token) pair that is not in the profile vocabulary.
class OutOfVocabulary : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

}  // namespace bookrec

#endif  // BOOKREC_ERRORS_H_
