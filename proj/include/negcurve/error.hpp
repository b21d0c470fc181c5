// Copyright 2026 The negcurve Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS-IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef NEGCURVE_ERROR_HPP_
#define NEGCURVE_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace negcurve {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: wrong dimensions, zero vectors, bad documents.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// A Gram matrix whose real signature is not (1, rank - 1).
class SignatureError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

// An operation was called outside its documented domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Two caps with coincident feet (angular distance 0).
class DegeneratePairError : public DomainError {
 public:
  DegeneratePairError(std::size_t first, std::size_t second,
                      const std::string& what)
      : DomainError(what), first_(first), second_(second) {}
  std::size_t first() const { return first_; }
  std::size_t second() const { return second_; }

 private:
  std::size_t first_;
  std::size_t second_;
};

// A family rejected by a pipeline stage. Names the offending pair and
// condition so callers can report it.
class InvalidFamilyError : public Error {
 public:
  InvalidFamilyError(std::size_t first, std::size_t second,
                     std::string condition, const std::string& what)
      : Error(what),
        first_(first),
        second_(second),
        condition_(std::move(condition)) {}
  std::size_t first() const { return first_; }
  std::size_t second() const { return second_; }
  const std::string& condition() const { return condition_; }

 private:
  std::size_t first_;
  std::size_t second_;
  std::string condition_;
};

// Integer overflow or a floating-point computation that lost its meaning.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace negcurve

#endif  // NEGCURVE_ERROR_HPP_
