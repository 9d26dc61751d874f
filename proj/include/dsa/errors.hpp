/*
 * Copyright 2026 The DSA Toolkit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef DSA_ERRORS_HPP_
#define DSA_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dsa {

// Base of every error thrown by the library. Callers that only need to
// report a failure can catch this; the CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FieldMismatch : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class ParamsOutOfModel : public Error {
 public:
  using Error::Error;
};

class ConstructionFailed : public Error {
 public:
  ConstructionFailed(const std::string& what, unsigned long long first_seed,
                     unsigned long long last_seed)
      : Error(what), first_seed_(first_seed), last_seed_(last_seed) {}

  unsigned long long first_seed() const { return first_seed_; }
  unsigned long long last_seed() const { return last_seed_; }

 private:
  unsigned long long first_seed_;
  unsigned long long last_seed_;
};

class MissingMessage : public Error {
 public:
  using Error::Error;
};

class LayoutMismatch : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class InvalidCollusionSet : public Error {
 public:
  using Error::Error;
};

class NotInfeasibleRegime : public Error {
 public:
  using Error::Error;
};

// Malformed scheme, transcript or input file. line() is 1-based; 0 means the
// problem is not attributable to a single line (e.g. truncated file).
class FormatError : public Error {
 public:
  FormatError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace dsa

#endif  // DSA_ERRORS_HPP_
