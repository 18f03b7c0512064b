// Copyright 2026 The smallvalues Authors
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

#ifndef SMALLVALUES_ERRORS_HPP_
#define SMALLVALUES_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace smallvalues {

// Base of every exception thrown by the library. The C API maps each
// subclass onto one sv_status code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text: decimal literals, certificate files, instance files.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}
  explicit ParseError(const std::string& what)
      : Error(what), position_(std::string::npos) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// A value outside the domain of an operation (delta outside (0,1), E <= 0,
// division by zero, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Inconsistent configuration: schedule length mismatch, bad flag values.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// No admissible parameter exists (e.g. no E1 on the grid below a threshold).
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

// A chain step whose guard inequality or progress requirement fails.
class RejectedStep : public Error {
 public:
  RejectedStep(std::string guard, const std::string& what)
      : Error(what), guard_(std::move(guard)) {}

  const std::string& guard() const { return guard_; }

 private:
  std::string guard_;
};

}  // namespace smallvalues

#endif  // SMALLVALUES_ERRORS_HPP_
