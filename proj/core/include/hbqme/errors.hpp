// Copyright 2026 The hbqme Authors
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

#include <stdexcept>
#include <string>

namespace hbqme {

/// A parameter or argument lies outside its admissible domain. The offending
/// parameter name is kept separately so callers can report it verbatim.
class DomainError : public std::invalid_argument {
 public:
  DomainError(std::string parameter, const std::string& message)
      : std::invalid_argument(parameter + ": " + message),
        parameter_(std::move(parameter)) {}

  const std::string& parameter() const noexcept { return parameter_; }

 private:
  std::string parameter_;
};

/// A configuration document is malformed: missing, unknown or mistyped key.
/// parameter() holds the dotted key path.
class ConfigError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Time stepping produced a non-physical or non-finite state.
class IntegrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The generator has no well-defined long-time limit for the given input.
class SteadyStateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hbqme
