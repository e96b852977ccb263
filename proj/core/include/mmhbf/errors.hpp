// SPDX-License-Identifier: Apache-2.0
//
// mmhbf: hybrid beamforming simulator for multi-cell millimeter-wave MIMO
// Copyright (C) 2026 The mmhbf authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef MMHBF_ERRORS_HPP
#define MMHBF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mmhbf {

// Error categories double as process exit codes for the CLI.
enum class ErrorCategory : int {
    Internal = 1,
    Configuration = 2,
    Io = 3,
    Numerical = 4,
    Dimension = 5,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorCategory category, const std::string &what) : std::runtime_error(what), category_(category) {}
    ErrorCategory category() const noexcept { return category_; }

  private:
    ErrorCategory category_;
};

class ConfigError : public Error {
  public:
    explicit ConfigError(const std::string &what) : Error(ErrorCategory::Configuration, what) {}
};

class IoError : public Error {
  public:
    explicit IoError(const std::string &what) : Error(ErrorCategory::Io, what) {}
};

class DimensionError : public Error {
  public:
    explicit DimensionError(const std::string &what) : Error(ErrorCategory::Dimension, what) {}
};

class DomainError : public Error {
  public:
    explicit DomainError(const std::string &what) : Error(ErrorCategory::Configuration, what) {}
};

// Iterative kernel hit its iteration cap.
class ConvergenceError : public Error {
  public:
    explicit ConvergenceError(const std::string &what) : Error(ErrorCategory::Numerical, what) {}
};

// Cholesky pivot was not strictly positive.
class DefinitenessError : public Error {
  public:
    explicit DefinitenessError(const std::string &what) : Error(ErrorCategory::Numerical, what) {}
};

} // namespace mmhbf

#endif
