// Copyright 2026 The lofock Authors
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
#include <string_view>

namespace lofock {

enum class ErrorCode {
  ParseError,
  InvariantViolation,
  IoError,
  UnboundVariable,
  BadModeCount,
  ModeListMismatch,
  ModeOutOfRange,
  SameMode,
  OutOfRange,
  EmptyState,
  ShapeMismatch,
  DimensionMismatch,
  UnsupportedConversion,
  NonNormalOrderedPoly,
  BadElement,
  ZeroNorm,
  SymbolicNormUnsupported,
  DivisionByZeroTrace,
  NotBipartite,
  NonHermitianInput,
  NegativeEigenvalueBeyondTolerance,
  MixedMode,
  ComplexCoefficient,
  Overflow,
};

std::string_view to_string(ErrorCode code);

// Parse and validation failures (including a missing variable binding) map
// to exit code 2; everything else is a runtime (math) failure and maps to 3.
bool is_input_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const noexcept { return code_; }
  /// The message without the leading code name.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t position, std::string expected,
             std::string_view input = {});
  std::size_t position() const noexcept { return position_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t position_;
  std::string expected_;
};

}  // namespace lofock
