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

#include "lofock/error.hpp"

namespace lofock {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::UnboundVariable: return "UnboundVariable";
    case ErrorCode::BadModeCount: return "BadModeCount";
    case ErrorCode::ModeListMismatch: return "ModeListMismatch";
    case ErrorCode::ModeOutOfRange: return "ModeOutOfRange";
    case ErrorCode::SameMode: return "SameMode";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::EmptyState: return "EmptyState";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::UnsupportedConversion: return "UnsupportedConversion";
    case ErrorCode::NonNormalOrderedPoly: return "NonNormalOrderedPoly";
    case ErrorCode::BadElement: return "BadElement";
    case ErrorCode::ZeroNorm: return "ZeroNorm";
    case ErrorCode::SymbolicNormUnsupported: return "SymbolicNormUnsupported";
    case ErrorCode::DivisionByZeroTrace: return "DivisionByZeroTrace";
    case ErrorCode::NotBipartite: return "NotBipartite";
    case ErrorCode::NonHermitianInput: return "NonHermitianInput";
    case ErrorCode::NegativeEigenvalueBeyondTolerance:
      return "NegativeEigenvalueBeyondTolerance";
    case ErrorCode::MixedMode: return "MixedMode";
    case ErrorCode::ComplexCoefficient: return "ComplexCoefficient";
    case ErrorCode::Overflow: return "Overflow";
  }
  return "Unknown";
}

bool is_input_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::InvariantViolation:
    case ErrorCode::IoError:
    case ErrorCode::UnboundVariable:
    case ErrorCode::BadModeCount:
    case ErrorCode::ModeListMismatch:
    case ErrorCode::ModeOutOfRange:
    case ErrorCode::SameMode:
    case ErrorCode::OutOfRange:
    case ErrorCode::BadElement:
    case ErrorCode::UnsupportedConversion:
    case ErrorCode::NonNormalOrderedPoly:
    case ErrorCode::MixedMode:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      detail_(message) {}

namespace {
std::string parse_message(std::size_t position, const std::string& expected,
                          std::string_view input) {
  std::string msg = "at position " + std::to_string(position) + ", expected " +
                    expected;
  if (!input.empty()) msg += " in \"" + std::string(input) + "\"";
  return msg;
}
}  // namespace

ParseError::ParseError(std::size_t position, std::string expected,
                       std::string_view input)
    : Error(ErrorCode::ParseError, parse_message(position, expected, input)),
      position_(position),
      expected_(std::move(expected)) {}

}  // namespace lofock
