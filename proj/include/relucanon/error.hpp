// Copyright 2026 The relucanon Authors
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
#include <string_view>

namespace relucanon {

enum class ErrorCode {
  kZeroVector,
  kDimensionMismatch,
  kLengthMismatch,
  kDegenerateNeuron,
  kNonPositiveScale,
  kEnumerationCapExceeded,
  kEqualDirections,
  kCapExceeded,
  kParseError,
  kNotFlat,
  kNotLocallyAffine,
  kInvalidInput,
};

inline std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kZeroVector: return "ZeroVector";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kDegenerateNeuron: return "DegenerateNeuron";
    case ErrorCode::kNonPositiveScale: return "NonPositiveScale";
    case ErrorCode::kEnumerationCapExceeded: return "EnumerationCapExceeded";
    case ErrorCode::kEqualDirections: return "EqualDirections";
    case ErrorCode::kCapExceeded: return "CapExceeded";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kNotFlat: return "NotFlat";
    case ErrorCode::kNotLocallyAffine: return "NotLocallyAffine";
    case ErrorCode::kInvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

// All library failures are reported through this exception. `index()` carries
// the offending neuron/term/character position where one exists, else -1.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, long index = -1)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code),
        index_(index) {}

  ErrorCode code() const noexcept { return code_; }
  long index() const noexcept { return index_; }

 private:
  ErrorCode code_;
  long index_;
};

}  // namespace relucanon
