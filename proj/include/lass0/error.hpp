// Copyright 2026 The lass0 Authors. All Rights Reserved.
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

#ifndef LASS0_ERROR_HPP
#define LASS0_ERROR_HPP

#include <stdexcept>
#include <string>

namespace lass0 {

enum class ErrorCode {
  kInvalidArgument,
  kDimensionMismatch,
  kConstantColumn,
  kInfeasible,
  kNotConverged,
  kDegenerateNoiseFit,
  kFitFailed,
  kEnumerationTooLarge,
  kUnboundedRatio,
  kSingularGram,
  kNotFound,
  kParseError,
  kTooManyFailures,
};

const char* to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so
// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code),
        detail_(what) {}

  ErrorCode code() const { return code_; }
  // Message without the code prefix.
  const std::string& detail() const { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kConstantColumn: return "ConstantColumn";
    case ErrorCode::kInfeasible: return "Infeasible";
    case ErrorCode::kNotConverged: return "NotConverged";
    case ErrorCode::kDegenerateNoiseFit: return "DegenerateNoiseFit";
    case ErrorCode::kFitFailed: return "FitFailed";
    case ErrorCode::kEnumerationTooLarge: return "EnumerationTooLarge";
    case ErrorCode::kUnboundedRatio: return "UnboundedRatio";
    case ErrorCode::kSingularGram: return "SingularGram";
    case ErrorCode::kNotFound: return "NotFound";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kTooManyFailures: return "TooManyFailures";
  }
  return "Unknown";
}

}  // namespace lass0

#endif  // LASS0_ERROR_HPP
