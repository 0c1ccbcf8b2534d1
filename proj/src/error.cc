// Copyright 2026 The dcrv Authors
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

#include "dcrv/error.h"

namespace dcrv {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSumNotOne: return "SumNotOne";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kTooFewCategories: return "TooFewCategories";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kInvalidCounts: return "InvalidCounts";
    case ErrorCode::kCountOutOfRange: return "CountOutOfRange";
    case ErrorCode::kTableTooLarge: return "TableTooLarge";
    case ErrorCode::kNonFinite: return "NonFinite";
    case ErrorCode::kDegenerateVariance: return "DegenerateVariance";
    case ErrorCode::kBadPosition: return "BadPosition";
    case ErrorCode::kBadPositions: return "BadPositions";
    case ErrorCode::kInvalidSequence: return "InvalidSequence";
    case ErrorCode::kSequenceTooLong: return "SequenceTooLong";
    case ErrorCode::kUOutOfRange: return "UOutOfRange";
    case ErrorCode::kEnumerationTooLarge: return "EnumerationTooLarge";
    case ErrorCode::kDegenerateCells: return "DegenerateCells";
  }
  return "Unknown";
}

bool is_resource_cap(ErrorCode code) {
  return code == ErrorCode::kTableTooLarge ||
         code == ErrorCode::kEnumerationTooLarge ||
         code == ErrorCode::kSequenceTooLong;
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_name(code)) + ": " + message),
      code_(code),
      message_(message) {}

}  // namespace dcrv
