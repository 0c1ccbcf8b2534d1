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

#ifndef DCRV_ERROR_H_
#define DCRV_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace dcrv {

// Every failure raised by the library carries one of these codes. The CLI
// maps them onto exit codes and serializes error_name() verbatim.
enum class ErrorCode {
  kSumNotOne,
  kOutOfRange,
  kTooFewCategories,
  kIndexOutOfRange,
  kInvalidCounts,
  kCountOutOfRange,
  kTableTooLarge,
  kNonFinite,
  kDegenerateVariance,
  kBadPosition,
  kBadPositions,
  kInvalidSequence,
  kSequenceTooLong,
  kUOutOfRange,
  kEnumerationTooLarge,
  kDegenerateCells,
};

std::string_view error_name(ErrorCode code);

// True for errors caused by a configured size cap rather than bad input.
bool is_resource_cap(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }
  std::string_view name() const { return error_name(code_); }
  // what() without the leading "<name>: ".
  const std::string& message() const { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
};

}  // namespace dcrv

#endif  // DCRV_ERROR_H_
