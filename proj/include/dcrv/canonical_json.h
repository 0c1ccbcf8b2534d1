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

#ifndef DCRV_CANONICAL_JSON_H_
#define DCRV_CANONICAL_JSON_H_

#include <string>

#include "json.hpp"

namespace dcrv {

// Compact JSON with sorted object keys and every floating value printed as
// "%.17g" (negative zero as 0, non-finite as null). Parsing the output and
// dumping it again reproduces the same bytes.
std::string canonical_dump(const nlohmann::json& value);

// The number format used by canonical_dump, shared with CSV output.
std::string format_double(double value);

}  // namespace dcrv

#endif  // DCRV_CANONICAL_JSON_H_
