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

#ifndef DCRV_TOOLS_CLI_H_
#define DCRV_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace dcrv::cli {

enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailed = 1,
  kInvalidInput = 2,
  kResourceCap = 3,
};

// Runs the `dcrv` command line. `args` excludes the program name. Command
// output goes to `out` (or the --output file); errors are written to `err`
// as a single JSON object {"error": <name>, "message": <text>}.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace dcrv::cli

#endif  // DCRV_TOOLS_CLI_H_
