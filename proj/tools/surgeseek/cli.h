// Copyright 2026 The Surgeseek Authors
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

#ifndef SURGESEEK_TOOLS_CLI_H_
#define SURGESEEK_TOOLS_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace surgeseek::cli {

// Exit codes. Failures also print one line "error: <kind>: <message>" to err.
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kBadScenario = 2,
  kRunFailed = 3,
  kIoFailed = 4,
  kCheckFailed = 5,
};

// Runs one invocation; args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace surgeseek::cli

#endif  // SURGESEEK_TOOLS_CLI_H_
