// Copyright 2026 The smti-mech Authors
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

#include <ostream>
#include <string>
#include <vector>

namespace smti {

/// Exit codes of run_cli.
enum ExitCode : int {
  kExitOk = 0,
  kExitMismatch = 1,   // demo: computed result differs from the expected one
  kExitUsage = 2,      // bad flags, unreadable or malformed input, search caps
  kExitPrecondition = 3,
};

/// Runs one CLI invocation. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace smti
