// Copyright 2026 The qfalab Authors
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

#ifndef QFALAB_CLI_H
#define QFALAB_CLI_H

#include <iosfwd>
#include <string>
#include <vector>

namespace qfalab {

/// Process exit codes of the qfalab tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitFailed = 1,          // recognition or encoding check failed, or a run aborted
    kExitInvalidParams = 2,   // bad flags, values or input files
    kExitConstruction = 3,    // a built automaton did not pass its checks
};

/// Runs the command line `args` (without the program name), writing normal
/// output to `out` and diagnostics to `err`. Returns the exit code.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace qfalab

#endif
