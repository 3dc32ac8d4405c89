// Copyright 2026 The qpath Authors
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


#ifndef QPATH_CLI_H_
#define QPATH_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "qpath/compiler.h"

namespace qpath {

enum ExitCode : int {
    kExitPass = 0,
    kExitFail = 1,
    kExitUsage = 2,
    kExitResourceCap = 3,
};

/// Entry point for the `qpath` tool. `args` excludes the program name.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

/// Parses [[[re, im], ...], ...] (plain numbers are taken as real). Throws
/// std::invalid_argument on ragged or malformed input.
CMatrix parse_unitary_json(const std::string &text);
std::string unitary_to_json(const CMatrix &u);

}  // namespace qpath

#endif  // QPATH_CLI_H_
