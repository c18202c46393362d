// Copyright 2026 The Erratum Authors.
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

// The erratum command-line tool, callable in-process.

#ifndef ERRATUM_TOOLS_CLI_H_
#define ERRATUM_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace erratum::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// `args` excludes the program name. Data goes to files or `out`, every
// diagnostic to `err`. Reads ERRATUM_SEED and ERRATUM_CONFIG.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace erratum::cli

#endif  // ERRATUM_TOOLS_CLI_H_
