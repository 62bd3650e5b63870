// Copyright 2026 The topp Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     https://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TOPP_CLI_HPP_
#define TOPP_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace topp {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitInfeasible = 1;
inline constexpr int kExitFailure = 2;
inline constexpr int kExitUsage = 3;

// args[0] is the program name. Subcommands: solve, mvc, switch, oracle,
// batch, validate. Returns one of the exit codes above; validate returns
// kExitInfeasible when the profile violates the constraints.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace topp

#endif  // TOPP_CLI_HPP_
