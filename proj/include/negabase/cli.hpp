// Copyright 2026 The negabase Authors.
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

#ifndef NEGABASE_CLI_HPP
#define NEGABASE_CLI_HPP

#include <string>
#include <vector>

#include "negabase/field.hpp"

namespace negabase::cli {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

struct CommandResult {
  int exit_code = kExitOk;
  std::string out;
  std::string err;
};

/// Runs one command; `args` excludes the program name.
CommandResult run_command(const std::vector<std::string>& args);

/// "tribonacci" or "cubic:m[,n]"; throws std::invalid_argument otherwise.
CubicBase parse_base(const std::string& selector);

}  // namespace negabase::cli

#endif  // NEGABASE_CLI_HPP
