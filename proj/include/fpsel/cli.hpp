// Copyright 2026 The Authors.
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

#ifndef FPSEL_CLI_HPP_
#define FPSEL_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace fpsel::cli {

// Parses and runs one invocation. Subcommands: target, general, minkey,
// stats, oracle, gen. Writes exactly one report document to --output
// ("-" = `out`). Exit codes: 0 success, 1 usage error, 2 data error,
// 3 enumeration budget exceeded.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace fpsel::cli

#endif  // FPSEL_CLI_HPP_
