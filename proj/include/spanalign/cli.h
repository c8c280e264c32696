// Copyright 2026 The spanalign Authors.
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

#ifndef SPANALIGN_CLI_H_
#define SPANALIGN_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace spanalign {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitIntegrity = 2;
inline constexpr int kExitScorer = 3;

inline constexpr unsigned long long kDefaultSeed = 13;

// Runs the spanalign command line. args excludes the program name. Reports
// and "-" outputs go to out; logs and errors go to err.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace spanalign

#endif  // SPANALIGN_CLI_H_
