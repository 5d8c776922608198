// Copyright 2026 The hmojpeg Authors
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

//
// The hmojpeg command line.

#ifndef HMOJPEG_CLI_H_
#define HMOJPEG_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace hmojpeg {

enum ExitCode : int {
  kExitOk = 0,
  kExitRuntime = 1,
  kExitUsage = 2,
  kExitIo = 3,
  kExitSchema = 4,
  kExitUnsupportedFormat = 5,
  kExitInvalidArgument = 6,
  kExitDecode = 7,
};

// Runs one command. args[0] is the program name.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

// Parses "lo:hi:n" into n geometrically spaced values from lo to hi.
std::vector<double> ParseBetaRange(const std::string& range);

}  // namespace hmojpeg

#endif  // HMOJPEG_CLI_H_
