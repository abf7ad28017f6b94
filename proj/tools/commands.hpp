// Copyright 2026 The chshlab Authors
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

// Subcommands of the chshlab tool. Each takes its JSON configuration and
// returns a report; main() handles flags, output and exit codes.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "chsh/serialize.hpp"

namespace chsh::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

enum class Format { kJson, kCsv };

struct Options {
  std::string command;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> preset;
  std::string out;  // empty: no report file; "-": standard output
  Format format = Format::kJson;
  unsigned workers = 1;
};

struct CommandResult {
  Json report = Json::object();  // command-specific fields
  std::string csv;
  std::vector<std::string> summary;
  std::vector<std::string> warnings;
  bool passed = true;
};

std::vector<std::string> command_names();

// Runs one command end to end. Returns the exit code.
int run(const Options& options, std::ostream& out, std::ostream& err);

// Default worker count from CHSHLAB_WORKERS, else 1.
unsigned default_workers();

}  // namespace chsh::cli
