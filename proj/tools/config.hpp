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

// Run configuration: a JSON object per command with a fixed key set.
// Every accessor records the effective value so reports can echo the
// configuration that was actually used.

#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>

#include "chsh/serialize.hpp"

namespace chsh::cli {

class ConfigReader {
 public:
  // Throws ParseError on any key outside `allowed`.
  ConfigReader(Json config, std::set<std::string> allowed);

  bool has(const std::string& key) const { return config_.contains(key); }

  std::uint64_t u64(const std::string& key, std::uint64_t fallback, std::uint64_t min,
                    std::uint64_t max);
  double real(const std::string& key, double fallback, double min, double max);
  bool boolean(const std::string& key, bool fallback);
  std::string string(const std::string& key, const std::string& fallback);
  std::optional<std::string> optional_string(const std::string& key);
  // Raw value, echoed verbatim.
  std::optional<Json> raw(const std::string& key);

  // Override from a command-line flag; validated like the config value.
  void set(const std::string& key, Json value) { config_[key] = std::move(value); }

  const Json& echo() const { return echo_; }

 private:
  Json config_;
  Json echo_ = Json::object();
};

// Parses a config file, or returns an empty object for an empty path.
Json load_config(const std::string& path);

}  // namespace chsh::cli
