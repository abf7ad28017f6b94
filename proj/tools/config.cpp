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

#include "config.hpp"

#include <cmath>
#include <sstream>

#include "chsh/error.hpp"

namespace chsh::cli {

ConfigReader::ConfigReader(Json config, std::set<std::string> allowed)
    : config_(std::move(config)) {
  if (!config_.is_object()) throw ParseError("config must be a JSON object");
  for (auto it = config_.begin(); it != config_.end(); ++it) {
    if (!allowed.count(it.key())) {
      std::ostringstream os;
      os << "unknown config key \"" << it.key() << "\" (allowed:";
      for (const auto& k : allowed) os << ' ' << k;
      os << ')';
      throw ParseError(os.str());
    }
  }
}

std::uint64_t ConfigReader::u64(const std::string& key, std::uint64_t fallback, std::uint64_t min,
                                std::uint64_t max) {
  std::uint64_t v = fallback;
  if (config_.contains(key)) {
    const Json& j = config_[key];
    if (j.is_number_unsigned()) {
      v = j.get<std::uint64_t>();
    } else if (j.is_number_integer()) {
      throw ParseError("config \"" + key + "\" must be nonnegative");
    } else {
      throw ParseError("config \"" + key + "\" must be an integer");
    }
  }
  if (v < min || v > max) {
    std::ostringstream os;
    os << "config \"" << key << "\" = " << v << " outside [" << min << ", " << max << "]";
    throw ParseError(os.str());
  }
  echo_[key] = v;
  return v;
}

double ConfigReader::real(const std::string& key, double fallback, double min, double max) {
  double v = fallback;
  if (config_.contains(key)) {
    const Json& j = config_[key];
    if (!j.is_number()) throw ParseError("config \"" + key + "\" must be a number");
    v = j.get<double>();
  }
  if (!std::isfinite(v) || v < min || v > max) {
    std::ostringstream os;
    os << "config \"" << key << "\" = " << v << " outside [" << min << ", " << max << "]";
    throw ParseError(os.str());
  }
  echo_[key] = v;
  return v;
}

bool ConfigReader::boolean(const std::string& key, bool fallback) {
  bool v = fallback;
  if (config_.contains(key)) {
    if (!config_[key].is_boolean()) throw ParseError("config \"" + key + "\" must be a boolean");
    v = config_[key].get<bool>();
  }
  echo_[key] = v;
  return v;
}

std::string ConfigReader::string(const std::string& key, const std::string& fallback) {
  auto v = optional_string(key);
  if (!v) {
    echo_[key] = fallback;
    return fallback;
  }
  return *v;
}

std::optional<std::string> ConfigReader::optional_string(const std::string& key) {
  if (!config_.contains(key)) return std::nullopt;
  if (!config_[key].is_string()) throw ParseError("config \"" + key + "\" must be a string");
  std::string v = config_[key].get<std::string>();
  echo_[key] = v;
  return v;
}

std::optional<Json> ConfigReader::raw(const std::string& key) {
  if (!config_.contains(key)) return std::nullopt;
  echo_[key] = config_[key];
  return config_[key];
}

Json load_config(const std::string& path) {
  if (path.empty()) return Json::object();
  return read_json_file(path);
}

}  // namespace chsh::cli
