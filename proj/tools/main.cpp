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

#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

const std::map<std::string, std::string>& descriptions() {
  static const std::map<std::string, std::string> k{
      {"landau-check", "Verify B^2 = I - [A1,A2][B1,B2]/4 for a scenario"},
      {"theorem1-scan", "Compare local incompatibility with violation over random scenarios"},
      {"chsh-run", "Simulate a CHSH experiment and extract the incompatibility norm"},
      {"pcsft-check", "Check classical-field averages against quantum expectations"},
      {"jpd-check", "Check joint distributions of commuting observable families"},
      {"spectral-max", "Construct maximizing states from the square of an operator"},
  };
  return k;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace chsh::cli;
  CLI::App app{"chshlab: Bell-operator incompatibility laboratory", "chshlab"};
  app.set_version_flag("--version", std::string(CHSHLAB_VERSION));
  app.require_subcommand(1);

  Options o;
  o.workers = default_workers();
  std::string format = "json";
  std::uint64_t seed = 0;
  std::string preset;

  for (const auto& name : command_names()) {
    CLI::App* sub = app.add_subcommand(name, descriptions().at(name));
    sub->add_option("--config", o.config_path, "JSON config file");
    sub->add_option("--seed", seed, "Override the config seed");
    sub->add_option("--preset", preset, "Named preset");
    sub->add_option("--out", o.out, "Report path, or - for standard output");
    sub->add_option("--format", format, "Report format")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--workers", o.workers, "Worker threads (results do not depend on it)")
        ->check(CLI::Range(1u, 256u));
    sub->callback([&o, sub, name] { o.command = name; (void)sub; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  if (sub->count("--seed") > 0) o.seed = seed;
  if (sub->count("--preset") > 0) o.preset = preset;
  o.format = format == "csv" ? Format::kCsv : Format::kJson;
  return run(o, std::cout, std::cerr);
}
