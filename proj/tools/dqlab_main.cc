// Copyright 2026 The dqlab Authors.
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

// dqlab command-line entry point.

#include <iostream>
#include <map>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "commands.h"
#include "dqlab/dqlab.h"
#include "run_config.h"

namespace {

struct Registered {
  dqlab_cli::Command command;
  CLI::App* app = nullptr;
  std::string config_path;
  std::map<std::string, std::string> raw;
  std::map<std::string, CLI::Option*> options;
};

std::string describe(const dqlab_cli::KeySpec& spec) {
  std::string text = spec.help;
  if (spec.type == dqlab_cli::KeyType::kChoice) {
    text += " {";
    for (std::size_t i = 0; i < spec.choices.size(); ++i) {
      text += (i ? "," : "") + spec.choices[i];
    }
    text += "}";
  }
  return text + " [default: " + (spec.fallback.empty() ? "\"\"" : spec.fallback) +
         "]";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "dqlab: overestimation experiments with Q-learning, Double Q-learning, "
      "DQN and Double DQN."};
  app.set_version_flag("--version", dqlab_version());
  app.require_subcommand(1);
  app.footer(
      "Every subcommand accepts --config FILE with key=value lines using the "
      "option names without dashes; flags override the file. Each run writes "
      "manifest.txt to its output directory, which is itself a valid config.\n"
      "Exit codes: 0 success, 1 runtime error, 2 usage error.");

  std::vector<std::unique_ptr<Registered>> registered;
  for (auto& cmd : dqlab_cli::all_commands()) {
    auto reg = std::make_unique<Registered>();
    reg->command = cmd;
    reg->app = app.add_subcommand(cmd.name, cmd.description);
    reg->app->add_option("--config", reg->config_path, "key=value config file");
    for (const auto& spec : cmd.specs({}, {})) {
      const std::string flag = "--" + spec.name;
      CLI::Option* opt =
          spec.type == dqlab_cli::KeyType::kBool
              ? reg->app->add_flag(flag + "{true}", reg->raw[spec.name],
                                   describe(spec))
              : reg->app->add_option(flag, reg->raw[spec.name], describe(spec));
      reg->options[spec.name] = opt;
    }
    if (!cmd.help_footer.empty()) reg->app->footer(cmd.help_footer);
    registered.push_back(std::move(reg));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  for (auto& reg : registered) {
    if (!reg->app->parsed()) continue;
    try {
      dqlab_cli::KeyValues flags;
      for (const auto& [name, opt] : reg->options) {
        if (opt->count() > 0) flags[name] = reg->raw[name];
      }
      dqlab_cli::KeyValues file;
      if (!reg->config_path.empty()) {
        // Unknown keys are checked against the widest key set first.
        file = dqlab_cli::read_config_file(reg->config_path,
                                           reg->command.specs({}, {}));
      }
      const dqlab_cli::Settings settings(reg->command.specs(file, flags), file,
                                         flags);
      reg->command.run(settings);
      return 0;
    } catch (const dqlab_cli::UsageError& e) {
      std::cerr << "usage error: " << e.what() << "\n"
                << "Run with --help for more information.\n";
      return 2;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 1;
    }
  }
  return 2;
}
