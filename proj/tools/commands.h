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

// The dqlab subcommands. Each declares its configuration keys and a runner
// that talks to the library only through the C interface.

#ifndef DQLAB_TOOLS_COMMANDS_H_
#define DQLAB_TOOLS_COMMANDS_H_

#include <functional>
#include <string>
#include <vector>

#include "run_config.h"

namespace dqlab_cli {

struct Command {
  std::string name;
  std::string description;
  // Key set given the raw config-file and flag values (deep-train picks
  // its fallbacks from the chosen preset).
  std::function<std::vector<KeySpec>(const KeyValues& file,
                                     const KeyValues& flags)>
      specs;
  std::function<void(const Settings&)> run;
  std::string help_footer;
};

std::vector<Command> all_commands();

}  // namespace dqlab_cli

#endif  // DQLAB_TOOLS_COMMANDS_H_
