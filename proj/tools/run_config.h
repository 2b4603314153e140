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

// Flat key=value run configuration shared by every subcommand.
//
// A subcommand declares its keys. Values are resolved from the key's
// default, then the --config file, then command-line flags. The resolved
// set is written back as a manifest that is itself a valid config file.

#ifndef DQLAB_TOOLS_RUN_CONFIG_H_
#define DQLAB_TOOLS_RUN_CONFIG_H_

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace dqlab_cli {

// Bad flags, config files or values. Maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Failures while running an experiment. Maps to exit code 1.
class RuntimeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class KeyType { kInt, kUint, kReal, kBool, kString, kChoice, kRealList, kIntList };

struct KeySpec {
  std::string name;
  KeyType type;
  std::string fallback;
  std::string help;
  std::vector<std::string> choices;  // kChoice only
};

using KeyValues = std::map<std::string, std::string>;

// Parses `key = value` lines; '#' starts a comment line. Unknown keys,
// duplicates and lines without '=' raise UsageError naming the line.
KeyValues read_config_file(const std::string& path,
                           const std::vector<KeySpec>& specs);

class Settings {
 public:
  // flags take precedence over file, file over each spec's fallback. Every
  // value is type-checked here.
  Settings(std::vector<KeySpec> specs, const KeyValues& file,
           const KeyValues& flags);

  const std::string& str(const std::string& key) const;
  std::int64_t integer(const std::string& key) const;
  std::uint64_t uinteger(const std::string& key) const;
  double real(const std::string& key) const;
  bool flag(const std::string& key) const;
  std::vector<double> reals(const std::string& key) const;
  std::vector<int> ints(const std::string& key) const;

  // "# dqlab <command>" followed by one key=value line per key.
  std::string manifest(const std::string& command) const;

 private:
  const KeySpec& spec(const std::string& key) const;

  std::vector<KeySpec> specs_;
  KeyValues values_;
};

std::string type_name(KeyType type);

}  // namespace dqlab_cli

#endif  // DQLAB_TOOLS_RUN_CONFIG_H_
