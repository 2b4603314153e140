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

#include "run_config.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>

namespace dqlab_cli {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> items;
  if (trim(s).empty()) return items;
  std::size_t start = 0;
  while (true) {
    const auto comma = s.find(',', start);
    items.push_back(trim(s.substr(start, comma - start)));
    if (comma == std::string::npos) return items;
    start = comma + 1;
  }
}

template <typename T>
bool parse_whole(const std::string& s, T& out) {
  const char* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return !s.empty() && ec == std::errc() && ptr == end;
}

bool parse_bool(const std::string& s, bool& out) {
  if (s == "true" || s == "1" || s == "yes" || s == "on") {
    out = true;
    return true;
  }
  if (s == "false" || s == "0" || s == "no" || s == "off") {
    out = false;
    return true;
  }
  return false;
}

bool valid(const KeySpec& spec, const std::string& v) {
  std::int64_t i = 0;
  std::uint64_t u = 0;
  double d = 0.0;
  bool b = false;
  switch (spec.type) {
    case KeyType::kInt: return parse_whole(v, i);
    case KeyType::kUint: return parse_whole(v, u);
    case KeyType::kReal: return parse_whole(v, d) && std::isfinite(d);
    case KeyType::kBool: return parse_bool(v, b);
    case KeyType::kString: return true;
    case KeyType::kChoice:
      return std::find(spec.choices.begin(), spec.choices.end(), v) !=
             spec.choices.end();
    case KeyType::kRealList:
      for (const auto& item : split_list(v)) {
        if (!parse_whole(item, d) || !std::isfinite(d)) return false;
      }
      return true;
    case KeyType::kIntList:
      for (const auto& item : split_list(v)) {
        if (!parse_whole(item, i)) return false;
      }
      return true;
  }
  return false;
}

}  // namespace

std::string type_name(KeyType type) {
  switch (type) {
    case KeyType::kInt: return "integer";
    case KeyType::kUint: return "non-negative integer";
    case KeyType::kReal: return "real";
    case KeyType::kBool: return "true/false";
    case KeyType::kString: return "text";
    case KeyType::kChoice: return "choice";
    case KeyType::kRealList: return "comma-separated reals";
    case KeyType::kIntList: return "comma-separated integers";
  }
  return "value";
}

KeyValues read_config_file(const std::string& path,
                           const std::vector<KeySpec>& specs) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  std::set<std::string> known;
  for (const auto& s : specs) known.insert(s.name);
  KeyValues values;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto where = path + ":" + std::to_string(line_no) + ": ";
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw UsageError(where + "expected key=value");
    const std::string key = trim(t.substr(0, eq));
    if (!known.count(key)) throw UsageError(where + "unknown key '" + key + "'");
    if (!values.emplace(key, trim(t.substr(eq + 1))).second) {
      throw UsageError(where + "duplicate key '" + key + "'");
    }
  }
  return values;
}

Settings::Settings(std::vector<KeySpec> specs, const KeyValues& file,
                   const KeyValues& flags)
    : specs_(std::move(specs)) {
  for (const auto& [key, value] : flags) spec(key);
  for (const auto& [key, value] : file) spec(key);
  for (const auto& s : specs_) {
    std::string v = s.fallback;
    if (auto it = file.find(s.name); it != file.end()) v = it->second;
    if (auto it = flags.find(s.name); it != flags.end()) v = it->second;
    if (!valid(s, v)) {
      std::string msg = "invalid value '" + v + "' for " + s.name +
                        " (expected " + type_name(s.type);
      if (s.type == KeyType::kChoice) {
        msg += ":";
        for (const auto& c : s.choices) msg += " " + c;
      }
      throw UsageError(msg + ")");
    }
    values_[s.name] = v;
  }
}

const KeySpec& Settings::spec(const std::string& key) const {
  for (const auto& s : specs_) {
    if (s.name == key) return s;
  }
  throw UsageError("unknown key '" + key + "'");
}

const std::string& Settings::str(const std::string& key) const {
  spec(key);
  return values_.at(key);
}

std::int64_t Settings::integer(const std::string& key) const {
  std::int64_t v = 0;
  parse_whole(str(key), v);
  return v;
}

std::uint64_t Settings::uinteger(const std::string& key) const {
  std::uint64_t v = 0;
  parse_whole(str(key), v);
  return v;
}

double Settings::real(const std::string& key) const {
  double v = 0.0;
  parse_whole(str(key), v);
  return v;
}

bool Settings::flag(const std::string& key) const {
  bool v = false;
  parse_bool(str(key), v);
  return v;
}

std::vector<double> Settings::reals(const std::string& key) const {
  std::vector<double> out;
  for (const auto& item : split_list(str(key))) {
    double v = 0.0;
    parse_whole(item, v);
    out.push_back(v);
  }
  return out;
}

std::vector<int> Settings::ints(const std::string& key) const {
  std::vector<int> out;
  for (const auto& item : split_list(str(key))) {
    int v = 0;
    parse_whole(item, v);
    out.push_back(v);
  }
  return out;
}

std::string Settings::manifest(const std::string& command) const {
  std::string text = "# dqlab " + command + "\n";
  for (const auto& s : specs_) text += s.name + "=" + values_.at(s.name) + "\n";
  return text;
}

}  // namespace dqlab_cli
