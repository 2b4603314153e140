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

// CSV, manifest and SVG file output.

#ifndef DQLAB_TOOLS_OUTPUT_H_
#define DQLAB_TOOLS_OUTPUT_H_

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

namespace dqlab_cli {

// Shortest round-trip decimal; "nan", "inf" and "-inf" for non-finite values.
std::string num(double value);
std::string num(std::int64_t value);
std::string num(std::uint64_t value);
std::string num(int value);

// Creates the directory (and parents) if missing.
void ensure_directory(const std::string& dir);
std::string join_path(const std::string& dir, const std::string& name);
void write_text_file(const std::string& path, const std::string& text);

// Comma-delimited rows with LF endings; throws RuntimeError naming the path
// on any I/O failure.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header);
  void row(const std::vector<std::string>& cells);
  void close();
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::ofstream out_;
};

}  // namespace dqlab_cli

#endif  // DQLAB_TOOLS_OUTPUT_H_
