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

// Minimal SVG charts. CSV output stays the source of truth.

#ifndef DQLAB_TOOLS_SVG_H_
#define DQLAB_TOOLS_SVG_H_

#include <string>
#include <vector>

namespace dqlab_cli {

struct Series {
  std::string label;
  std::string color;
  std::vector<double> x;
  std::vector<double> y;
};

std::string svg_line_chart(const std::string& title, const std::string& x_label,
                           const std::vector<Series>& series);

// One group of bars per category, one bar per series (series x is ignored).
std::string svg_bar_chart(const std::string& title,
                          const std::vector<std::string>& categories,
                          const std::vector<Series>& series);

}  // namespace dqlab_cli

#endif  // DQLAB_TOOLS_SVG_H_
