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

// Normalized benchmark scores and their summaries.

#ifndef DQLAB_EVAL_SCORES_H_
#define DQLAB_EVAL_SCORES_H_

#include <cstddef>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dqlab {

struct ScoreRecord {
  std::string game;
  double random = 0.0;
  double human = 0.0;
  // One entry per agent column; absent where the table has an empty cell.
  std::vector<std::optional<double>> agents;
};

struct ScoreTable {
  std::vector<std::string> agent_names;
  std::vector<ScoreRecord> records;

  // Column index of an agent, or nullopt.
  std::optional<std::size_t> agent_index(const std::string& name) const;
};

// (agent - random) / |human - random| as a fraction. Equal to the textbook
// ratio whenever human > random; the magnitude keeps the sign meaning
// "better than random" on the table row where random beats human.
double normalize_score(double random, double human, double agent);

struct ScoreSummary {
  double median = 0.0;
  double mean = 0.0;
  std::size_t count = 0;
};

ScoreSummary summarize(std::span<const double> values);

// CSV with header `game,random,human,<agent>...`. Empty agent cells are
// absent values; random and human are required.
ScoreTable parse_score_table(std::istream& in);
ScoreTable load_score_table(const std::string& path);

struct NormalizedEntry {
  std::string game;
  double value = 0.0;
};

// Normalized scores of one agent, skipping games where it is absent.
std::vector<NormalizedEntry> normalized_column(const ScoreTable& table,
                                               std::size_t agent);

}  // namespace dqlab

#endif  // DQLAB_EVAL_SCORES_H_
