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

#include "eval/scores.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>

#include "core/error.h"

namespace dqlab {
namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      cells.push_back(line.substr(start));
      return cells;
    }
    cells.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
  fail(ErrorCode::kParse,
       "score table line " + std::to_string(line) + ": " + what);
}

double parse_number(const std::string& cell, std::size_t line,
                    const std::string& column) {
  double value = 0.0;
  const char* end = cell.data() + cell.size();
  const auto [ptr, ec] = std::from_chars(cell.data(), end, value);
  if (cell.empty() || ec != std::errc() || ptr != end || !std::isfinite(value)) {
    parse_fail(line, "bad number '" + cell + "' in column " + column);
  }
  return value;
}

}  // namespace

std::optional<std::size_t> ScoreTable::agent_index(
    const std::string& name) const {
  const auto it = std::find(agent_names.begin(), agent_names.end(), name);
  if (it == agent_names.end()) return std::nullopt;
  return static_cast<std::size_t>(it - agent_names.begin());
}

double normalize_score(double random, double human, double agent) {
  const double span = human - random;
  check(span != 0.0, ErrorCode::kDegenerate,
        "normalize_score: human and random scores are equal");
  return (agent - random) / std::abs(span);
}

ScoreSummary summarize(std::span<const double> values) {
  check(!values.empty(), ErrorCode::kPrecondition,
        "summarize: need at least one score");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  ScoreSummary s;
  s.count = n;
  s.median = n % 2 == 1 ? sorted[n / 2]
                        : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  s.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) /
           static_cast<double>(n);
  return s;
}

ScoreTable parse_score_table(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) fail(ErrorCode::kParse, "score table is empty");
  std::vector<std::string> header = split_csv_line(line);
  for (auto& h : header) h = trim(h);
  if (header.size() < 4 || header[0] != "game" || header[1] != "random" ||
      header[2] != "human") {
    parse_fail(1, "header must be game,random,human,<agent>...");
  }
  ScoreTable table;
  table.agent_names.assign(header.begin() + 3, header.end());
  std::set<std::string> seen_agents;
  for (const auto& a : table.agent_names) {
    if (a.empty() || !seen_agents.insert(a).second) {
      parse_fail(1, "agent column names must be non-empty and unique");
    }
  }

  std::set<std::string> games;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::vector<std::string> cells = split_csv_line(line);
    if (cells.size() != header.size()) {
      parse_fail(line_no, "expected " + std::to_string(header.size()) +
                              " cells, found " + std::to_string(cells.size()));
    }
    for (auto& c : cells) c = trim(c);
    ScoreRecord rec;
    rec.game = cells[0];
    if (rec.game.empty()) parse_fail(line_no, "empty game name");
    if (!games.insert(rec.game).second) {
      parse_fail(line_no, "duplicate game '" + rec.game + "'");
    }
    rec.random = parse_number(cells[1], line_no, "random");
    rec.human = parse_number(cells[2], line_no, "human");
    if (rec.random == rec.human) {
      parse_fail(line_no, "human and random scores are equal");
    }
    for (std::size_t i = 3; i < cells.size(); ++i) {
      if (cells[i].empty()) {
        rec.agents.push_back(std::nullopt);
      } else {
        rec.agents.push_back(parse_number(cells[i], line_no, header[i]));
      }
    }
    table.records.push_back(std::move(rec));
  }
  if (table.records.empty()) fail(ErrorCode::kParse, "score table has no rows");
  return table;
}

ScoreTable load_score_table(const std::string& path) {
  std::ifstream in(path);
  check(static_cast<bool>(in), ErrorCode::kIo,
        "cannot open score table '" + path + "'");
  return parse_score_table(in);
}

std::vector<NormalizedEntry> normalized_column(const ScoreTable& table,
                                               std::size_t agent) {
  check(agent < table.agent_names.size(), ErrorCode::kInvalidInput,
        "normalized_column: agent index out of range");
  std::vector<NormalizedEntry> out;
  for (const auto& rec : table.records) {
    if (!rec.agents[agent]) continue;
    out.push_back({rec.game, normalize_score(rec.random, rec.human,
                                             *rec.agents[agent])});
  }
  return out;
}

}  // namespace dqlab
