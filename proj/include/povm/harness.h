// Copyright 2026 The povm-purify Authors
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

#ifndef POVM_HARNESS_H
#define POVM_HARNESS_H

// Experiment orchestration behind the povm-purify CLI: configuration,
// parameter grids, result tables and their CSV form, figure recipes.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace povm {

inline constexpr std::uint64_t kDefaultSeed = 12345;

enum class Experiment {
  kDist,
  kEstimate,
  kMi,
  kMiBinary,
  kMiMajority,
  kMiQudit,
  kCvPhoto,
  kCvHomodyne,
  kCvHeterodyne,
  kReproduce,
};

std::optional<Experiment> parse_experiment(std::string_view name);
const char *to_string(Experiment e);

enum class Figure { kFig4, kFig5, kFig6, kFig8, kFigQudit };

std::optional<Figure> parse_figure(std::string_view name);
const char *to_string(Figure f);

struct ExperimentConfig {
  Experiment experiment = Experiment::kDist;
  /// Raw values; numeric parameters may be grids "1..20", "1..19:2" or "0.1,0.25".
  std::map<std::string, std::string> params;
  std::string output_path;  ///< empty writes to stdout
  std::uint64_t seed = kDefaultSeed;
};

/// Every parameter name the harness understands.
const std::vector<std::string> &known_parameters();

/// Reads key=value lines ('#' starts a comment). The keys experiment, out and
/// seed fill the matching fields; everything else lands in params.
ExperimentConfig load_config_file(const std::string &path);
ExperimentConfig parse_config_text(std::string_view text);

/// Expands a grid expression. Throws ValidationError naming the parameter.
std::vector<double> parse_grid(const std::string &name, const std::string &text);

struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  /// Echo of the configuration; enough to regenerate the table.
  std::vector<std::pair<std::string, std::string>> metadata;

  std::size_t column(std::string_view name) const;
  std::vector<double> column_values(std::string_view name) const;
};

/// '#'-prefixed key=value lines, a header line, then rows at 17 significant digits.
void write_csv(std::ostream &out, const ResultTable &table);
std::string to_csv(const ResultTable &table);
ResultTable read_csv(std::istream &in);

/// Validates every parameter, then evaluates the grid (points in parallel,
/// rows in grid order). Throws ValidationError or ResourceError.
ResultTable run(const ExperimentConfig &config);

/// The data series behind one figure.
ResultTable reproduce(Figure figure, std::uint64_t seed = kDefaultSeed);

}  // namespace povm

#endif
