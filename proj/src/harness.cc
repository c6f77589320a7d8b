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

#include "povm/harness.h"

#include <omp.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "povm/cv_optics.h"
#include "povm/errors.h"
#include "povm/estimation.h"
#include "povm/info_theory.h"
#include "povm/measurement_model.h"

#ifndef POVM_VERSION
#define POVM_VERSION "dev"
#endif

namespace povm {

namespace {

using Row = std::vector<double>;

// ---------------------------------------------------------------------------
// Parameter catalog

struct NumericCheck {
  const char *invariant;
  bool integer;
  std::function<bool(double)> ok;
};

const std::map<std::string, NumericCheck, std::less<>> &numeric_checks() {
  static const std::map<std::string, NumericCheck, std::less<>> checks = {
      {"a", {"0 <= a <= 1", false, [](double v) { return v >= 0.0 && v <= 1.0; }}},
      {"beta", {"0 <= beta <= 1/2", false, [](double v) { return v >= 0.0 && v <= 0.5; }}},
      {"theta", {"0 <= theta <= pi", false, [](double v) { return v >= 0.0 && v <= std::numbers::pi; }}},
      {"alpha", {"0 <= alpha <= 1", false, [](double v) { return v >= 0.0 && v <= 1.0; }}},
      {"M", {"M >= 1, integer", true, [](double v) { return v >= 1.0; }}},
      {"n", {"n >= 1, integer", true, [](double v) { return v >= 1.0; }}},
      {"d", {"2 <= d <= 64, integer", true, [](double v) { return v >= 2.0 && v <= 64.0; }}},
      {"eta", {"0 < eta <= 1", false, [](double v) { return v > 0.0 && v <= 1.0; }}},
      {"g", {"g >= 1, integer", true, [](double v) { return v >= 1.0; }}},
      {"r", {"r >= 0", false, [](double v) { return v >= 0.0; }}},
      {"G", {"G >= 1", false, [](double v) { return v >= 1.0; }}},
      {"blocks", {"blocks >= 2, integer", true, [](double v) { return v >= 2.0; }}},
      {"N", {"N = 1 (one input copy)", true, [](double v) { return v == 1.0; }}},
      {"fock_n", {"fock_n >= 0, integer", true, [](double v) { return v >= 0.0; }}},
      {"amplitude", {"finite coherent amplitude", false, [](double v) { return std::isfinite(v); }}},
      {"points", {"points >= 16, integer", true, [](double v) { return v >= 16.0; }}},
  };
  return checks;
}

const std::map<std::string, std::vector<std::string>, std::less<>> &text_choices() {
  static const std::map<std::string, std::vector<std::string>, std::less<>> choices = {
      {"state", {"fock", "coherent"}},
      {"tie", {"odd_only", "random_tie"}},
      {"emit", {"moments", "pdf"}},
      {"figure", {"fig4", "fig5", "fig6", "fig8", "fig-qudit"}},
  };
  return choices;
}

struct Point {
  std::vector<std::string> names;
  std::vector<double> values;

  double operator[](std::string_view name) const {
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (names[i] == name) {
        return values[i];
      }
    }
    throw std::logic_error("grid point has no parameter " + std::string(name));
  }
  int integer(std::string_view name) const { return static_cast<int>(std::lround((*this)[name])); }
};

struct Context {
  std::map<std::string, std::string, std::less<>> text;
  std::uint64_t seed = kDefaultSeed;
  std::size_t index = 0;
  bool has_theta = false;
};

using Evaluator = std::function<std::vector<Row>(const Point &, const Context &)>;

struct ExperimentDef {
  /// Grid parameters in grid order (first varies slowest) with defaults.
  std::vector<std::pair<std::string, std::string>> grid;
  /// Text parameters with defaults.
  std::vector<std::pair<std::string, std::string>> text;
  std::vector<std::string> columns;
  Evaluator eval;
};

CVState make_state(const Point &p, const Context &ctx) {
  if (ctx.text.at("state") == "fock") {
    return CVState::fock(p.integer("fock_n"));
  }
  return CVState::coherent({p["amplitude"], 0.0});
}

double neg_log2_gap(double ratio) { return -std::log2(1.0 - ratio); }

ScoringConfig default_scoring() { return ScoringConfig{}; }

std::vector<Row> eval_dist(const Point &p, const Context &ctx) {
  const IsotropicNoise noise(p["beta"]);
  double a = 0.0;
  if (ctx.has_theta) {
    const double c = std::cos(0.5 * p["theta"]);
    a = std::min(1.0, c * c);
  } else {
    a = p["a"];
  }
  const int M = p.integer("M");
  const auto dist = count_distribution(noise, a, M);
  std::vector<Row> rows;
  for (int k = 0; k <= M; ++k) {
    rows.push_back({noise.beta(), a, static_cast<double>(M), static_cast<double>(k), dist.probs[k]});
  }
  return rows;
}

std::vector<Row> eval_estimate(const Point &p, const Context &ctx) {
  const IsotropicNoise noise(p["beta"]);
  const double a = p["a"];
  const int M = p.integer("M");
  const auto n = static_cast<std::int64_t>(std::llround(p["n"]));
  const int blocks = p.integer("blocks");
  const auto dist = count_distribution(noise, a, M);
  const auto data = sample_counts(dist, n * blocks, ctx.seed, ctx.index);
  const auto r = estimate(data, noise, M, default_scoring(), blocks);
  return {{noise.beta(), a, static_cast<double>(M), static_cast<double>(n), static_cast<double>(blocks), r.a_ml,
           static_cast<double>(r.iterations), r.fisher, r.crb, r.block_variance, r.upper_bound, r.lower_bound,
           r.clamped ? 1.0 : 0.0}};
}

std::vector<Row> eval_mi(const Point &p, const Context &) {
  const IsotropicNoise noise(p["beta"]);
  const int M = p.integer("M");
  const double quad = mutual_info_quadrature(noise, M).value_bits;
  const double closed = (noise.beta() > 0.0 && noise.beta() < 0.5) ? mutual_info_closed_form(noise, M).value_bits
                                                                    : std::nan("");
  return {{noise.beta(), static_cast<double>(M), quad, closed, neg_log2_gap(quad / ideal_mutual_info())}};
}

std::vector<Row> eval_mi_binary(const Point &p, const Context &) {
  const IsotropicNoise noise(p["beta"]);
  const int M = p.integer("M");
  const double i2 = binary_mutual_info(noise, M).value_bits;
  return {{noise.beta(), static_cast<double>(M), i2, neg_log2_gap(i2)}};
}

std::vector<Row> eval_mi_majority(const Point &p, const Context &ctx) {
  const IsotropicNoise noise(p["beta"]);
  const int M = p.integer("M");
  const TieRule tie = ctx.text.at("tie") == "odd_only" ? TieRule::kOddOnly : TieRule::kRandomTie;
  const double maj = majority_vote_mutual_info(noise, M, tie).value_bits;
  const double i2 = binary_mutual_info(noise, M).value_bits;
  return {{noise.beta(), static_cast<double>(M), maj, i2, i2 - maj, neg_log2_gap(maj), neg_log2_gap(i2)}};
}

std::vector<Row> eval_mi_qudit(const Point &p, const Context &) {
  const QuditNoise noise(p.integer("d"), p["alpha"]);
  const int M = p.integer("M");
  return {{static_cast<double>(noise.d()), noise.alpha(), static_cast<double>(M),
           qudit_mutual_info(noise, M).value_bits}};
}

std::vector<Row> eval_cv_photo(const Point &p, const Context &ctx) {
  const auto state = make_state(p, ctx);
  const Efficiency eff(p["eta"]);
  const int g = p.integer("g");
  const auto r = photo_added_noise(state.photon_distribution(), eff, g);
  return {{eff.eta(), static_cast<double>(g), state.mean_photon_number(), state.photon_number_variance(), r.mean,
           r.variance, r.added_noise, r.analytic_mean, r.analytic_variance, r.analytic_added_noise}};
}

std::vector<Row> eval_cv_homodyne(const Point &p, const Context &ctx) {
  const auto state = make_state(p, ctx);
  const Efficiency eff(p["eta"]);
  const auto r = homodyne_pdf(state, eff, p["r"]);
  if (ctx.text.at("emit") == "pdf") {
    std::vector<Row> rows;
    for (std::size_t i = 0; i < r.x.size(); ++i) {
      rows.push_back({eff.eta(), r.r, r.x[i], r.pdf[i]});
    }
    return rows;
  }
  return {{eff.eta(), r.r, r.intrinsic_variance, r.analytic_added_noise, r.measured_added_noise,
           r.measured_variance, r.raw_variance, r.raw_added_noise}};
}

std::vector<Row> eval_cv_heterodyne(const Point &p, const Context &ctx) {
  const auto state = make_state(p, ctx);
  const Efficiency eff(p["eta"]);
  const auto r = heterodyne_pdf(state, eff, p["G"], p.integer("points"));
  return {{eff.eta(), r.G, r.intrinsic_variance, r.q_variance, r.outcome_variance, r.analytic_excess,
           r.measured_excess}};
}

const std::map<Experiment, ExperimentDef> &experiment_defs() {
  static const std::map<Experiment, ExperimentDef> defs = {
      {Experiment::kDist,
       {{{"beta", "0.25"}, {"a", "0.75"}, {"theta", ""}, {"M", "10"}},
        {},
        {"beta", "a", "M", "M1", "probability"},
        eval_dist}},
      {Experiment::kEstimate,
       {{{"beta", "0.25"}, {"a", "0.75"}, {"M", "10"}, {"n", "2000"}, {"blocks", "50"}},
        {},
        {"beta", "a", "M", "n", "blocks", "a_ml", "iterations", "fisher", "crb", "block_variance", "upper_bound",
         "lower_bound", "clamped"},
        eval_estimate}},
      {Experiment::kMi,
       {{{"beta", "0.25"}, {"M", "1..20"}},
        {},
        {"beta", "M", "mi_quadrature", "mi_closed_form", "neg_log2_gap"},
        eval_mi}},
      {Experiment::kMiBinary,
       {{{"beta", "0.25"}, {"M", "1..20"}}, {}, {"beta", "M", "mi_binary", "neg_log2_gap"}, eval_mi_binary}},
      {Experiment::kMiMajority,
       {{{"beta", "0.25"}, {"M", "1..19:2"}},
        {{"tie", "odd_only"}},
        {"beta", "M", "mi_majority", "mi_binary", "gap", "neg_log2_gap_majority", "neg_log2_gap_binary"},
        eval_mi_majority}},
      {Experiment::kMiQudit,
       {{{"d", "4"}, {"alpha", "0.8"}, {"M", "1..10"}}, {}, {"d", "alpha", "M", "mi_qudit"}, eval_mi_qudit}},
      {Experiment::kCvPhoto,
       {{{"fock_n", "5"}, {"amplitude", "2"}, {"eta", "0.5"}, {"g", "1"}},
        {{"state", "fock"}},
        {"eta", "g", "mean_photons", "photon_variance", "estimator_mean", "estimator_variance", "added_noise",
         "analytic_mean", "analytic_variance", "analytic_added_noise"},
        eval_cv_photo}},
      {Experiment::kCvHomodyne,
       {{{"fock_n", "0"}, {"amplitude", "0"}, {"eta", "0.5"}, {"r", "0"}},
        {{"state", "coherent"}, {"emit", "moments"}},
        {"eta", "r", "intrinsic_variance", "analytic_added_noise", "measured_added_noise", "measured_variance",
         "raw_variance", "raw_added_noise"},
        eval_cv_homodyne}},
      {Experiment::kCvHeterodyne,
       {{{"fock_n", "0"}, {"amplitude", "0"}, {"eta", "0.5"}, {"G", "1"}, {"points", "512"}},
        {{"state", "coherent"}},
        {"eta", "G", "intrinsic_variance", "q_variance", "outcome_variance", "analytic_excess", "measured_excess"},
        eval_cv_heterodyne}},
  };
  return defs;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) {
    return {};
  }
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

double parse_number(const std::string &name, const std::string &text) {
  const std::string t = trim(text);
  char *end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size()) {
    throw ValidationError(name, "cannot parse '" + t + "' as a number");
  }
  return v;
}

void validate_value(const std::string &name, double v) {
  const auto &check = numeric_checks().at(name);
  if (!check.ok(v) || (check.integer && v != std::floor(v))) {
    char shown[32];
    const auto end = std::to_chars(shown, shown + sizeof shown, v).ptr;
    throw ValidationError(name, "value " + std::string(shown, end) + " violates " + check.invariant);
  }
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <class Map>
std::string choice_list(const Map &choices, const std::string &name) {
  std::string s;
  for (const auto &c : choices.at(name)) {
    s += (s.empty() ? "" : ", ") + c;
  }
  return s;
}

ResultTable base_table(std::vector<std::string> columns, const std::string &experiment, std::uint64_t seed) {
  ResultTable t;
  t.columns = std::move(columns);
  t.metadata = {{"tool", "povm-purify"},
                {"version", POVM_VERSION},
                {"experiment", experiment},
                {"seed", std::to_string(seed)}};
  return t;
}

}  // namespace

// ---------------------------------------------------------------------------

std::optional<Experiment> parse_experiment(std::string_view name) {
  static const std::pair<std::string_view, Experiment> names[] = {
      {"dist", Experiment::kDist},
      {"estimate", Experiment::kEstimate},
      {"mi", Experiment::kMi},
      {"mi-binary", Experiment::kMiBinary},
      {"mi-majority", Experiment::kMiMajority},
      {"mi-qudit", Experiment::kMiQudit},
      {"cv-photo", Experiment::kCvPhoto},
      {"cv-homodyne", Experiment::kCvHomodyne},
      {"cv-heterodyne", Experiment::kCvHeterodyne},
      {"reproduce", Experiment::kReproduce},
  };
  for (const auto &[n, e] : names) {
    if (n == name) {
      return e;
    }
  }
  return std::nullopt;
}

const char *to_string(Experiment e) {
  switch (e) {
    case Experiment::kDist:
      return "dist";
    case Experiment::kEstimate:
      return "estimate";
    case Experiment::kMi:
      return "mi";
    case Experiment::kMiBinary:
      return "mi-binary";
    case Experiment::kMiMajority:
      return "mi-majority";
    case Experiment::kMiQudit:
      return "mi-qudit";
    case Experiment::kCvPhoto:
      return "cv-photo";
    case Experiment::kCvHomodyne:
      return "cv-homodyne";
    case Experiment::kCvHeterodyne:
      return "cv-heterodyne";
    case Experiment::kReproduce:
      return "reproduce";
  }
  return "unknown";
}

std::optional<Figure> parse_figure(std::string_view name) {
  if (name == "fig4") return Figure::kFig4;
  if (name == "fig5") return Figure::kFig5;
  if (name == "fig6") return Figure::kFig6;
  if (name == "fig8") return Figure::kFig8;
  if (name == "fig-qudit") return Figure::kFigQudit;
  return std::nullopt;
}

const char *to_string(Figure f) {
  switch (f) {
    case Figure::kFig4:
      return "fig4";
    case Figure::kFig5:
      return "fig5";
    case Figure::kFig6:
      return "fig6";
    case Figure::kFig8:
      return "fig8";
    case Figure::kFigQudit:
      return "fig-qudit";
  }
  return "unknown";
}

const std::vector<std::string> &known_parameters() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto &[name, check] : numeric_checks()) {
      v.push_back(name);
    }
    for (const auto &[name, choices] : text_choices()) {
      v.push_back(name);
    }
    return v;
  }();
  return names;
}

ExperimentConfig parse_config_text(std::string_view text) {
  ExperimentConfig cfg;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) {
      line.erase(hash);
    }
    const std::string body = trim(line);
    if (body.empty()) {
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ValidationError("config", "line " + std::to_string(lineno) + " is not key=value");
    }
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (key == "experiment") {
      const auto e = parse_experiment(value);
      if (!e) {
        throw ValidationError("experiment", "unknown experiment '" + value + "'");
      }
      cfg.experiment = *e;
    } else if (key == "out") {
      cfg.output_path = value;
    } else if (key == "seed") {
      try {
        std::size_t used = 0;
        if (value.empty() || value[0] == '-' || value[0] == '+') {
          throw std::invalid_argument(value);
        }
        cfg.seed = std::stoull(value, &used);
        if (used != value.size()) {
          throw std::invalid_argument(value);
        }
      } catch (const std::exception &) {
        throw ValidationError("seed", "'" + value + "' is not an unsigned 64-bit integer");
      }
    } else {
      cfg.params[key] = value;
    }
  }
  return cfg;
}

ExperimentConfig load_config_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("config", "cannot open '" + path + "'");
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::vector<double> parse_grid(const std::string &name, const std::string &text) {
  std::vector<double> values;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      values.push_back(parse_number(name, item));
      continue;
    }
    std::string hi_text = item.substr(dots + 2);
    double step = 1.0;
    const auto colon = hi_text.find(':');
    if (colon != std::string::npos) {
      step = parse_number(name, hi_text.substr(colon + 1));
      hi_text.erase(colon);
    }
    const double lo = parse_number(name, item.substr(0, dots));
    const double hi = parse_number(name, hi_text);
    if (!(step > 0.0) || hi < lo) {
      throw ValidationError(name, "range '" + item + "' needs lo <= hi and a positive step");
    }
    const auto count = static_cast<long long>(std::floor((hi - lo) / step + 1e-9)) + 1;
    if (count > 1000000) {
      throw ValidationError(name, "range '" + item + "' expands to more than 10^6 values");
    }
    for (long long k = 0; k < count; ++k) {
      values.push_back(lo + k * step);
    }
  }
  if (values.empty()) {
    throw ValidationError(name, "empty value");
  }
  return values;
}

std::size_t ResultTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) {
      return i;
    }
  }
  throw std::out_of_range("no column named " + std::string(name));
}

std::vector<double> ResultTable::column_values(std::string_view name) const {
  const auto c = column(name);
  std::vector<double> v;
  v.reserve(rows.size());
  for (const auto &row : rows) {
    v.push_back(row[c]);
  }
  return v;
}

void write_csv(std::ostream &out, const ResultTable &table) {
  for (const auto &[key, value] : table.metadata) {
    out << "# " << key << '=' << value << '\n';
  }
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << table.columns[i];
  }
  out << '\n';
  for (const auto &row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << format_number(row[i]);
    }
    out << '\n';
  }
}

std::string to_csv(const ResultTable &table) {
  std::ostringstream out;
  write_csv(out, table);
  return out.str();
}

ResultTable read_csv(std::istream &in) {
  ResultTable table;
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty()) {
      continue;
    }
    if (line[0] == '#') {
      const std::string body = trim(std::string_view(line).substr(1));
      const auto eq = body.find('=');
      if (eq == std::string::npos) {
        throw std::runtime_error("malformed metadata line: " + line);
      }
      table.metadata.emplace_back(body.substr(0, eq), body.substr(eq + 1));
      continue;
    }
    std::istringstream cells(line);
    std::string cell;
    if (!header) {
      while (std::getline(cells, cell, ',')) {
        table.columns.push_back(cell);
      }
      header = true;
      continue;
    }
    Row row;
    while (std::getline(cells, cell, ',')) {
      row.push_back(std::strtod(cell.c_str(), nullptr));
    }
    if (row.size() != table.columns.size()) {
      throw std::runtime_error("row width does not match header: " + line);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

ResultTable run(const ExperimentConfig &config) {
  if (config.experiment == Experiment::kReproduce) {
    const auto it = config.params.find("figure");
    if (it == config.params.end()) {
      throw ValidationError("figure", "reproduce needs a figure (" + choice_list(text_choices(), "figure") + ")");
    }
    for (const auto &[name, value] : config.params) {
      if (name != "figure") {
        throw ValidationError(name, "not used by experiment 'reproduce'");
      }
    }
    const auto fig = parse_figure(it->second);
    if (!fig) {
      throw ValidationError("figure", "'" + it->second + "' is not one of " + choice_list(text_choices(), "figure"));
    }
    return reproduce(*fig, config.seed);
  }

  const ExperimentDef &def = experiment_defs().at(config.experiment);
  const std::string experiment = to_string(config.experiment);

  for (const auto &[name, value] : config.params) {
    const bool known = numeric_checks().contains(name) || text_choices().contains(name);
    if (!known) {
      throw ValidationError(name, "unknown parameter");
    }
    if (name == "N") {
      validate_value("N", parse_number("N", value));
      continue;
    }
    const bool in_grid = std::any_of(def.grid.begin(), def.grid.end(), [&](auto &p) { return p.first == name; });
    const bool in_text = std::any_of(def.text.begin(), def.text.end(), [&](auto &p) { return p.first == name; });
    if (!in_grid && !in_text) {
      throw ValidationError(name, "not used by experiment '" + experiment + "'");
    }
  }

  Context ctx;
  ctx.seed = config.seed;
  ResultTable table = base_table(def.columns, experiment, config.seed);

  for (const auto &[name, fallback] : def.text) {
    const auto it = config.params.find(name);
    const std::string value = it == config.params.end() ? fallback : trim(it->second);
    const auto &choices = text_choices().at(name);
    if (std::find(choices.begin(), choices.end(), value) == choices.end()) {
      throw ValidationError(name, "'" + value + "' is not one of " + choice_list(text_choices(), name));
    }
    ctx.text[name] = value;
    table.metadata.emplace_back("param." + name, value);
  }

  ctx.has_theta = config.params.contains("theta");
  if (ctx.has_theta && config.params.contains("a")) {
    throw ValidationError("theta", "give either a or theta, not both");
  }

  std::vector<std::pair<std::string, std::vector<double>>> axes;
  for (const auto &[name, fallback] : def.grid) {
    if (name == "theta" && !ctx.has_theta) {
      continue;
    }
    if (name == "a" && ctx.has_theta) {
      continue;
    }
    const auto it = config.params.find(name);
    const std::string text = it == config.params.end() ? fallback : it->second;
    auto values = parse_grid(name, text);
    for (double v : values) {
      validate_value(name, v);
    }
    table.metadata.emplace_back("param." + name, trim(text));
    axes.emplace_back(name, std::move(values));
  }

  if (config.experiment == Experiment::kMiMajority && ctx.text["tie"] == "odd_only") {
    for (const auto &[name, values] : axes) {
      if (name == "M") {
        for (double v : values) {
          if (static_cast<long long>(v) % 2 == 0) {
            throw ValidationError("M", "even M = " + format_number(v) + " needs tie=random_tie");
          }
        }
      }
    }
  }

  // Cartesian product, first axis slowest.
  std::vector<Point> points(1);
  for (const auto &[name, values] : axes) {
    std::vector<Point> next;
    next.reserve(points.size() * values.size());
    for (const auto &p : points) {
      for (double v : values) {
        Point q = p;
        q.names.push_back(name);
        q.values.push_back(v);
        next.push_back(std::move(q));
      }
    }
    points = std::move(next);
  }

  std::vector<std::vector<Row>> results(points.size());
  std::vector<std::exception_ptr> errors(points.size());
  const auto count = static_cast<std::int64_t>(points.size());
#pragma omp parallel for schedule(dynamic) if (count > 1)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      Context local = ctx;
      local.index = static_cast<std::size_t>(i);
      results[i] = def.eval(points[i], local);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto &e : errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }
  for (auto &rows : results) {
    for (auto &row : rows) {
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

// ---------------------------------------------------------------------------
// Figure recipes

namespace {

constexpr double kFigA = 0.75;
constexpr double kFigBeta = 0.25;

ResultTable reproduce_fig4(std::uint64_t seed) {
  const IsotropicNoise noise(kFigBeta);
  constexpr int kM = 10;
  constexpr int kBlocks = 50;
  const std::vector<std::int64_t> ns = {250, 500, 1000, 2000, 4000};
  ResultTable t = base_table({"n", "variance", "crb", "ratio", "a_ml"}, "reproduce", seed);
  t.metadata.insert(t.metadata.end(),
                    {{"figure", "fig4"}, {"a", "0.75"}, {"beta", "0.25"}, {"M", "10"}, {"blocks", "50"}});
  const auto dist = count_distribution(noise, kFigA, kM);
  const double fisher = fisher_information(noise, kM, kFigA);
  t.rows.resize(ns.size());
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const auto data = sample_counts(dist, ns[i] * kBlocks, seed, i);
    const auto bv = block_variance(data, noise, kM, default_scoring(), kBlocks);
    const double crb = 1.0 / (static_cast<double>(ns[i]) * fisher);
    t.rows[i] = {static_cast<double>(ns[i]), bv.variance, crb, bv.variance / crb, bv.a_ml};
  }
  return t;
}

ResultTable reproduce_fig5(std::uint64_t seed) {
  const IsotropicNoise noise(kFigBeta);
  constexpr std::int64_t kN = 2000;
  constexpr int kBlocks = 1000;
  ResultTable t = base_table({"M", "variance", "sigma", "crb", "upper_bound", "lower_bound"}, "reproduce", seed);
  t.metadata.insert(t.metadata.end(),
                    {{"figure", "fig5"}, {"a", "0.75"}, {"beta", "0.25"}, {"n", "2000"}, {"blocks", "1000"}});
  for (int M = 1; M <= 20; ++M) {
    const auto dist = count_distribution(noise, kFigA, M);
    const auto data = sample_counts(dist, kN * kBlocks, seed, 100 + M);
    const auto bv = block_variance(data, noise, M, default_scoring(), kBlocks);
    const double crb = 1.0 / (kN * fisher_information(noise, M, kFigA));
    const auto bounds = variance_bounds(noise, M, kFigA, kN);
    // Standard error of a variance estimated from kBlocks Gaussian block estimates.
    const double sigma = bv.variance * std::sqrt(2.0 / (kBlocks - 1));
    t.rows.push_back({static_cast<double>(M), bv.variance, sigma, crb, bounds.upper, bounds.lower});
  }
  return t;
}

ResultTable reproduce_fig6(std::uint64_t seed) {
  const IsotropicNoise noise(kFigBeta);
  ResultTable t = base_table({"M", "mi", "mi_closed_form", "neg_log2_gap"}, "reproduce", seed);
  t.metadata.insert(t.metadata.end(), {{"figure", "fig6"}, {"beta", "0.25"}, {"ideal_mi", format_number(ideal_mutual_info())}});
  for (int M = 1; M <= 30; ++M) {
    const double mi = mutual_info_quadrature(noise, M).value_bits;
    const double closed = mutual_info_closed_form(noise, M).value_bits;
    t.rows.push_back({static_cast<double>(M), mi, closed, neg_log2_gap(mi / ideal_mutual_info())});
  }
  return t;
}

ResultTable reproduce_fig8(std::uint64_t seed) {
  const IsotropicNoise noise(kFigBeta);
  ResultTable t = base_table({"M", "mi_binary", "mi_majority", "neg_log2_gap_binary", "neg_log2_gap_majority"},
                             "reproduce", seed);
  t.metadata.insert(t.metadata.end(), {{"figure", "fig8"}, {"beta", "0.25"}, {"tie", "odd_only"}});
  for (int M = 1; M <= 19; M += 2) {
    const double i2 = binary_mutual_info(noise, M).value_bits;
    const double maj = majority_vote_mutual_info(noise, M, TieRule::kOddOnly).value_bits;
    t.rows.push_back({static_cast<double>(M), i2, maj, neg_log2_gap(i2), neg_log2_gap(maj)});
  }
  return t;
}

ResultTable reproduce_fig_qudit(std::uint64_t seed) {
  ResultTable t = base_table({"alpha", "M", "mi"}, "reproduce", seed);
  t.metadata.insert(t.metadata.end(), {{"figure", "fig-qudit"}, {"d", "4"}});
  for (double alpha : {0.8, 0.4}) {
    const QuditNoise noise(4, alpha);
    for (int M = 1; M <= 10; ++M) {
      t.rows.push_back({alpha, static_cast<double>(M), qudit_mutual_info(noise, M).value_bits});
    }
  }
  return t;
}

}  // namespace

ResultTable reproduce(Figure figure, std::uint64_t seed) {
  switch (figure) {
    case Figure::kFig4:
      return reproduce_fig4(seed);
    case Figure::kFig5:
      return reproduce_fig5(seed);
    case Figure::kFig6:
      return reproduce_fig6(seed);
    case Figure::kFig8:
      return reproduce_fig8(seed);
    case Figure::kFigQudit:
      return reproduce_fig_qudit(seed);
  }
  throw std::logic_error("unhandled figure");
}

}  // namespace povm
