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

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <sstream>

#include "povm/cv_optics.h"
#include "povm/errors.h"
#include "povm/info_theory.h"

using namespace povm;

namespace {

ExperimentConfig make(Experiment e, std::map<std::string, std::string> params) {
  ExperimentConfig c;
  c.experiment = e;
  c.params = std::move(params);
  return c;
}

std::string validation_message(const ExperimentConfig &c, std::string *param = nullptr) {
  try {
    run(c);
  } catch (const ValidationError &e) {
    if (param) {
      *param = e.param;
    }
    return e.what();
  }
  return "";
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST(parse_grid, forms) {
  EXPECT_EQ(parse_grid("M", "1..5"), (std::vector<double>{1, 2, 3, 4, 5}));
  EXPECT_EQ(parse_grid("M", "1..9:4"), (std::vector<double>{1, 5, 9}));
  EXPECT_EQ(parse_grid("beta", "0.1, 0.25,0.4"), (std::vector<double>{0.1, 0.25, 0.4}));
  EXPECT_EQ(parse_grid("a", "0.75"), (std::vector<double>{0.75}));
  EXPECT_EQ(parse_grid("M", "1,3..5"), (std::vector<double>{1, 3, 4, 5}));
  const auto frac = parse_grid("a", "0..1:0.1");
  EXPECT_EQ(frac.size(), 11u);
  EXPECT_THROW(parse_grid("M", "5..1"), ValidationError);
  EXPECT_THROW(parse_grid("M", "abc"), ValidationError);
  EXPECT_THROW(parse_grid("M", "1..3:0"), ValidationError);
}

TEST(names, round_trip) {
  for (auto e : {Experiment::kDist, Experiment::kEstimate, Experiment::kMi, Experiment::kMiBinary,
                 Experiment::kMiMajority, Experiment::kMiQudit, Experiment::kCvPhoto, Experiment::kCvHomodyne,
                 Experiment::kCvHeterodyne, Experiment::kReproduce}) {
    EXPECT_EQ(parse_experiment(to_string(e)), e);
  }
  for (auto f : {Figure::kFig4, Figure::kFig5, Figure::kFig6, Figure::kFig8, Figure::kFigQudit}) {
    EXPECT_EQ(parse_figure(to_string(f)), f);
  }
  EXPECT_FALSE(parse_experiment("nope"));
}

TEST(config_text, parses_key_values) {
  const auto c = parse_config_text("# comment\nexperiment = mi\nbeta=0.1 # trailing\n\nM = 1..4\nseed=7\nout=x.csv\n");
  EXPECT_EQ(c.experiment, Experiment::kMi);
  EXPECT_EQ(c.params.at("beta"), "0.1");
  EXPECT_EQ(c.params.at("M"), "1..4");
  EXPECT_EQ(c.seed, 7u);
  EXPECT_EQ(c.output_path, "x.csv");
  EXPECT_THROW(parse_config_text("beta\n"), ValidationError);
  EXPECT_THROW(parse_config_text("experiment=zzz\n"), ValidationError);
  EXPECT_THROW(parse_config_text("seed=-3\n"), ValidationError);
}

TEST(run, mi_table) {
  const auto t = run(make(Experiment::kMi, {{"beta", "0.25"}, {"M", "1..20"}}));
  ASSERT_EQ(t.rows.size(), 20u);
  const auto mi = t.column_values("mi_quadrature");
  for (int M = 1; M <= 20; ++M) {
    EXPECT_EQ(t.rows[M - 1][t.column("M")], M);
    EXPECT_EQ(mi[M - 1], mutual_info_quadrature(IsotropicNoise(0.25), M).value_bits);
  }
}

TEST(run, validation_errors_name_parameter_and_invariant) {
  std::string param;
  auto msg = validation_message(make(Experiment::kDist, {{"beta", "0.7"}}), &param);
  EXPECT_EQ(param, "beta");
  EXPECT_NE(msg.find("0 <= beta <= 1/2"), std::string::npos) << msg;
  EXPECT_NE(msg.find("0.7"), std::string::npos) << msg;

  msg = validation_message(make(Experiment::kMi, {{"M", "0..3"}}), &param);
  EXPECT_EQ(param, "M");
  msg = validation_message(make(Experiment::kMi, {{"bogus", "1"}}), &param);
  EXPECT_EQ(param, "bogus");
  msg = validation_message(make(Experiment::kMi, {{"eta", "0.5"}}), &param);
  EXPECT_EQ(param, "eta");
  EXPECT_NE(msg.find("not used"), std::string::npos);
  msg = validation_message(make(Experiment::kDist, {{"N", "2"}}), &param);
  EXPECT_EQ(param, "N");
  EXPECT_NO_THROW(run(make(Experiment::kDist, {{"N", "1"}})));
  msg = validation_message(make(Experiment::kMiMajority, {{"M", "1..4"}}), &param);
  EXPECT_EQ(param, "M");
  EXPECT_NO_THROW(run(make(Experiment::kMiMajority, {{"M", "1..4"}, {"tie", "random_tie"}})));
  msg = validation_message(make(Experiment::kCvPhoto, {{"state", "squeezed"}}), &param);
  EXPECT_EQ(param, "state");
  msg = validation_message(make(Experiment::kDist, {{"a", "0.5"}, {"theta", "1"}}), &param);
  EXPECT_EQ(param, "theta");
  msg = validation_message(make(Experiment::kMiQudit, {{"d", "2.5"}}), &param);
  EXPECT_EQ(param, "d");
  msg = validation_message(make(Experiment::kReproduce, {{"figure", "fig9"}}), &param);
  EXPECT_EQ(param, "figure");
}

TEST(run, resource_errors_surface) {
  EXPECT_THROW(run(make(Experiment::kMiQudit, {{"d", "64"}, {"M", "20"}})), ResourceError);
}

TEST(run, grid_order_first_parameter_slowest) {
  const auto t = run(make(Experiment::kMiBinary, {{"beta", "0.1,0.3"}, {"M", "1..3"}}));
  ASSERT_EQ(t.rows.size(), 6u);
  const std::vector<double> beta = {0.1, 0.1, 0.1, 0.3, 0.3, 0.3};
  const std::vector<double> M = {1, 2, 3, 1, 2, 3};
  EXPECT_EQ(t.column_values("beta"), beta);
  EXPECT_EQ(t.column_values("M"), M);
}

TEST(run, dist_theta_form) {
  const auto t = run(make(Experiment::kDist, {{"beta", "0.25"}, {"theta", "0"}, {"M", "2"}}));
  ASSERT_EQ(t.rows.size(), 3u);
  EXPECT_EQ(t.column_values("a")[0], 1.0);
  EXPECT_DOUBLE_EQ(t.column_values("probability")[0], 0.5625);
}

TEST(run, every_experiment_runs_with_defaults) {
  for (auto e : {Experiment::kDist, Experiment::kEstimate, Experiment::kMi, Experiment::kMiBinary,
                 Experiment::kMiMajority, Experiment::kMiQudit, Experiment::kCvPhoto, Experiment::kCvHomodyne,
                 Experiment::kCvHeterodyne}) {
    const auto t = run(make(e, {}));
    EXPECT_FALSE(t.rows.empty()) << to_string(e);
    for (const auto &row : t.rows) {
      ASSERT_EQ(row.size(), t.columns.size());
    }
  }
  const auto pdf = run(make(Experiment::kCvHomodyne, {{"emit", "pdf"}}));
  EXPECT_EQ(pdf.rows.size(), static_cast<std::size_t>(kHomodyneGridPoints));
}

TEST(run, deterministic_given_seed) {
  auto c = make(Experiment::kEstimate, {{"M", "2,10"}, {"n", "500"}});
  c.seed = 99;
  const auto a = to_csv(run(c));
  const auto b = to_csv(run(c));
  EXPECT_EQ(a, b);
  c.seed = 100;
  EXPECT_NE(a, to_csv(run(c)));
  EXPECT_NE(a.find("# seed=99"), std::string::npos);
  EXPECT_NE(a.find("# param.n=500"), std::string::npos);
}

TEST(csv, round_trip_is_lossless) {
  for (auto table : {run(make(Experiment::kMi, {{"beta", "0,0.25"}, {"M", "1..6"}})), reproduce(Figure::kFig8),
                     run(make(Experiment::kCvHeterodyne, {{"G", "3"}}))}) {
    std::istringstream in(to_csv(table));
    const auto back = read_csv(in);
    EXPECT_EQ(back.columns, table.columns);
    EXPECT_EQ(back.metadata, table.metadata);
    ASSERT_EQ(back.rows.size(), table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
      for (std::size_t j = 0; j < table.columns.size(); ++j) {
        const double want = table.rows[i][j];
        if (std::isnan(want)) {
          ASSERT_TRUE(std::isnan(back.rows[i][j]));
        } else {
          ASSERT_TRUE(same_bits(back.rows[i][j], want)) << i << " " << j;
        }
      }
    }
    EXPECT_EQ(to_csv(back), to_csv(table));
  }
}

TEST(reproduce, figure_tables) {
  const auto f4 = reproduce(Figure::kFig4);
  EXPECT_EQ(f4.column_values("n"), (std::vector<double>{250, 500, 1000, 2000, 4000}));
  EXPECT_NO_THROW(f4.column("variance"));
  EXPECT_NO_THROW(f4.column("crb"));

  const auto f6 = reproduce(Figure::kFig6);
  ASSERT_EQ(f6.rows.size(), 30u);
  const auto mi = run(make(Experiment::kMi, {{"beta", "0.25"}, {"M", "1..30"}}));
  const auto ordinate = f6.column_values("neg_log2_gap");
  const auto mi_values = mi.column_values("mi_quadrature");
  for (std::size_t i = 0; i < ordinate.size(); ++i) {
    EXPECT_EQ(ordinate[i], -std::log2(1.0 - mi_values[i] / ideal_mutual_info()));
  }

  const auto fq = reproduce(Figure::kFigQudit);
  EXPECT_EQ(fq.rows.size(), 20u);
  EXPECT_EQ(fq.column_values("alpha")[0], 0.8);
  EXPECT_EQ(fq.column_values("alpha")[19], 0.4);

  const auto f8 = reproduce(Figure::kFig8);
  for (double M : f8.column_values("M")) {
    EXPECT_EQ(std::fmod(M, 2.0), 1.0);
  }
}

TEST(reproduce, fig5_has_bound_columns) {
  const auto f5 = reproduce(Figure::kFig5);
  EXPECT_EQ(f5.rows.size(), 20u);
  const auto upper = f5.column_values("upper_bound");
  const auto lower = f5.column_values("lower_bound");
  for (std::size_t i = 0; i < upper.size(); ++i) {
    EXPECT_NEAR(lower[i], 0.1875 / 2000, 1e-18);
    EXPECT_GT(upper[i], lower[i]);
  }
}
