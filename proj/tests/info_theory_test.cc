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

#include "povm/info_theory.h"

#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <map>
#include <numbers>

#include "povm/errors.h"
#include "support.h"

using namespace povm;
using povm::testing::linspace;

namespace {

// Under the prior (1/2) sin(theta) dtheta the population a = cos^2(theta/2)
// is uniform on [0, 1], and p(M1 | a) is linear in a, so each term of the
// mutual information integrates in closed form.
double entropy_integral_term(double x, double y) {
  const double m = 0.5 * (x + y);
  if (m == 0.0) {
    return 0.0;
  }
  const auto f = [](double v) { return v > 0.0 ? v * v * std::log(v) : 0.0; };
  double mean_plogp = 0.0;
  const double h = 0.5 * (x - y);
  if (std::fabs(h) < 1e-4 * m) {
    mean_plogp = 0.5 * (2 * m * std::log(m) + m + (2.0 / m) * h * h / 6.0) - 0.5 * m;
  } else {
    mean_plogp = (f(x) - f(y)) / (2 * (x - y)) - 0.5 * m;
  }
  return mean_plogp - m * std::log(m);
}

double oracle_mi(double beta, int M) {
  double s = 0.0;
  for (int k = 0; k <= M; ++k) {
    const double c = std::exp(std::lgamma(M + 1.0) - std::lgamma(k + 1.0) - std::lgamma(M - k + 1.0));
    const double x = c * std::pow(beta, k) * std::pow(1 - beta, M - k);
    const double y = c * std::pow(1 - beta, k) * std::pow(beta, M - k);
    s += entropy_integral_term(x, y);
  }
  return s / std::numbers::ln2;
}

// H(Y) - H(Y | X) for a uniform input letter over a channel given as rows.
double channel_mi(const std::vector<std::vector<double>> &rows) {
  const std::size_t outputs = rows[0].size();
  double h_y = 0.0;
  double h_y_x = 0.0;
  for (std::size_t o = 0; o < outputs; ++o) {
    double py = 0.0;
    for (const auto &r : rows) {
      py += r[o] / rows.size();
      if (r[o] > 0) {
        h_y_x -= r[o] * std::log2(r[o]) / rows.size();
      }
    }
    if (py > 0) {
      h_y -= py * std::log2(py);
    }
  }
  return h_y - h_y_x;
}

double binary_oracle(double beta, int M) {
  std::vector<std::vector<double>> rows(2, std::vector<double>(M + 1));
  for (int k = 0; k <= M; ++k) {
    const double c = std::exp(std::lgamma(M + 1.0) - std::lgamma(k + 1.0) - std::lgamma(M - k + 1.0));
    rows[0][k] = c * std::pow(beta, k) * std::pow(1 - beta, M - k);
    rows[1][k] = c * std::pow(1 - beta, k) * std::pow(beta, M - k);
  }
  return channel_mi(rows);
}

// Qudit channel by enumerating ordered outcome sequences.
double qudit_oracle(int d, double alpha, int M) {
  const double hit = ((d - 1) * alpha + 1.0) / d;
  const double miss = (1.0 - alpha) / d;
  std::vector<std::map<std::vector<int>, double>> rows(d);
  std::vector<int> seq(M);
  for (int j = 0; j < d; ++j) {
    std::function<void(int, double)> walk = [&](int pos, double p) {
      if (pos == M) {
        std::vector<int> c(d, 0);
        for (int s : seq) {
          ++c[s];
        }
        rows[j][c] += p;
        return;
      }
      for (int s = 0; s < d; ++s) {
        seq[pos] = s;
        walk(pos + 1, p * (s == j ? hit : miss));
      }
    };
    walk(0, 1.0);
  }
  std::vector<std::vector<double>> dense(d);
  for (const auto &[c, p] : rows[0]) {
    for (int j = 0; j < d; ++j) {
      dense[j].push_back(rows[j][c]);
    }
  }
  return channel_mi(dense);
}

}  // namespace

TEST(ideal_mutual_info, matches_exact_value) {
  const double exact = 1.0 - 1.0 / (2.0 * std::numbers::ln2);
  EXPECT_NEAR(ideal_mutual_info(), exact, 1e-12);
  EXPECT_NEAR(mutual_info_quadrature(IsotropicNoise(0.0), 1).value_bits, exact, 1e-10);
  EXPECT_NEAR(ideal_mutual_info(), 0.279, 0.0005);
}

TEST(mutual_info_quadrature, matches_exact_integral_oracle) {
  for (double beta : linspace(0.0, 0.5, 11)) {
    for (int M = 1; M <= 30; ++M) {
      ASSERT_NEAR(mutual_info_quadrature(IsotropicNoise(beta), M).value_bits, oracle_mi(beta, M), 1e-10)
          << beta << " " << M;
    }
  }
}

TEST(mutual_info_quadrature, no_information_at_half) {
  for (int M : {1, 5, 20}) {
    EXPECT_NEAR(mutual_info_quadrature(IsotropicNoise(0.5), M).value_bits, 0.0, 1e-15);
  }
}

TEST(mutual_info_quadrature, node_doubling_converged) {
  for (double beta : {0.0, 0.1, 0.25, 0.4}) {
    for (int M : {1, 10, 25}) {
      const IsotropicNoise noise(beta);
      const auto r256 = mutual_info_quadrature(noise, M, QuadratureRule::gauss_legendre(256));
      const auto r512 = mutual_info_quadrature(noise, M, QuadratureRule::gauss_legendre(512));
      EXPECT_LT(std::fabs(r256.value_bits - r512.value_bits), 1e-9);
      EXPECT_TRUE(mutual_info_quadrature(noise, M).notes.empty());
    }
  }
}

TEST(mutual_info_quadrature, serial_matches_parallel) {
  for (int M : {1, 7, 30}) {
    const IsotropicNoise noise(0.2);
    EXPECT_EQ(mutual_info_quadrature(noise, M, Exec::kSerial).value_bits,
              mutual_info_quadrature(noise, M, Exec::kParallel).value_bits);
  }
}

TEST(quadrature_rule, validates) {
  EXPECT_NO_THROW(QuadratureRule::gauss_legendre(32).validate());
  QuadratureRule bad = QuadratureRule::gauss_legendre(32);
  bad.weights[0] *= 2;
  EXPECT_THROW(bad.validate(), DomainError);
  QuadratureRule outside = QuadratureRule::gauss_legendre(8);
  outside.nodes[0] = -0.1;
  EXPECT_THROW(outside.validate(), DomainError);
}

TEST(mutual_info_closed_form, agrees_with_quadrature) {
  for (double beta : {0.1, 0.25, 0.4}) {
    for (int M = 1; M <= 20; ++M) {
      const IsotropicNoise noise(beta);
      const auto closed = mutual_info_closed_form(noise, M);
      EXPECT_NEAR(closed.value_bits, mutual_info_quadrature(noise, M).value_bits, 1e-6) << beta << " " << M;
      EXPECT_EQ(closed.notes.empty(), M % 2 == 1);
    }
  }
  EXPECT_NEAR(mutual_info_closed_form(IsotropicNoise(1e-4), 1).value_bits, 0.279, 0.001);
  EXPECT_THROW(mutual_info_closed_form(IsotropicNoise(0.0), 3), DomainError);
  EXPECT_THROW(mutual_info_closed_form(IsotropicNoise(0.5), 3), DomainError);
}

TEST(binary_mutual_info, endpoints_and_oracle) {
  for (int M = 1; M <= 25; ++M) {
    EXPECT_EQ(binary_mutual_info(IsotropicNoise(0.0), M).value_bits, 1.0);
    EXPECT_EQ(binary_mutual_info(IsotropicNoise(0.5), M).value_bits, 0.0);
  }
  EXPECT_NEAR(binary_mutual_info(IsotropicNoise(0.25), 1).value_bits, 0.18872187554086717, 1e-14);
  for (double beta : linspace(0.0, 0.5, 26)) {
    EXPECT_NEAR(binary_mutual_info(IsotropicNoise(beta), 1).value_bits, 1.0 - binary_entropy(beta), 1e-12);
    for (int M : {2, 5, 13, 25}) {
      EXPECT_NEAR(binary_mutual_info(IsotropicNoise(beta), M).value_bits, binary_oracle(beta, M), 1e-12);
    }
  }
}

TEST(majority_vote, examples) {
  const IsotropicNoise noise(0.25);
  EXPECT_DOUBLE_EQ(majority_vote_mutual_info(noise, 1).value_bits, binary_mutual_info(noise, 1).value_bits);
  EXPECT_NEAR(majority_vote_mutual_info(noise, 3).value_bits, 1.0 - binary_entropy(0.15625), 1e-14);
  EXPECT_NEAR(majority_vote_mutual_info(noise, 3).value_bits, 0.3747, 5e-5);
  EXPECT_THROW(majority_vote_mutual_info(noise, 4), DomainError);
  // A fair coin on the M = 2 tie gives error beta, the single-copy channel.
  for (double beta : {0.05, 0.25, 0.4}) {
    const IsotropicNoise n(beta);
    EXPECT_NEAR(majority_vote_mutual_info(n, 2, TieRule::kRandomTie).value_bits, 1.0 - binary_entropy(beta), 1e-14);
  }
}

TEST(majority_vote, never_exceeds_full_statistic) {
  for (double beta : linspace(0.0, 0.5, 21)) {
    const IsotropicNoise noise(beta);
    for (int M = 1; M <= 25; ++M) {
      const double maj = majority_vote_mutual_info(noise, M, TieRule::kRandomTie).value_bits;
      ASSERT_LE(maj, binary_mutual_info(noise, M).value_bits + 1e-12) << beta << " " << M;
      if (M % 2 == 1) {
        ASSERT_DOUBLE_EQ(maj, majority_vote_mutual_info(noise, M).value_bits);
      }
    }
  }
}

TEST(mutual_info, nondecreasing_in_M_and_bounded) {
  const double ideal = ideal_mutual_info();
  for (double beta : linspace(0.0, 0.5, 11)) {
    const IsotropicNoise noise(beta);
    double q = -1, b = -1, m = -1, closed = -1;
    for (int M = 1; M <= 25; ++M) {
      const double qv = mutual_info_quadrature(noise, M).value_bits;
      const double bv = binary_mutual_info(noise, M).value_bits;
      ASSERT_GE(qv, q - 1e-13);
      ASSERT_GE(bv, b - 1e-13);
      ASSERT_LE(qv, ideal + 1e-12);
      ASSERT_LE(bv, 1.0);
      q = qv;
      b = bv;
      if (M % 2 == 1) {
        const double mv = majority_vote_mutual_info(noise, M).value_bits;
        ASSERT_GE(mv, m - 1e-13);
        m = mv;
      }
      if (beta > 0.0 && beta < 0.5) {
        const double cv = mutual_info_closed_form(noise, M).value_bits;
        ASSERT_GE(cv, closed - 1e-12);
        closed = cv;
      }
    }
  }
  for (double alpha : {0.0, 0.3, 0.8}) {
    double prev = -1;
    for (int M = 1; M <= 12; ++M) {
      const double v = qudit_mutual_info(QuditNoise(3, alpha), M).value_bits;
      ASSERT_GE(v, prev - 1e-12);
      ASSERT_LE(v, std::log2(3.0) + 1e-12);
      prev = v;
    }
  }
}

TEST(qudit_mutual_info, oracles) {
  for (int M = 1; M <= 10; ++M) {
    EXPECT_NEAR(qudit_mutual_info(QuditNoise(4, 0.0), M).value_bits, 0.0, 1e-12);
    EXPECT_NEAR(qudit_mutual_info(QuditNoise(4, 1.0), M).value_bits, 2.0, 1e-12);
    // Two letters reduce to the binary channel with beta = (1 - alpha) / 2.
    for (double alpha : {0.2, 0.5, 0.9}) {
      EXPECT_NEAR(qudit_mutual_info(QuditNoise(2, alpha), M).value_bits,
                  binary_mutual_info(IsotropicNoise((1 - alpha) / 2), M).value_bits, 1e-12);
    }
  }
  for (int d = 3; d <= 4; ++d) {
    for (int M = 1; M <= 5; ++M) {
      for (double alpha : {0.4, 0.8}) {
        EXPECT_NEAR(qudit_mutual_info(QuditNoise(d, alpha), M).value_bits, qudit_oracle(d, alpha, M), 1e-12);
      }
    }
  }
}

TEST(qudit_mutual_info, approaches_log2_d) {
  const QuditNoise noise(4, 0.8);
  EXPECT_GT(qudit_mutual_info(noise, 16).value_bits, 1.999);
}

TEST(qudit_mutual_info, serial_matches_parallel_and_bounded_enumeration) {
  const QuditNoise noise(5, 0.6);
  EXPECT_NEAR(qudit_mutual_info(noise, 12, Exec::kSerial).value_bits,
              qudit_mutual_info(noise, 12, Exec::kParallel).value_bits, 1e-12);
  EXPECT_THROW(qudit_mutual_info(QuditNoise(64, 0.5), 20), ResourceError);
}
