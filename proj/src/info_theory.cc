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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "povm/errors.h"
#include "povm/kernels/kernels.h"

namespace povm {

namespace {

void check_M(int M) {
  if (M < 1) {
    throw DomainError("M must be >= 1");
  }
}

MutualInfoResult make_result(double value, MiMethod method, int M, double noise, int d = 2) {
  MutualInfoResult r;
  r.value_bits = value;
  r.method = method;
  r.M = M;
  r.noise = noise;
  r.d = d;
  return r;
}

double log_add_exp(double u, double v) {
  const double hi = std::max(u, v);
  return hi + std::log1p(std::exp(-std::fabs(u - v)));
}

double evaluate_quadrature(const IsotropicNoise &noise, int M, const QuadratureRule &rule, Exec exec) {
  const auto x = binomial_column(M, noise.beta());
  const auto y = binomial_column(M, 1.0 - noise.beta());
  std::vector<double> marginal(M + 1);
  for (int k = 0; k <= M; ++k) {
    marginal[k] = 0.5 * (x[k] + y[k]);
  }
  return exec == Exec::kSerial
             ? kernels::serial::quadrature_mutual_information(rule.nodes, rule.weights, x, y, marginal)
             : kernels::parallel::quadrature_mutual_information(rule.nodes, rule.weights, x, y, marginal);
}

}  // namespace

const char *to_string(MiMethod m) {
  switch (m) {
    case MiMethod::kQuadrature:
      return "quadrature";
    case MiMethod::kClosedForm:
      return "closed_form";
    case MiMethod::kBinary:
      return "binary";
    case MiMethod::kMajority:
      return "majority";
    case MiMethod::kQudit:
      return "qudit";
  }
  return "unknown";
}

QuadratureRule QuadratureRule::gauss_legendre(int n) {
  auto gl = povm::gauss_legendre(n, 0.0, std::numbers::pi);
  return QuadratureRule{std::move(gl.nodes), std::move(gl.weights)};
}

void QuadratureRule::validate() const {
  if (nodes.empty() || nodes.size() != weights.size()) {
    throw DomainError("quadrature rule needs matching, non-empty nodes and weights");
  }
  CompensatedSum mass;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!(nodes[i] >= 0.0 && nodes[i] <= std::numbers::pi)) {
      throw DomainError("quadrature node outside [0, pi]");
    }
    mass.add(weights[i] * std::sin(nodes[i]));
  }
  if (std::fabs(mass.value() - 2.0) > 1e-10) {
    throw DomainError("quadrature rule: sum of w sin(theta) = " + std::to_string(mass.value()) + ", expected 2");
  }
}

double marginal_count_prob(const IsotropicNoise &noise, int M, int M1) {
  check_M(M);
  if (M1 < 0 || M1 > M) {
    throw DomainError("M1 outside [0, M]");
  }
  return 0.5 * (binomial_pmf(M, M1, noise.beta()) + binomial_pmf(M, M1, 1.0 - noise.beta()));
}

MutualInfoResult mutual_info_quadrature(const IsotropicNoise &noise, int M, const QuadratureRule &rule,
                                        Exec exec) {
  check_M(M);
  rule.validate();
  return make_result(evaluate_quadrature(noise, M, rule, exec), MiMethod::kQuadrature, M, noise.beta());
}

MutualInfoResult mutual_info_quadrature(const IsotropicNoise &noise, int M, Exec exec) {
  static const QuadratureRule base = QuadratureRule::gauss_legendre(kDefaultQuadratureNodes);
  static const QuadratureRule doubled = QuadratureRule::gauss_legendre(2 * kDefaultQuadratureNodes);
  auto result = mutual_info_quadrature(noise, M, base, exec);
  const double fine = evaluate_quadrature(noise, M, doubled, exec);
  if (std::fabs(fine - result.value_bits) > 1e-9) {
    result.notes.push_back("quadrature degeneracy: doubling nodes moved the result by " +
                           std::to_string(fine - result.value_bits));
  }
  return result;
}

MutualInfoResult mutual_info_closed_form(const IsotropicNoise &noise, int M) {
  check_M(M);
  const double beta = noise.beta();
  if (beta == 0.0 || beta == 0.5) {
    throw DomainError("closed-form mutual information is undefined at beta in {0, 1/2}");
  }
  const double lq = std::log1p(-beta);
  const double lb = std::log(beta);
  const double inv_ln2 = 1.0 / std::numbers::ln2;
  auto result = make_result(0.0, MiMethod::kClosedForm, M, beta);
  CompensatedSum total;
  for (int k = 0; k <= M; ++k) {
    if (2 * k == M) {
      // C = 0 and c1 A + c2 B = 0: this count is uninformative.
      result.notes.push_back("skipped removable 0/0 term at M1 = " + std::to_string(k));
      continue;
    }
    const double ln_c1 = 2.0 * M * lq + 4.0 * k * lb;
    const double ln_c2 = 4.0 * k * lq + 2.0 * M * lb;
    const double log2_s = log_add_exp(2.0 * k * lq + M * lb, M * lq + 2.0 * k * lb) * inv_ln2;
    const double A = -16.0 * log2_s + 8.0 * ln_c1 * inv_ln2 + 16.0 - 8.0 * inv_ln2;
    const double B = 16.0 * log2_s - 8.0 * ln_c2 * inv_ln2 - 16.0 + 8.0 * inv_ln2;
    const double u = (M + k) * lq + 3.0 * k * lb;
    const double v = 3.0 * k * lq + (M + k) * lb;
    const double ln_abs_c = std::max(u, v) + std::log1p(-std::exp(-std::fabs(u - v)));
    const double sign = u > v ? 1.0 : -1.0;
    const double ln_binom = log_binomial_coefficient(M, k);
    total.add(sign * (std::exp(ln_binom + ln_c1 - ln_abs_c) * A + std::exp(ln_binom + ln_c2 - ln_abs_c) * B));
  }
  result.value_bits = total.value() / 32.0;
  return result;
}

MutualInfoResult binary_mutual_info(const IsotropicNoise &noise, int M) {
  check_M(M);
  const auto x = binomial_column(M, noise.beta());
  const auto y = binomial_column(M, 1.0 - noise.beta());
  CompensatedSum total;
  for (int k = 0; k <= M; ++k) {
    if (y[k] > 0.0) {
      total.add(y[k] * std::log2(2.0 * y[k] / (x[k] + y[k])));
    }
  }
  return make_result(total.value(), MiMethod::kBinary, M, noise.beta());
}

MutualInfoResult majority_vote_mutual_info(const IsotropicNoise &noise, int M, TieRule tie) {
  check_M(M);
  if (tie == TieRule::kOddOnly && M % 2 == 0) {
    throw DomainError("majority vote with tie rule odd_only needs odd M, got M = " + std::to_string(M));
  }
  // Input theta = 0: a vote is wrong when more than half the clones report 1.
  CompensatedSum error;
  for (int k = M / 2 + 1; k <= M; ++k) {
    error.add(binomial_pmf(M, k, noise.beta()));
  }
  if (M % 2 == 0) {
    error.add(0.5 * binomial_pmf(M, M / 2, noise.beta()));
  }
  return make_result(1.0 - binary_entropy(error.value()), MiMethod::kMajority, M, noise.beta());
}

MutualInfoResult qudit_mutual_info(const QuditNoise &noise, int M, Exec exec) {
  check_M(M);
  const int d = noise.d();
  const double outcomes = std::exp(log_binomial_coefficient(M + d - 1, d - 1));
  if (outcomes > kMaxQuditOutcomes * (1.0 + 1e-12)) {
    throw ResourceError("qudit enumeration of " + std::to_string(outcomes) + " count vectors exceeds the " +
                        std::to_string(kMaxQuditOutcomes) + " bound");
  }
  const double log_w = std::log(noise.hit_probability());
  const double log_u = std::log(noise.miss_probability());
  const double value = exec == Exec::kSerial ? kernels::serial::qudit_mutual_information(d, M, log_w, log_u)
                                             : kernels::parallel::qudit_mutual_information(d, M, log_w, log_u);
  return make_result(value, MiMethod::kQudit, M, noise.alpha(), d);
}

double ideal_mutual_info() {
  static const double value = [] {
    const auto rule = QuadratureRule::gauss_legendre(2048);
    return evaluate_quadrature(IsotropicNoise(0.0), 1, rule, Exec::kSerial);
  }();
  return value;
}

}  // namespace povm
