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

#ifndef POVM_MEASUREMENT_MODEL_H
#define POVM_MEASUREMENT_MODEL_H

// Outcome statistics of M noisy sigma_z measurements applied after
// orthogonal cloning of one qubit. Each noisy POVM element is
// alpha |i><i| + beta I with alpha = 1 - 2 beta. Because every element is
// diagonal in the sigma_z basis, the coherent cloning channel gives the
// same statistics, and nothing here depends on the off-diagonal b.

#include <cstdint>
#include <span>
#include <vector>

#include "povm/numeric.h"

namespace povm {

/// Isotropic POVM noise, 0 <= beta <= 1/2.
class IsotropicNoise {
 public:
  explicit IsotropicNoise(double beta);

  double beta() const { return beta_; }
  double alpha() const { return 1.0 - 2.0 * beta_; }

 private:
  double beta_;
};

/// Qubit state rho_{a,b}; theta/phi are the Bloch angles of the pure case.
/// b is carried for completeness and never enters a probability.
struct QubitParam {
  double a = 1.0;
  double b = 0.0;

  static QubitParam from_population(double a);
  static QubitParam from_angles(double theta, double phi = 0.0);
};

/// M clones measured, M1 of them reported outcome 1.
struct CloneCount {
  int M = 1;
  int M1 = 0;

  int M0() const { return M - M1; }
};

/// Exact distribution of M1 in {0..M}.
struct CountDistribution {
  int M = 1;
  std::vector<double> probs;

  std::vector<double> cdf() const;
};

/// Signal/noise of the d-level model: P'_i = alpha |i><i| + (1 - alpha)/d I.
class QuditNoise {
 public:
  QuditNoise(int d, double alpha);

  int d() const { return d_; }
  double alpha() const { return alpha_; }
  /// Probability that one noisy measurement of |j> reports j.
  double hit_probability() const { return ((d_ - 1) * alpha_ + 1.0) / d_; }
  /// Probability that it reports a given wrong letter.
  double miss_probability() const { return (1.0 - alpha_) / d_; }

 private:
  int d_;
  double alpha_;
};

/// p(M1 | a) = a Bin(M1; M, beta) + (1 - a) Bin(M1; M, 1 - beta).
double conditional_prob(const IsotropicNoise &noise, double a, const CloneCount &count);

/// Same with a = cos^2(theta / 2), 0 <= theta <= pi.
double conditional_prob_theta(const IsotropicNoise &noise, double theta, const CloneCount &count);

CountDistribution count_distribution(const IsotropicNoise &noise, double a, int M);

/// n i.i.d. draws by inverse CDF. Draw i uses counter i of (seed, stream).
std::vector<int> sample_counts(const CountDistribution &dist, std::int64_t n, std::uint64_t seed,
                               std::uint64_t stream = 0, Exec exec = Exec::kParallel);

/// Multinomial probability of the count vector (M_1..M_d) given input |j>, j in 1..d.
double qudit_conditional_prob(const QuditNoise &noise, int j, std::span<const int> counts);

/// The two component columns of p(M1 | a): Bin(.; M, beta) and Bin(.; M, 1 - beta).
std::vector<double> binomial_column(int M, double p);

}  // namespace povm

#endif
