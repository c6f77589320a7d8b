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

#ifndef POVM_ESTIMATION_H
#define POVM_ESTIMATION_H

#include <cstdint>
#include <span>
#include <vector>

#include "povm/measurement_model.h"
#include "povm/numeric.h"

namespace povm {

/// Controls for the Fisher scoring iteration.
struct ScoringConfig {
  double a0 = 0.5;
  double tol = 1e-8;
  int max_iter = 100;

  void validate() const;
};

/// Iterates are kept inside [kClampLo, kClampHi] so the likelihood stays finite.
inline constexpr double kClampLo = 1e-9;
inline constexpr double kClampHi = 1.0 - 1e-9;

struct MlFit {
  double a = 0.0;
  int iterations = 0;
  /// An iterate left [kClampLo, kClampHi] and was pulled back.
  bool clamped = false;
};

struct BlockVariance {
  double variance = 0.0;
  double a_ml = 0.0;                 ///< estimate from all retained data
  std::vector<double> block_estimates;
  std::int64_t block_size = 0;
  std::int64_t dropped = 0;          ///< trailing runs not filling a block
  bool clamped = false;              ///< any block fit was clamped
};

struct EstimationReport {
  double a_ml = 0.0;
  int iterations = 0;
  double fisher = 0.0;      ///< F(a_ml), per run
  double crb = 0.0;         ///< 1 / (n F(a_ml))
  double block_variance = 0.0;
  double upper_bound = 0.0;
  double lower_bound = 0.0;
  std::int64_t n = 0;       ///< runs per block
  int block_count = 0;
  bool clamped = false;
};

/// Count of each M1 value in data; throws DomainError for values outside 0..M.
std::vector<std::int64_t> histogram(std::span<const int> data, int M);

/// L(a) = sum_j log2 p(M1_j | a). Returns -infinity when a datum has zero probability.
double log_likelihood(std::span<const int> data, const IsotropicNoise &noise, int M, double a);
double log_likelihood(std::span<const std::int64_t> hist, const IsotropicNoise &noise, double a);

/// dL/da of the base-2 log-likelihood.
double score(std::span<const std::int64_t> hist, const IsotropicNoise &noise, double a);

/// Single-run Fisher information sum_k (dp_k/da)^2 / p_k. Throws DegenerateError at beta = 1/2.
double fisher_information(const IsotropicNoise &noise, int M, double a);

/// Fisher scoring a <- a + score_e(a) / (n F(a)) on the natural-log score.
MlFit ml_estimate(std::span<const int> data, const IsotropicNoise &noise, int M, const ScoringConfig &cfg);
MlFit ml_estimate(std::span<const std::int64_t> hist, const IsotropicNoise &noise, const ScoringConfig &cfg);

/// sum_i (a_i - a_ML)^2 / block_count over consecutive blocks of size n / block_count.
BlockVariance block_variance(std::span<const int> data, const IsotropicNoise &noise, int M,
                             const ScoringConfig &cfg, int block_count, Exec exec = Exec::kParallel);

/// f(M1) = (M1/M + beta - 1) / (2 beta - 1), unbiased for a.
double linear_estimator(int M1, int M, double beta);

struct Moments {
  double mean = 0.0;
  double second_moment = 0.0;
};

/// Exact first and second moment of f(M1) under p(M1 | a).
Moments linear_estimator_moments(const IsotropicNoise &noise, int M, double a);

struct VarianceBounds {
  double upper = 0.0;
  double lower = 0.0;
};

/// upper = (a - a^2 + beta(1-beta)/((1-2beta)^2 M)) / n, lower = (a - a^2) / n.
VarianceBounds variance_bounds(const IsotropicNoise &noise, int M, double a, std::int64_t n);

/// One full experiment: block_count blocks of n runs each in data (length block_count * n).
EstimationReport estimate(std::span<const int> data, const IsotropicNoise &noise, int M, const ScoringConfig &cfg,
                          int block_count, Exec exec = Exec::kParallel);

}  // namespace povm

#endif
