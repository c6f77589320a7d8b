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

#include "povm/measurement_model.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "povm/errors.h"
#include "povm/kernels/kernels.h"

namespace povm {

namespace {

void check_population(double a) {
  if (!(a >= 0.0 && a <= 1.0)) {
    throw DomainError("population a = " + std::to_string(a) + " outside [0, 1]");
  }
}

void check_count(const CloneCount &count) {
  if (count.M < 1) {
    throw DomainError("M must be >= 1");
  }
  if (count.M1 < 0 || count.M1 > count.M) {
    throw DomainError("M1 = " + std::to_string(count.M1) + " outside [0, M = " + std::to_string(count.M) + "]");
  }
}

}  // namespace

IsotropicNoise::IsotropicNoise(double beta) : beta_(beta) {
  if (!(beta >= 0.0 && beta <= 0.5)) {
    throw DomainError("beta = " + std::to_string(beta) + " violates 0 <= beta <= 1/2");
  }
}

QubitParam QubitParam::from_population(double a) {
  check_population(a);
  return QubitParam{a, 0.0};
}

QubitParam QubitParam::from_angles(double theta, double phi) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi)) {
    throw DomainError("theta outside [0, pi]");
  }
  if (!(phi >= 0.0 && phi < 2.0 * std::numbers::pi)) {
    throw DomainError("phi outside [0, 2 pi)");
  }
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  // |b| of the pure state; the phase is dropped since nothing reads it.
  return QubitParam{c * c, c * s};
}

std::vector<double> CountDistribution::cdf() const {
  std::vector<double> c(probs.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    acc += probs[k];
    c[k] = acc;
  }
  if (!c.empty()) {
    c.back() = 1.0;
  }
  return c;
}

QuditNoise::QuditNoise(int d, double alpha) : d_(d), alpha_(alpha) {
  if (d < 2 || d > 64) {
    throw DomainError("d = " + std::to_string(d) + " outside [2, 64]");
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw DomainError("alpha = " + std::to_string(alpha) + " violates 0 <= alpha <= 1");
  }
}

std::vector<double> binomial_column(int M, double p) {
  std::vector<double> col(M + 1);
  for (int k = 0; k <= M; ++k) {
    col[k] = binomial_pmf(M, k, p);
  }
  return col;
}

double conditional_prob(const IsotropicNoise &noise, double a, const CloneCount &count) {
  check_population(a);
  check_count(count);
  const double beta = noise.beta();
  return a * binomial_pmf(count.M, count.M1, beta) + (1.0 - a) * binomial_pmf(count.M, count.M1, 1.0 - beta);
}

double conditional_prob_theta(const IsotropicNoise &noise, double theta, const CloneCount &count) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi)) {
    throw DomainError("theta = " + std::to_string(theta) + " outside [0, pi]");
  }
  const double c = std::cos(0.5 * theta);
  return conditional_prob(noise, std::min(1.0, c * c), count);
}

CountDistribution count_distribution(const IsotropicNoise &noise, double a, int M) {
  check_population(a);
  if (M < 1) {
    throw DomainError("M must be >= 1");
  }
  CountDistribution dist{M, std::vector<double>(M + 1)};
  for (int k = 0; k <= M; ++k) {
    dist.probs[k] = conditional_prob(noise, a, CloneCount{M, k});
  }
  return dist;
}

std::vector<int> sample_counts(const CountDistribution &dist, std::int64_t n, std::uint64_t seed,
                               std::uint64_t stream, Exec exec) {
  if (n < 1) {
    throw DomainError("sample size n must be >= 1");
  }
  const auto cdf = dist.cdf();
  const CounterRng rng(seed, stream);
  std::vector<int> out(static_cast<std::size_t>(n));
  if (exec == Exec::kSerial) {
    kernels::serial::sample_inverse_cdf(cdf, rng, out);
  } else {
    kernels::parallel::sample_inverse_cdf(cdf, rng, out);
  }
  return out;
}

double qudit_conditional_prob(const QuditNoise &noise, int j, std::span<const int> counts) {
  const int d = noise.d();
  if (static_cast<int>(counts.size()) != d) {
    throw DomainError("count vector must have d = " + std::to_string(d) + " entries");
  }
  if (j < 1 || j > d) {
    throw DomainError("input letter j = " + std::to_string(j) + " outside [1, d]");
  }
  int M = 0;
  for (int c : counts) {
    if (c < 0) {
      throw DomainError("negative entry in count vector");
    }
    M += c;
  }
  const int hits = counts[j - 1];
  return multinomial_coefficient(counts) * std::pow(noise.hit_probability(), hits) *
         std::pow(noise.miss_probability(), M - hits);
}

}  // namespace povm
