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

#include "povm/numeric.h"

#include <numbers>
#include <stdexcept>

namespace povm {

namespace {

std::uint64_t exact_binomial(int n, int k) {
  if (k > n - k) {
    k = n - k;
  }
  unsigned __int128 c = 1;
  for (int i = 0; i < k; ++i) {
    // c * (n - i) / (i + 1) is always an integer: c holds C(n, i).
    c = c * static_cast<unsigned>(n - i) / static_cast<unsigned>(i + 1);
  }
  return static_cast<std::uint64_t>(c);
}

}  // namespace

double binomial_coefficient(int n, int k) {
  if (k < 0 || k > n || n < 0) {
    return 0.0;
  }
  if (n <= kExactBinomialMax) {
    return static_cast<double>(exact_binomial(n, k));
  }
  return std::exp(log_binomial_coefficient(n, k));
}

double log_binomial_coefficient(int n, int k) {
  if (k < 0 || k > n || n < 0) {
    return -INFINITY;
  }
  if (n <= kExactBinomialMax) {
    return std::log(static_cast<double>(exact_binomial(n, k)));
  }
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double binomial_pmf(int n, int k, double p) {
  if (k < 0 || k > n) {
    return 0.0;
  }
  if (n <= kExactBinomialMax) {
    return binomial_coefficient(n, k) * std::pow(p, k) * std::pow(1.0 - p, n - k);
  }
  if (p == 0.0) {
    return k == 0 ? 1.0 : 0.0;
  }
  if (p == 1.0) {
    return k == n ? 1.0 : 0.0;
  }
  return std::exp(log_binomial_coefficient(n, k) + k * std::log(p) + (n - k) * std::log1p(-p));
}

double multinomial_coefficient(std::span<const int> counts) {
  int total = 0;
  for (int c : counts) {
    total += c;
  }
  if (total > kExactBinomialMax) {
    return std::exp(log_multinomial_coefficient(counts));
  }
  double result = 1.0;
  int remaining = total;
  for (int c : counts) {
    result *= binomial_coefficient(remaining, c);
    remaining -= c;
  }
  return result;
}

double log_multinomial_coefficient(std::span<const int> counts) {
  int total = 0;
  double log_denominator = 0.0;
  for (int c : counts) {
    total += c;
    log_denominator += std::lgamma(c + 1.0);
  }
  return std::lgamma(total + 1.0) - log_denominator;
}

double binary_entropy(double p) { return -xlog2x(p) - xlog2x(1.0 - p); }

double compensated_sum(std::span<const double> values) {
  CompensatedSum s;
  for (double v : values) {
    s.add(v);
  }
  return s.value();
}

GaussLegendre gauss_legendre(int n, double lo, double hi) {
  if (n < 1) {
    throw std::invalid_argument("gauss_legendre: n must be >= 1");
  }
  GaussLegendre rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double mid = 0.5 * (hi + lo);
  const double half = 0.5 * (hi - lo);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double step = p0 / dp;
      z -= step;
      if (std::fabs(step) < 1e-16) {
        break;
      }
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[i] = mid - half * z;
    rule.nodes[n - 1 - i] = mid + half * z;
    rule.weights[i] = half * w;
    rule.weights[n - 1 - i] = half * w;
  }
  return rule;
}

}  // namespace povm
