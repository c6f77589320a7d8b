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

#ifndef POVM_NUMERIC_H
#define POVM_NUMERIC_H

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace povm {

/// Largest M for which binomial coefficients are formed in exact integer arithmetic.
inline constexpr int kExactBinomialMax = 64;

/// Execution policy for the data-parallel kernels.
enum class Exec { kSerial, kParallel };

/// C(n, k). Exact (uint64) for n <= 64, log-gamma beyond.
double binomial_coefficient(int n, int k);
double log_binomial_coefficient(int n, int k);

/// C(n, k) p^k (1-p)^(n-k), with 0^0 = 1.
double binomial_pmf(int n, int k, double p);

/// M! / (c_1! ... c_d!). Product of exact binomials for sum <= 64.
double multinomial_coefficient(std::span<const int> counts);
double log_multinomial_coefficient(std::span<const int> counts);

/// x log2 x with 0 log 0 = 0.
inline double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

/// Binary entropy in bits.
double binary_entropy(double p);

/// Neumaier's compensated summation. Order of add() calls fixes the result.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum &operator+=(double x) {
    add(x);
    return *this;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double compensated_sum(std::span<const double> values);

/// Gauss-Legendre nodes and weights on [lo, hi].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussLegendre gauss_legendre(int n, double lo, double hi);

}  // namespace povm

#endif
