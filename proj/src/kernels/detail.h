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

#ifndef POVM_SRC_KERNELS_DETAIL_H
#define POVM_SRC_KERNELS_DETAIL_H

// Per-element arithmetic shared by the serial and parallel kernels, so the
// two differ only in loop structure and reduction order.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "povm/numeric.h"

namespace povm::kernels::detail {

inline int inverse_cdf_index(std::span<const double> cdf, double u) {
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  const auto k = static_cast<int>(it - cdf.begin());
  return std::min(k, static_cast<int>(cdf.size()) - 1);
}

inline double quadrature_node_value(double theta, std::span<const double> x, std::span<const double> y,
                                    std::span<const double> marginal) {
  const double c = std::cos(0.5 * theta);
  const double a = c * c;
  double sum = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double p = a * x[k] + (1.0 - a) * y[k];
    if (p > 0.0) {
      sum += p * std::log2(p / marginal[k]);
    }
  }
  return 0.5 * std::sin(theta) * sum;
}

inline std::vector<double> log_factorials(int n) {
  std::vector<double> lf(n + 1);
  for (int i = 0; i <= n; ++i) {
    lf[i] = std::lgamma(i + 1.0);
  }
  return lf;
}

/// e * log_base with the convention 0 * log(0) = 0.
inline double scaled_log(int e, double log_base) { return e == 0 ? 0.0 : e * log_base; }

/// Contribution of one count vector to the qudit mutual information.
inline double qudit_term(std::span<const int> counts, int M, double log_w, double log_u,
                         std::span<const double> lf) {
  const int d = static_cast<int>(counts.size());
  double log_mult = lf[M];
  for (int c : counts) {
    log_mult -= lf[c];
  }
  double log_p[64];
  double peak = -INFINITY;
  for (int j = 0; j < d; ++j) {
    log_p[j] = log_mult + scaled_log(counts[j], log_w) + scaled_log(M - counts[j], log_u);
    peak = std::max(peak, log_p[j]);
  }
  if (peak == -INFINITY) {
    return 0.0;
  }
  double s = 0.0;
  for (int j = 0; j < d; ++j) {
    s += std::exp(log_p[j] - peak);
  }
  const double log_mean = peak + std::log(s / d);
  double term = 0.0;
  for (int j = 0; j < d; ++j) {
    if (log_p[j] > -INFINITY) {
      term += std::exp(log_p[j]) / d * (log_p[j] - log_mean);
    }
  }
  return term / std::numbers::ln2;
}

/// C(n, m) eta^m (1 - eta)^(n - m) from a log-factorial table, 0 < eta < 1.
inline double bernoulli_weight(int n, int m, double log_eta, double log_loss, std::span<const double> lf) {
  return std::exp(lf[n] - lf[m] - lf[n - m] + m * log_eta + (n - m) * log_loss);
}

/// Unit-mass discrete Gaussian on offsets -(n-1)..(n-1); entry i is offset i - (n - 1).
inline std::vector<double> gaussian_table(int n, double h, double variance) {
  std::vector<double> w(2 * n - 1);
  if (variance <= 0.0) {
    w[n - 1] = 1.0;
    return w;
  }
  CompensatedSum z;
  for (int i = 0; i < 2 * n - 1; ++i) {
    const double t = (i - (n - 1)) * h;
    w[i] = std::exp(-t * t / (2.0 * variance));
    z.add(w[i]);
  }
  const double norm = z.value();
  CompensatedSum m2;
  for (int i = 0; i < 2 * n - 1; ++i) {
    w[i] /= norm;
    const double t = (i - (n - 1)) * h;
    m2.add(w[i] * t * t);
  }
  // Sampling a Gaussian narrower than the grid misses its variance; move a
  // little weight between the center and its neighbours so the second
  // moment is exactly the requested one.
  const int c = n - 1;
  const double s2 = m2.value();
  if (n >= 2 && s2 < variance) {
    const double shift = (variance - s2) / (h * h);
    if (shift <= w[c]) {
      w[c] -= shift;
      w[c - 1] += 0.5 * shift;
      w[c + 1] += 0.5 * shift;
    }
  } else if (s2 > variance) {
    const double keep = variance / s2;
    for (double &v : w) {
      v *= keep;
    }
    w[c] += 1.0 - keep;
  }
  return w;
}

}  // namespace povm::kernels::detail

#endif
