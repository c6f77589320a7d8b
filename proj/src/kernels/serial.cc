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

#include "povm/kernels/kernels.h"

#include <cmath>

#include "detail.h"
#include "povm/numeric.h"

namespace povm::kernels::serial {

void sample_inverse_cdf(std::span<const double> cdf, const CounterRng &rng, std::span<int> out) {
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = detail::inverse_cdf_index(cdf, rng.uniform(i));
  }
}

std::vector<std::int64_t> block_histograms(std::span<const int> data, int max_value, int block_count,
                                           std::int64_t block_size) {
  const int width = max_value + 1;
  std::vector<std::int64_t> hist(static_cast<std::size_t>(block_count) * width, 0);
  for (int b = 0; b < block_count; ++b) {
    for (std::int64_t i = 0; i < block_size; ++i) {
      ++hist[static_cast<std::size_t>(b) * width + data[b * block_size + i]];
    }
  }
  return hist;
}

double quadrature_mutual_information(std::span<const double> nodes, std::span<const double> weights,
                                     std::span<const double> x, std::span<const double> y,
                                     std::span<const double> marginal) {
  CompensatedSum total;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    total.add(weights[i] * detail::quadrature_node_value(nodes[i], x, y, marginal));
  }
  return total.value();
}

namespace {

void enumerate_counts(std::vector<int> &counts, int pos, int remaining, int M, double log_w, double log_u,
                      std::span<const double> lf, CompensatedSum &total) {
  const int d = static_cast<int>(counts.size());
  if (pos == d - 1) {
    counts[pos] = remaining;
    total.add(detail::qudit_term(counts, M, log_w, log_u, lf));
    return;
  }
  for (int c = 0; c <= remaining; ++c) {
    counts[pos] = c;
    enumerate_counts(counts, pos + 1, remaining - c, M, log_w, log_u, lf, total);
  }
}

}  // namespace

double qudit_mutual_information(int d, int M, double log_w, double log_u) {
  const auto lf = detail::log_factorials(M);
  std::vector<int> counts(d, 0);
  CompensatedSum total;
  enumerate_counts(counts, 0, M, M, log_w, log_u, lf, total);
  return total.value();
}

std::vector<double> bernoulli_convolve(std::span<const double> rho, double eta) {
  std::vector<double> p(rho.size(), 0.0);
  if (eta == 1.0) {
    p.assign(rho.begin(), rho.end());
    return p;
  }
  const auto lf = detail::log_factorials(static_cast<int>(rho.size()));
  const double log_eta = std::log(eta);
  const double log_loss = std::log1p(-eta);
  for (std::size_t n = 0; n < rho.size(); ++n) {
    if (rho[n] == 0.0) {
      continue;
    }
    for (std::size_t m = 0; m <= n; ++m) {
      p[m] += rho[n] * detail::bernoulli_weight(static_cast<int>(n), static_cast<int>(m), log_eta, log_loss, lf);
    }
  }
  return p;
}

std::vector<double> gaussian_convolve(std::span<const double> f, double h, double variance) {
  const int n = static_cast<int>(f.size());
  const auto w = detail::gaussian_table(n, h, variance);
  std::vector<double> g(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) {
      s += f[j] * w[i - j + n - 1];
    }
    g[i] = s;
  }
  return g;
}

std::vector<double> gaussian_convolve_2d(std::span<const double> f, int nx, int ny, double h, double variance) {
  const auto wx = detail::gaussian_table(nx, h, variance);
  const auto wy = detail::gaussian_table(ny, h, variance);
  std::vector<double> rows(f.size(), 0.0);
  for (int i = 0; i < nx; ++i) {
    for (int k = 0; k < ny; ++k) {
      double s = 0.0;
      for (int l = 0; l < ny; ++l) {
        s += f[static_cast<std::size_t>(i) * ny + l] * wy[k - l + ny - 1];
      }
      rows[static_cast<std::size_t>(i) * ny + k] = s;
    }
  }
  std::vector<double> out(f.size(), 0.0);
  for (int k = 0; k < ny; ++k) {
    for (int i = 0; i < nx; ++i) {
      double s = 0.0;
      for (int j = 0; j < nx; ++j) {
        s += rows[static_cast<std::size_t>(j) * ny + k] * wx[i - j + nx - 1];
      }
      out[static_cast<std::size_t>(i) * ny + k] = s;
    }
  }
  return out;
}

}  // namespace povm::kernels::serial
