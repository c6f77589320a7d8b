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

#include <omp.h>

#include <algorithm>
#include <cmath>

#include "detail.h"
#include "povm/kernels/kernels.h"
#include "povm/numeric.h"

namespace povm::kernels::parallel {

void sample_inverse_cdf(std::span<const double> cdf, const CounterRng &rng, std::span<int> out) {
  const auto n = static_cast<std::int64_t>(out.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    out[i] = detail::inverse_cdf_index(cdf, rng.uniform(static_cast<std::uint64_t>(i)));
  }
}

std::vector<std::int64_t> block_histograms(std::span<const int> data, int max_value, int block_count,
                                           std::int64_t block_size) {
  const int width = max_value + 1;
  std::vector<std::int64_t> hist(static_cast<std::size_t>(block_count) * width, 0);
#pragma omp parallel for schedule(static)
  for (int b = 0; b < block_count; ++b) {
    std::int64_t *row = hist.data() + static_cast<std::size_t>(b) * width;
    const int *block = data.data() + b * block_size;
    for (std::int64_t i = 0; i < block_size; ++i) {
      ++row[block[i]];
    }
  }
  return hist;
}

double quadrature_mutual_information(std::span<const double> nodes, std::span<const double> weights,
                                     std::span<const double> x, std::span<const double> y,
                                     std::span<const double> marginal) {
  const auto n = static_cast<std::int64_t>(nodes.size());
  std::vector<double> values(nodes.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    values[i] = weights[i] * detail::quadrature_node_value(nodes[i], x, y, marginal);
  }
  return compensated_sum(values);
}

namespace {

void enumerate_tail(std::vector<int> &counts, int pos, int remaining, int M, double log_w, double log_u,
                    std::span<const double> lf, CompensatedSum &total) {
  const int d = static_cast<int>(counts.size());
  if (pos == d - 1) {
    counts[pos] = remaining;
    total.add(detail::qudit_term(counts, M, log_w, log_u, lf));
    return;
  }
  for (int c = 0; c <= remaining; ++c) {
    counts[pos] = c;
    enumerate_tail(counts, pos + 1, remaining - c, M, log_w, log_u, lf, total);
  }
}

}  // namespace

double qudit_mutual_information(int d, int M, double log_w, double log_u) {
  const auto lf = detail::log_factorials(M);
  // One task per value of the first count; partials are combined in task order.
  std::vector<double> partial(M + 1, 0.0);
#pragma omp parallel for schedule(dynamic)
  for (int first = 0; first <= M; ++first) {
    std::vector<int> counts(d, 0);
    counts[0] = first;
    CompensatedSum total;
    enumerate_tail(counts, 1, M - first, M, log_w, log_u, lf, total);
    partial[first] = total.value();
  }
  return compensated_sum(partial);
}

std::vector<double> bernoulli_convolve(std::span<const double> rho, double eta) {
  const auto size = static_cast<std::int64_t>(rho.size());
  std::vector<double> p(rho.size(), 0.0);
  if (eta == 1.0) {
    p.assign(rho.begin(), rho.end());
    return p;
  }
  std::vector<int> support;
  for (std::int64_t n = 0; n < size; ++n) {
    if (rho[n] != 0.0) {
      support.push_back(static_cast<int>(n));
    }
  }
  const auto lf = detail::log_factorials(static_cast<int>(rho.size()));
  const double log_eta = std::log(eta);
  const double log_loss = std::log1p(-eta);
  // Gather form: each output bin sums its sources in ascending n, which is
  // the same order the serial scatter accumulates them.
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t m = 0; m < size; ++m) {
    auto it = std::lower_bound(support.begin(), support.end(), static_cast<int>(m));
    double s = 0.0;
    for (; it != support.end(); ++it) {
      s += rho[*it] * detail::bernoulli_weight(*it, static_cast<int>(m), log_eta, log_loss, lf);
    }
    p[m] = s;
  }
  return p;
}

std::vector<double> gaussian_convolve(std::span<const double> f, double h, double variance) {
  const int n = static_cast<int>(f.size());
  const auto w = detail::gaussian_table(n, h, variance);
  std::vector<double> g(n, 0.0);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    const double *wi = w.data() + i + n - 1;
    double s = 0.0;
    for (int j = 0; j < n; ++j) {
      s += f[j] * wi[-j];
    }
    g[i] = s;
  }
  return g;
}

std::vector<double> gaussian_convolve_2d(std::span<const double> f, int nx, int ny, double h, double variance) {
  const auto wx = detail::gaussian_table(nx, h, variance);
  const auto wy = detail::gaussian_table(ny, h, variance);
  std::vector<double> rows(f.size(), 0.0);
  std::vector<double> out(f.size(), 0.0);
#pragma omp parallel
  {
#pragma omp for schedule(static)
    for (int i = 0; i < nx; ++i) {
      const double *src = f.data() + static_cast<std::size_t>(i) * ny;
      for (int k = 0; k < ny; ++k) {
        const double *wk = wy.data() + k + ny - 1;
        double s = 0.0;
        for (int l = 0; l < ny; ++l) {
          s += src[l] * wk[-l];
        }
        rows[static_cast<std::size_t>(i) * ny + k] = s;
      }
    }
#pragma omp for schedule(static)
    for (int k = 0; k < ny; ++k) {
      for (int i = 0; i < nx; ++i) {
        const double *wi = wx.data() + i + nx - 1;
        double s = 0.0;
        for (int j = 0; j < nx; ++j) {
          s += rows[static_cast<std::size_t>(j) * ny + k] * wi[-j];
        }
        out[static_cast<std::size_t>(i) * ny + k] = s;
      }
    }
  }
  return out;
}

}  // namespace povm::kernels::parallel
