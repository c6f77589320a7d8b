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

#include "povm/estimation.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "povm/errors.h"
#include "povm/kernels/kernels.h"

namespace povm {

namespace {

// p_k(a) = a x_k + (1 - a) y_k, dp_k/da = x_k - y_k.
struct Columns {
  std::vector<double> x;
  std::vector<double> y;

  Columns(const IsotropicNoise &noise, int M)
      : x(binomial_column(M, noise.beta())), y(binomial_column(M, 1.0 - noise.beta())) {}

  double p(std::size_t k, double a) const { return a * x[k] + (1.0 - a) * y[k]; }
  double dp(std::size_t k) const { return x[k] - y[k]; }

  double fisher(double a) const {
    double f = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
      const double pk = p(k, a);
      if (pk > 0.0) {
        f += dp(k) * dp(k) / pk;
      }
    }
    return f;
  }

  // Natural-log score.
  double score_e(std::span<const std::int64_t> hist, double a) const {
    double s = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (hist[k] > 0) {
        s += static_cast<double>(hist[k]) * dp(k) / p(k, a);
      }
    }
    return s;
  }
};

void check_not_degenerate(const IsotropicNoise &noise) {
  if (noise.beta() == 0.5) {
    throw DegenerateError("beta = 1/2: outcomes carry no information about a");
  }
}

int check_hist(std::span<const std::int64_t> hist, const Columns &cols) {
  if (hist.size() != cols.x.size()) {
    throw DomainError("histogram length must be M + 1");
  }
  for (std::size_t k = 0; k < hist.size(); ++k) {
    if (hist[k] > 0 && cols.x[k] == 0.0 && cols.y[k] == 0.0) {
      throw DomainError("datum M1 = " + std::to_string(k) + " has zero probability for every a");
    }
  }
  return static_cast<int>(hist.size()) - 1;
}

MlFit fit(std::span<const std::int64_t> hist, const Columns &cols, const ScoringConfig &cfg) {
  std::int64_t n = 0;
  for (auto h : hist) {
    n += h;
  }
  if (n == 0) {
    throw DomainError("ml_estimate: no data");
  }
  MlFit result;
  double a = std::clamp(cfg.a0, kClampLo, kClampHi);
  for (int it = 1; it <= cfg.max_iter; ++it) {
    const double step = cols.score_e(hist, a) / (static_cast<double>(n) * cols.fisher(a));
    double next = a + step;
    if (next < kClampLo || next > kClampHi) {
      next = std::clamp(next, kClampLo, kClampHi);
      result.clamped = true;
    }
    const double delta = std::fabs(next - a);
    a = next;
    if (delta < cfg.tol) {
      result.a = a;
      result.iterations = it;
      return result;
    }
  }
  throw ConvergenceError("Fisher scoring did not converge in " + std::to_string(cfg.max_iter) + " iterations");
}

}  // namespace

void ScoringConfig::validate() const {
  if (!(a0 > 0.0 && a0 < 1.0)) {
    throw DomainError("scoring a0 must lie in (0, 1)");
  }
  if (!(tol > 0.0)) {
    throw DomainError("scoring tol must be > 0");
  }
  if (max_iter < 1) {
    throw DomainError("scoring max_iter must be >= 1");
  }
}

std::vector<std::int64_t> histogram(std::span<const int> data, int M) {
  std::vector<std::int64_t> hist(M + 1, 0);
  for (int v : data) {
    if (v < 0 || v > M) {
      throw DomainError("datum " + std::to_string(v) + " outside [0, M = " + std::to_string(M) + "]");
    }
    ++hist[v];
  }
  return hist;
}

double log_likelihood(std::span<const std::int64_t> hist, const IsotropicNoise &noise, double a) {
  if (!(a >= 0.0 && a <= 1.0)) {
    throw DomainError("a outside [0, 1]");
  }
  const Columns cols(noise, static_cast<int>(hist.size()) - 1);
  CompensatedSum total;
  for (std::size_t k = 0; k < hist.size(); ++k) {
    if (hist[k] == 0) {
      continue;
    }
    const double pk = cols.p(k, a);
    if (pk <= 0.0) {
      return -INFINITY;
    }
    total.add(static_cast<double>(hist[k]) * std::log2(pk));
  }
  return total.value();
}

double log_likelihood(std::span<const int> data, const IsotropicNoise &noise, int M, double a) {
  return log_likelihood(histogram(data, M), noise, a);
}

double score(std::span<const std::int64_t> hist, const IsotropicNoise &noise, double a) {
  const Columns cols(noise, static_cast<int>(hist.size()) - 1);
  return cols.score_e(hist, a) / std::numbers::ln2;
}

double fisher_information(const IsotropicNoise &noise, int M, double a) {
  if (M < 1) {
    throw DomainError("M must be >= 1");
  }
  if (!(a >= 0.0 && a <= 1.0)) {
    throw DomainError("a outside [0, 1]");
  }
  check_not_degenerate(noise);
  return Columns(noise, M).fisher(a);
}

MlFit ml_estimate(std::span<const std::int64_t> hist, const IsotropicNoise &noise, const ScoringConfig &cfg) {
  cfg.validate();
  check_not_degenerate(noise);
  const Columns cols(noise, static_cast<int>(hist.size()) - 1);
  check_hist(hist, cols);
  return fit(hist, cols, cfg);
}

MlFit ml_estimate(std::span<const int> data, const IsotropicNoise &noise, int M, const ScoringConfig &cfg) {
  return ml_estimate(histogram(data, M), noise, cfg);
}

BlockVariance block_variance(std::span<const int> data, const IsotropicNoise &noise, int M,
                             const ScoringConfig &cfg, int block_count, Exec exec) {
  cfg.validate();
  check_not_degenerate(noise);
  if (block_count < 2) {
    throw DomainError("block_count must be >= 2");
  }
  const auto n = static_cast<std::int64_t>(data.size());
  BlockVariance out;
  out.block_size = n / block_count;
  if (out.block_size < 1) {
    throw DomainError("fewer runs than blocks");
  }
  out.dropped = n - out.block_size * block_count;
  const auto retained = data.first(static_cast<std::size_t>(out.block_size * block_count));

  const Columns cols(noise, M);
  const auto total = histogram(retained, M);
  check_hist(total, cols);
  const MlFit full = fit(total, cols, cfg);
  out.a_ml = full.a;
  out.clamped = full.clamped;

  const auto hists = exec == Exec::kSerial
                         ? kernels::serial::block_histograms(retained, M, block_count, out.block_size)
                         : kernels::parallel::block_histograms(retained, M, block_count, out.block_size);
  out.block_estimates.resize(block_count);
  CompensatedSum ss;
  for (int b = 0; b < block_count; ++b) {
    const std::span<const std::int64_t> h(hists.data() + static_cast<std::size_t>(b) * (M + 1), M + 1);
    const MlFit f = fit(h, cols, cfg);
    out.block_estimates[b] = f.a;
    out.clamped = out.clamped || f.clamped;
    ss.add((f.a - out.a_ml) * (f.a - out.a_ml));
  }
  out.variance = ss.value() / block_count;
  return out;
}

double linear_estimator(int M1, int M, double beta) {
  if (beta == 0.5) {
    throw DegenerateError("linear estimator undefined at beta = 1/2");
  }
  return (static_cast<double>(M1) / M + beta - 1.0) / (2.0 * beta - 1.0);
}

Moments linear_estimator_moments(const IsotropicNoise &noise, int M, double a) {
  check_not_degenerate(noise);
  const auto dist = count_distribution(noise, a, M);
  CompensatedSum m1;
  CompensatedSum m2;
  for (int k = 0; k <= M; ++k) {
    const double f = linear_estimator(k, M, noise.beta());
    m1.add(f * dist.probs[k]);
    m2.add(f * f * dist.probs[k]);
  }
  return {m1.value(), m2.value()};
}

VarianceBounds variance_bounds(const IsotropicNoise &noise, int M, double a, std::int64_t n) {
  check_not_degenerate(noise);
  if (n < 1 || M < 1) {
    throw DomainError("variance_bounds needs n >= 1 and M >= 1");
  }
  const double beta = noise.beta();
  const double ideal = a - a * a;
  const double excess = beta * (1.0 - beta) / ((1.0 - 2.0 * beta) * (1.0 - 2.0 * beta) * M);
  return {(ideal + excess) / static_cast<double>(n), ideal / static_cast<double>(n)};
}

EstimationReport estimate(std::span<const int> data, const IsotropicNoise &noise, int M, const ScoringConfig &cfg,
                          int block_count, Exec exec) {
  const BlockVariance bv = block_variance(data, noise, M, cfg, block_count, exec);
  const auto all = histogram(data.first(static_cast<std::size_t>(bv.block_size * block_count)), M);
  const MlFit full = ml_estimate(all, noise, cfg);

  EstimationReport r;
  r.a_ml = full.a;
  r.iterations = full.iterations;
  r.n = bv.block_size;
  r.block_count = block_count;
  r.fisher = fisher_information(noise, M, full.a);
  r.crb = 1.0 / (static_cast<double>(r.n) * r.fisher);
  r.block_variance = bv.variance;
  const auto bounds = variance_bounds(noise, M, full.a, r.n);
  r.upper_bound = bounds.upper;
  r.lower_bound = bounds.lower;
  r.clamped = bv.clamped || full.clamped;
  return r;
}

}  // namespace povm
