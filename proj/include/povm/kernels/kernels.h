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

#ifndef POVM_KERNELS_KERNELS_H
#define POVM_KERNELS_KERNELS_H

// Data-parallel inner loops. Every kernel exists twice with the same
// signature: kernels::serial is the plain reference the tests compare
// against, kernels::parallel is the OpenMP version the library calls.
// Parallel reductions are chunked independently of the thread count.

#include <cstdint>
#include <span>
#include <vector>

#include "povm/rng.h"

namespace povm::kernels {

namespace serial {

/// out[i] = smallest k with cdf[k] > rng.uniform(i), clamped to cdf.size() - 1.
void sample_inverse_cdf(std::span<const double> cdf, const CounterRng &rng, std::span<int> out);

/// Row-major block_count x (max_value + 1) histogram of consecutive blocks.
std::vector<std::int64_t> block_histograms(std::span<const int> data, int max_value, int block_count,
                                           std::int64_t block_size);

/// sum_i w_i (1/2) sin(t_i) sum_k p_k log2(p_k / m_k) with p_k = a x_k + (1 - a) y_k, a = cos^2(t_i / 2).
double quadrature_mutual_information(std::span<const double> nodes, std::span<const double> weights,
                                     std::span<const double> x, std::span<const double> y,
                                     std::span<const double> marginal);

/// I(counts : j) in bits for a uniform d-letter input, where
/// p(c | j) = mult(c) w^{c_j} u^{M - c_j} and log_w, log_u are natural logs.
double qudit_mutual_information(int d, int M, double log_w, double log_u);

/// p(m) = sum_n rho[n] C(n, m) eta^m (1 - eta)^(n - m).
std::vector<double> bernoulli_convolve(std::span<const double> rho, double eta);

/// Convolution of grid samples (spacing h) with a unit-mass discrete Gaussian.
std::vector<double> gaussian_convolve(std::span<const double> f, double h, double variance);

/// Row-major nx-by-ny version with an isotropic Gaussian (applied separably).
std::vector<double> gaussian_convolve_2d(std::span<const double> f, int nx, int ny, double h, double variance);

}  // namespace serial

namespace parallel {

/// out[i] = smallest k with cdf[k] > rng.uniform(i), clamped to cdf.size() - 1.
void sample_inverse_cdf(std::span<const double> cdf, const CounterRng &rng, std::span<int> out);

/// Row-major block_count x (max_value + 1) histogram of consecutive blocks.
std::vector<std::int64_t> block_histograms(std::span<const int> data, int max_value, int block_count,
                                           std::int64_t block_size);

/// sum_i w_i (1/2) sin(t_i) sum_k p_k log2(p_k / m_k) with p_k = a x_k + (1 - a) y_k, a = cos^2(t_i / 2).
double quadrature_mutual_information(std::span<const double> nodes, std::span<const double> weights,
                                     std::span<const double> x, std::span<const double> y,
                                     std::span<const double> marginal);

/// I(counts : j) in bits for a uniform d-letter input, where
/// p(c | j) = mult(c) w^{c_j} u^{M - c_j} and log_w, log_u are natural logs.
double qudit_mutual_information(int d, int M, double log_w, double log_u);

/// p(m) = sum_n rho[n] C(n, m) eta^m (1 - eta)^(n - m).
std::vector<double> bernoulli_convolve(std::span<const double> rho, double eta);

/// Convolution of grid samples (spacing h) with a unit-mass discrete Gaussian.
std::vector<double> gaussian_convolve(std::span<const double> f, double h, double variance);

/// Row-major nx-by-ny version with an isotropic Gaussian (applied separably).
std::vector<double> gaussian_convolve_2d(std::span<const double> f, int nx, int ny, double h, double variance);

}  // namespace parallel

}  // namespace povm::kernels

#endif
