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

#include "povm/cv_optics.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "povm/errors.h"
#include "povm/kernels/kernels.h"

namespace povm {

namespace {

std::vector<double> linspace(double lo, double hi, int points) {
  std::vector<double> x(points);
  const double h = (hi - lo) / (points - 1);
  for (int i = 0; i < points; ++i) {
    x[i] = lo + i * h;
  }
  return x;
}

bool near(double value, double reference, double tol) {
  return std::fabs(value - reference) <= tol * std::max(1.0, std::fabs(reference));
}

struct GridMoments {
  double mass;
  double mean;
  double variance;
};

// Riemann-sum moments of samples f on spacing h. The variance is normalized
// by the retained mass.
GridMoments grid_moments(std::span<const double> x, std::span<const double> f, double h) {
  CompensatedSum m0;
  CompensatedSum m1;
  for (std::size_t i = 0; i < x.size(); ++i) {
    m0.add(f[i]);
    m1.add(f[i] * x[i]);
  }
  const double mass = m0.value() * h;
  const double mean = m1.value() * h / mass;
  CompensatedSum m2;
  for (std::size_t i = 0; i < x.size(); ++i) {
    m2.add(f[i] * (x[i] - mean) * (x[i] - mean));
  }
  return {mass, mean, m2.value() * h / mass};
}

void check_mass(double mass, const char *what) {
  if (std::fabs(1.0 - mass) > kGridMassTolerance) {
    throw DomainError(std::string("grid coverage: ") + what + " mass on the grid is " + std::to_string(mass) +
                      ", more than 1e-8 falls outside");
  }
}

}  // namespace

double FockDistribution::mass() const { return compensated_sum(rho); }

double FockDistribution::mean() const {
  CompensatedSum s;
  for (std::size_t n = 0; n < rho.size(); ++n) {
    s.add(n * rho[n]);
  }
  return s.value() / mass();
}

double FockDistribution::variance() const {
  const double mu = mean();
  CompensatedSum s;
  for (std::size_t n = 0; n < rho.size(); ++n) {
    s.add((n - mu) * (n - mu) * rho[n]);
  }
  return s.value() / mass();
}

void FockDistribution::validate() const {
  if (rho.empty()) {
    throw DomainError("empty photon-number distribution");
  }
  for (double p : rho) {
    if (!(p >= 0.0)) {
      throw DomainError("negative photon-number population");
    }
  }
  if (!(tail_mass >= 0.0 && tail_mass < kFockTailTolerance)) {
    throw DomainError("tail mass " + std::to_string(tail_mass) + " not below 1e-10; raise the cutoff");
  }
  if (std::fabs(mass() + tail_mass - 1.0) > 1e-12) {
    throw DomainError("photon-number populations plus tail do not sum to 1");
  }
}

Efficiency::Efficiency(double eta) : eta_(eta) {
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw DomainError("eta = " + std::to_string(eta) + " violates 0 < eta <= 1");
  }
}

void GainParams::validate() const {
  if (g < 1) {
    throw DomainError("photon-number gain g must be an integer >= 1");
  }
  if (!(r >= 0.0)) {
    throw DomainError("squeezing parameter r must be >= 0");
  }
  if (!(G >= 1.0)) {
    throw DomainError("power gain G must be >= 1");
  }
}

CVState CVState::fock(int n) {
  if (n < 0) {
    throw DomainError("Fock number must be >= 0");
  }
  return CVState(Kind::kFock, n, {});
}

CVState CVState::coherent(std::complex<double> amplitude) {
  if (!std::isfinite(amplitude.real()) || !std::isfinite(amplitude.imag())) {
    throw DomainError("coherent amplitude must be finite");
  }
  return CVState(Kind::kCoherent, 0, amplitude);
}

double CVState::mean_photon_number() const {
  return kind_ == Kind::kFock ? photons_ : std::norm(amplitude_);
}

double CVState::photon_number_variance() const { return kind_ == Kind::kFock ? 0.0 : std::norm(amplitude_); }

FockDistribution CVState::photon_distribution(int cutoff, double tail_tol) const {
  if (cutoff < 1) {
    throw DomainError("Fock cutoff must be >= 1");
  }
  FockDistribution out;
  if (kind_ == Kind::kFock) {
    out.rho.assign(std::max(cutoff, photons_) + 1, 0.0);
    out.rho[photons_] = 1.0;
    return out;
  }
  const double lambda = std::norm(amplitude_);
  for (std::size_t size = cutoff + 1;; size = 2 * size - 1) {
    if (size > kMaxFockEntries) {
      throw ResourceError("coherent state needs a Fock cutoff beyond " + std::to_string(kMaxFockEntries));
    }
    out.rho.assign(size, 0.0);
    if (lambda == 0.0) {
      out.rho[0] = 1.0;
    } else {
      const double log_lambda = std::log(lambda);
      for (std::size_t n = 0; n < size; ++n) {
        out.rho[n] = std::exp(-lambda + n * log_lambda - std::lgamma(n + 1.0));
      }
    }
    out.tail_mass = std::max(0.0, 1.0 - out.mass());
    if (out.tail_mass < tail_tol) {
      return out;
    }
  }
}

double CVState::quadrature_mean(double phi) const {
  if (kind_ == Kind::kFock) {
    return 0.0;
  }
  return (amplitude_ * std::polar(1.0, -phi)).real();
}

double CVState::quadrature_variance() const { return kind_ == Kind::kFock ? (2.0 * photons_ + 1.0) / 4.0 : 0.25; }

double CVState::quadrature_pdf(double x, double phi) const {
  if (kind_ == Kind::kCoherent) {
    // Gaussian with variance 1/4.
    const double d = x - quadrature_mean(phi);
    return std::sqrt(2.0 / std::numbers::pi) * std::exp(-2.0 * d * d);
  }
  // |psi_n(q)|^2 with q = sqrt(2) x, using the normalized Hermite-function recurrence.
  const double q = std::numbers::sqrt2 * x;
  double prev = 0.0;
  double cur = std::exp(-0.5 * q * q) / std::pow(std::numbers::pi, 0.25);
  for (int k = 0; k < photons_; ++k) {
    const double next = std::sqrt(2.0 / (k + 1.0)) * q * cur - std::sqrt(k / (k + 1.0)) * prev;
    prev = cur;
    cur = next;
  }
  return std::numbers::sqrt2 * cur * cur;
}

double CVState::q_function(std::complex<double> z) const {
  if (kind_ == Kind::kCoherent) {
    return std::exp(-std::norm(z - amplitude_)) / std::numbers::pi;
  }
  const double r2 = std::norm(z);
  if (photons_ == 0) {
    return std::exp(-r2) / std::numbers::pi;
  }
  if (r2 == 0.0) {
    return 0.0;
  }
  return std::exp(-r2 + photons_ * std::log(r2) - std::lgamma(photons_ + 1.0)) / std::numbers::pi;
}

FockDistribution bernoulli_convolve(const FockDistribution &state, const Efficiency &eff, Exec exec) {
  state.validate();
  FockDistribution out;
  out.rho = exec == Exec::kSerial ? kernels::serial::bernoulli_convolve(state.rho, eff.eta())
                                  : kernels::parallel::bernoulli_convolve(state.rho, eff.eta());
  out.tail_mass = std::max(0.0, 1.0 - out.mass());
  if (out.tail_mass >= kFockTailTolerance) {
    throw DomainError("count distribution lost " + std::to_string(out.tail_mass) + " of its mass; raise the cutoff");
  }
  return out;
}

FockDistribution amplify_photon_number(const FockDistribution &state, int g) {
  if (g < 1) {
    throw DomainError("photon-number gain g must be an integer >= 1");
  }
  state.validate();
  const std::size_t size = static_cast<std::size_t>(g) * state.cutoff() + 1;
  if (size > kMaxFockEntries) {
    throw ResourceError("amplified distribution needs " + std::to_string(size) + " entries, bound is " +
                        std::to_string(kMaxFockEntries));
  }
  FockDistribution out;
  out.rho.assign(size, 0.0);
  for (std::size_t n = 0; n < state.rho.size(); ++n) {
    out.rho[g * n] = state.rho[n];
  }
  out.tail_mass = state.tail_mass;
  return out;
}

PhotoNoise photo_added_noise(const FockDistribution &state, const Efficiency &eff, int g, Exec exec) {
  const auto counts = bernoulli_convolve(amplify_photon_number(state, g), eff, exec);
  const double scale = g * eff.eta();
  const double mass = counts.mass();

  CompensatedSum m1;
  for (std::size_t m = 0; m < counts.rho.size(); ++m) {
    m1.add(m / scale * counts.rho[m]);
  }
  PhotoNoise out;
  out.mean = m1.value() / mass;
  CompensatedSum m2;
  for (std::size_t m = 0; m < counts.rho.size(); ++m) {
    const double d = m / scale - out.mean;
    m2.add(d * d * counts.rho[m]);
  }
  out.variance = m2.value() / mass;

  const double n_mean = state.mean();
  const double n_var = state.variance();
  out.added_noise = out.variance - n_var;
  out.analytic_mean = n_mean;
  out.analytic_added_noise = (1.0 - eff.eta()) / scale * n_mean;
  out.analytic_variance = n_var + out.analytic_added_noise;

  if (!near(out.mean, out.analytic_mean, 1e-9) || !near(out.variance, out.analytic_variance, 1e-9)) {
    throw ResourceError("photodetection moments disagree with the operator identities beyond 1e-9");
  }
  return out;
}

std::vector<double> homodyne_grid(const CVState &state, const Efficiency &eff, double r, int points) {
  if (points < 16) {
    throw DomainError("homodyne grid needs at least 16 points");
  }
  const double sigma = std::sqrt(state.quadrature_variance() + std::exp(-2.0 * r) * eff.homodyne_noise());
  const double c = state.quadrature_mean();
  return linspace(c - kGridHalfWidthSigmas * sigma, c + kGridHalfWidthSigmas * sigma, points);
}

HomodyneResult homodyne_pdf(const CVState &state, const Efficiency &eff, double r, std::span<const double> x_grid,
                            Exec exec) {
  if (!(r >= 0.0)) {
    throw DomainError("squeezing parameter r must be >= 0");
  }
  const int n = static_cast<int>(x_grid.size());
  if (n < 16) {
    throw DomainError("homodyne grid needs at least 16 points");
  }
  const double h = (x_grid.back() - x_grid.front()) / (n - 1);
  if (!(h > 0.0)) {
    throw DomainError("homodyne grid must be increasing");
  }
  for (int i = 0; i < n; ++i) {
    if (std::fabs(x_grid[i] - (x_grid.front() + i * h)) > 1e-9 * h) {
      throw DomainError("homodyne grid must be uniformly spaced");
    }
  }

  HomodyneResult out;
  out.x.assign(x_grid.begin(), x_grid.end());
  out.r = r;
  out.intrinsic_variance = state.quadrature_variance();
  const double squeeze = std::exp(-2.0 * r);
  out.analytic_added_noise = squeeze * eff.homodyne_noise();

  std::vector<double> ideal(n);
  for (int i = 0; i < n; ++i) {
    ideal[i] = state.quadrature_pdf(x_grid[i]);
  }
  check_mass(grid_moments(out.x, ideal, h).mass, "ideal quadrature");

  // Squeezing scales X by e^r before the detector adds variance Delta^2;
  // dividing the outcome by e^r leaves variance e^{-2r} Delta^2 on X.
  out.pdf = exec == Exec::kSerial ? kernels::serial::gaussian_convolve(ideal, h, out.analytic_added_noise)
                                  : kernels::parallel::gaussian_convolve(ideal, h, out.analytic_added_noise);
  const auto mom = grid_moments(out.x, out.pdf, h);
  check_mass(mom.mass, "homodyne outcome");
  out.mass = mom.mass;
  out.measured_mean = mom.mean;
  out.measured_variance = mom.variance;
  out.measured_added_noise = mom.variance - out.intrinsic_variance;
  out.raw_variance = mom.variance / squeeze;
  out.raw_added_noise = out.measured_added_noise / squeeze;
  if (std::fabs(out.measured_added_noise - out.analytic_added_noise) > 1e-6) {
    throw ResourceError("homodyne grid moments miss the analytic added noise by more than 1e-6; refine the grid");
  }
  return out;
}

HomodyneResult homodyne_pdf(const CVState &state, const Efficiency &eff, double r, Exec exec) {
  const auto grid = homodyne_grid(state, eff, r);
  return homodyne_pdf(state, eff, r, grid, exec);
}

HeterodyneResult heterodyne_pdf(const CVState &state, const Efficiency &eff, double G, int points, Exec exec) {
  if (!(G >= 1.0)) {
    throw DomainError("power gain G must be >= 1");
  }
  if (points < 16) {
    throw DomainError("heterodyne grid needs at least 16 points per axis");
  }
  if (static_cast<std::size_t>(points) * points > kMaxFockEntries) {
    throw ResourceError("heterodyne grid too large");
  }
  HeterodyneResult out;
  out.points = points;
  out.G = G;
  out.intrinsic_variance = state.quadrature_variance();
  out.analytic_excess = eff.heterodyne_noise() / (4.0 * G);

  const double q_axis_variance = out.intrinsic_variance + 0.25;
  const double half = kGridHalfWidthSigmas * std::sqrt(q_axis_variance + out.analytic_excess);
  const std::complex<double> center = state.kind() == CVState::Kind::kCoherent ? state.amplitude() : 0.0;
  out.re_axis = linspace(center.real() - half, center.real() + half, points);
  out.im_axis = linspace(center.imag() - half, center.imag() + half, points);
  const double h = out.re_axis[1] - out.re_axis[0];

  std::vector<double> q(static_cast<std::size_t>(points) * points);
  for (int i = 0; i < points; ++i) {
    for (int j = 0; j < points; ++j) {
      q[static_cast<std::size_t>(i) * points + j] = state.q_function({out.re_axis[i], out.im_axis[j]});
    }
  }
  out.density = exec == Exec::kSerial
                    ? kernels::serial::gaussian_convolve_2d(q, points, points, h, out.analytic_excess)
                    : kernels::parallel::gaussian_convolve_2d(q, points, points, h, out.analytic_excess);

  auto re_marginal = [&](const std::vector<double> &f) {
    std::vector<double> m(points);
    for (int i = 0; i < points; ++i) {
      m[i] = compensated_sum(std::span<const double>(f.data() + static_cast<std::size_t>(i) * points, points)) * h;
    }
    return m;
  };
  const auto q_mom = grid_moments(out.re_axis, re_marginal(q), h);
  check_mass(q_mom.mass, "Q function");
  const auto o_mom = grid_moments(out.re_axis, re_marginal(out.density), h);
  check_mass(o_mom.mass, "heterodyne outcome");
  out.mass = o_mom.mass;
  out.q_variance = q_mom.variance;
  out.outcome_variance = o_mom.variance;
  out.measured_excess = o_mom.variance - q_axis_variance;
  return out;
}

}  // namespace povm
