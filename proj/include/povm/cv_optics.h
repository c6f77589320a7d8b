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

#ifndef POVM_CV_OPTICS_H
#define POVM_CV_OPTICS_H

// Inefficient photodetection, homodyne and heterodyne detection, and their
// purification by preamplification. Quadratures follow
// X_phi = (a^dag e^{i phi} + a e^{-i phi}) / 2, so the vacuum variance is 1/4.
// For heterodyne outcomes z, Re z estimates X_0 and Im z estimates X_{pi/2}.

#include <complex>
#include <span>
#include <vector>

#include "povm/numeric.h"

namespace povm {

inline constexpr int kDefaultFockCutoff = 256;
inline constexpr double kFockTailTolerance = 1e-10;
/// Largest photon-number vector any operation will allocate.
inline constexpr std::size_t kMaxFockEntries = std::size_t{1} << 24;

/// Diagonal photon-number populations rho_nn for n = 0..cutoff.
struct FockDistribution {
  std::vector<double> rho;
  double tail_mass = 0.0;  ///< probability beyond the cutoff

  int cutoff() const { return static_cast<int>(rho.size()) - 1; }
  double mass() const;
  /// Moments of the retained (normalized) populations.
  double mean() const;
  double variance() const;
  /// Entries >= 0 and sum + tail_mass = 1 within 1e-12.
  void validate() const;
};

class Efficiency {
 public:
  explicit Efficiency(double eta);

  double eta() const { return eta_; }
  /// Gaussian variance added to the homodyne outcome, (1 - eta) / (4 eta).
  double homodyne_noise() const { return (1.0 - eta_) / (4.0 * eta_); }
  /// Width parameter of the heterodyne convolution, (1 - eta) / eta.
  double heterodyne_noise() const { return (1.0 - eta_) / eta_; }

 private:
  double eta_;
};

struct GainParams {
  int g = 1;         ///< photon-number gain
  double r = 0.0;    ///< squeezing parameter
  double G = 1.0;    ///< phase-insensitive power gain

  void validate() const;
};

/// The closed-form catalog: Fock states |n> and coherent states |alpha>.
class CVState {
 public:
  enum class Kind { kFock, kCoherent };

  static CVState fock(int n);
  static CVState coherent(std::complex<double> amplitude);

  Kind kind() const { return kind_; }
  int photons() const { return photons_; }
  std::complex<double> amplitude() const { return amplitude_; }

  double mean_photon_number() const;
  double photon_number_variance() const;

  /// Populations up to max(cutoff, n); the cutoff doubles until tail < tail_tol.
  FockDistribution photon_distribution(int cutoff = kDefaultFockCutoff, double tail_tol = kFockTailTolerance) const;

  double quadrature_mean(double phi = 0.0) const;
  /// Same for every phi within the catalog: (2n + 1)/4 or 1/4.
  double quadrature_variance() const;
  double quadrature_pdf(double x, double phi = 0.0) const;

  /// Husimi function <z|rho|z> / pi.
  double q_function(std::complex<double> z) const;

 private:
  CVState(Kind kind, int photons, std::complex<double> amplitude)
      : kind_(kind), photons_(photons), amplitude_(amplitude) {}

  Kind kind_;
  int photons_;
  std::complex<double> amplitude_;
};

/// Count distribution of an inefficient photodetector. Mass beyond the
/// input cutoff is carried in tail_mass.
FockDistribution bernoulli_convolve(const FockDistribution &state, const Efficiency &eff,
                                    Exec exec = Exec::kParallel);

/// Ideal photon-number amplifier |n> -> |g n>.
FockDistribution amplify_photon_number(const FockDistribution &state, int g);

struct PhotoNoise {
  /// Moments of m / (g eta) over the preamplified count distribution.
  double mean = 0.0;
  double variance = 0.0;
  double added_noise = 0.0;
  /// The operator identities evaluated on the input populations.
  double analytic_mean = 0.0;
  double analytic_variance = 0.0;
  double analytic_added_noise = 0.0;
};

/// Throws ResourceError if the two routes disagree by more than 1e-9 (relative to max(1, |value|)).
PhotoNoise photo_added_noise(const FockDistribution &state, const Efficiency &eff, int g,
                             Exec exec = Exec::kParallel);

inline constexpr int kHomodyneGridPoints = 1 << 12;
inline constexpr int kHeterodyneGridPoints = 512;
inline constexpr double kGridHalfWidthSigmas = 8.0;
inline constexpr double kGridMassTolerance = 1e-8;

struct HomodyneResult {
  std::vector<double> x;    ///< outcome grid, rescaled by e^{-r}
  std::vector<double> pdf;  ///< density of the rescaled outcome
  double r = 0.0;
  double intrinsic_variance = 0.0;
  double analytic_added_noise = 0.0;  ///< e^{-2r} (1 - eta) / (4 eta)
  double measured_mean = 0.0;
  double measured_variance = 0.0;
  double measured_added_noise = 0.0;  ///< grid variance minus intrinsic
  /// Statistics of the raw photocurrent before dividing by e^r.
  double raw_variance = 0.0;
  double raw_added_noise = 0.0;
  double mass = 0.0;
};

/// Uniform grid of kHomodyneGridPoints over mean +- 8 sigma of the outcome.
std::vector<double> homodyne_grid(const CVState &state, const Efficiency &eff, double r,
                                  int points = kHomodyneGridPoints);

/// Quadrature X_0 measured after squeezing by r and rescaled by e^{-r}.
/// Throws DomainError when the grid is not uniform or drops more than 1e-8 of
/// the mass, and ResourceError when the grid moments miss the analytic added
/// noise by more than 1e-6.
HomodyneResult homodyne_pdf(const CVState &state, const Efficiency &eff, double r, std::span<const double> x_grid,
                            Exec exec = Exec::kParallel);
HomodyneResult homodyne_pdf(const CVState &state, const Efficiency &eff, double r, Exec exec = Exec::kParallel);

struct HeterodyneResult {
  int points = 0;
  std::vector<double> re_axis;
  std::vector<double> im_axis;
  std::vector<double> density;  ///< row-major, density[i * points + j] at re_axis[i] + i im_axis[j]
  double G = 1.0;
  double intrinsic_variance = 0.0;  ///< of X_0
  double q_variance = 0.0;          ///< grid variance of Re z under the Q function
  double outcome_variance = 0.0;    ///< grid variance of Re z under the outcome density
  double analytic_excess = 0.0;     ///< per-axis (1 - eta) / (4 eta G)
  double measured_excess = 0.0;     ///< outcome_variance - intrinsic - 1/4
  double mass = 0.0;
};

/// Heterodyne outcome density after phase-insensitive preamplification with
/// gain G and the z -> z / sqrt(G) rescaling: the Q function convolved with
/// a circular Gaussian of per-axis variance (1 - eta) / (4 eta G).
HeterodyneResult heterodyne_pdf(const CVState &state, const Efficiency &eff, double G,
                                int points = kHeterodyneGridPoints, Exec exec = Exec::kParallel);

}  // namespace povm

#endif
