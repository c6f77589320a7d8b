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

#ifndef POVM_INFO_THEORY_H
#define POVM_INFO_THEORY_H

// Mutual information (bits) between the prepared qubit and the count
// statistic M1. The prior over the Bloch sphere is uniform, so the measure
// on theta is (1/2) sin(theta) dtheta.

#include <string>
#include <vector>

#include "povm/measurement_model.h"
#include "povm/numeric.h"

namespace povm {

/// Nodes on [0, pi] with weights for plain dtheta; the (1/2) sin(theta)
/// density is applied by the integrator.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  static QuadratureRule gauss_legendre(int n);
  /// Throws DomainError unless nodes lie in [0, pi] and sum w sin(theta) = 2 within 1e-10.
  void validate() const;
};

inline constexpr int kDefaultQuadratureNodes = 256;

enum class MiMethod { kQuadrature, kClosedForm, kBinary, kMajority, kQudit };
const char *to_string(MiMethod m);

struct MutualInfoResult {
  double value_bits = 0.0;
  MiMethod method = MiMethod::kQuadrature;
  int M = 0;
  double noise = 0.0;  ///< beta, or alpha for the qudit model
  int d = 2;
  /// Warnings and skipped-term records from the evaluation.
  std::vector<std::string> notes;
};

/// (1/2) [Bin(M1; M, beta) + Bin(M1; M, 1 - beta)].
double marginal_count_prob(const IsotropicNoise &noise, int M, int M1);

/// Default rule (256-node Gauss-Legendre) with a node-doubling convergence check.
MutualInfoResult mutual_info_quadrature(const IsotropicNoise &noise, int M, Exec exec = Exec::kParallel);
MutualInfoResult mutual_info_quadrature(const IsotropicNoise &noise, int M, const QuadratureRule &rule,
                                        Exec exec = Exec::kParallel);

/// Closed-form series I = (1/32) sum_M1 C(M, M1) (c1 A + c2 B) / C, in log space.
/// Defined for 0 < beta < 1/2; the 0/0 term at M1 = M/2 is skipped and noted.
MutualInfoResult mutual_info_closed_form(const IsotropicNoise &noise, int M);

/// Two-letter alphabet {theta = 0, theta = pi}, equal priors, full count statistic.
MutualInfoResult binary_mutual_info(const IsotropicNoise &noise, int M);

enum class TieRule { kOddOnly, kRandomTie };

/// Binary alphabet after majority voting: 1 - H2(error probability).
MutualInfoResult majority_vote_mutual_info(const IsotropicNoise &noise, int M, TieRule tie = TieRule::kOddOnly);

/// Largest enumeration (number of count vectors) qudit_mutual_info accepts.
inline constexpr double kMaxQuditOutcomes = 1e7;

/// Uniform d-letter orthogonal alphabet, outcome = full count vector.
MutualInfoResult qudit_mutual_info(const QuditNoise &noise, int M, Exec exec = Exec::kParallel);

/// I(M1 : theta) at M = 1, beta = 0; computed once with 2048 nodes.
double ideal_mutual_info();

}  // namespace povm

#endif
