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

#ifndef POVM_TESTS_SUPPORT_H
#define POVM_TESTS_SUPPORT_H

// Small deterministic generators for property tests.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace povm::testing {

/// lo, lo + step, ..., hi (inclusive within rounding).
inline std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> v;
  for (int i = 0; i < count; ++i) {
    v.push_back(count == 1 ? lo : lo + (hi - lo) * i / (count - 1));
  }
  return v;
}

/// Reproducible random draws for property sweeps.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : engine_(seed) {}

  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

 private:
  std::mt19937_64 engine_;
};

/// |got - want| <= tol * max(1, |want|).
inline bool rel_close(double got, double want, double tol) {
  return std::fabs(got - want) <= tol * std::fmax(1.0, std::fabs(want));
}

}  // namespace povm::testing

#endif
