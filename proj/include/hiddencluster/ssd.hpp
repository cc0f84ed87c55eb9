// Copyright 2026 The hiddencluster Authors
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

#pragma once

#include <cstdint>

namespace hiddencluster {

/// Bin size of the modular-position decomposition. Logical bins are
/// `value()` wide; the full period of the decomposition is twice that.
class BinSize {
 public:
  /// Throws DomainError unless alpha is finite and strictly positive.
  explicit BinSize(double alpha);

  /// Square-lattice GKP convention.
  static BinSize sqrt_pi() { return BinSize(kSqrtPi); }

  double value() const noexcept { return alpha_; }

  friend bool operator==(const BinSize &, const BinSize &) = default;

  static constexpr double kSqrtPi = 1.7724538509055160273;

 private:
  double alpha_;
};

/// Logical and gauge quantum numbers of one position eigenvalue,
/// x = alpha*ell + 2*alpha*m + u.
struct QuantumNumbers {
  int ell = 0;         // {0, 1}
  std::int64_t m = 0;  // gauge bin number
  double u = 0.0;      // gauge modular position in [-alpha/2, alpha/2)

  friend bool operator==(const QuantumNumbers &, const QuantumNumbers &) = default;
};

/// Throws DomainError if `q` is not a valid triple for `alpha`.
void check_quantum_numbers(const QuantumNumbers &q, BinSize alpha);

/// Splits x into (ell, m, u). Ties at u = +alpha/2 roll into the next bin, so
/// u always lands in the half-open interval [-alpha/2, alpha/2).
QuantumNumbers decompose_position(double x, BinSize alpha);

/// alpha*ell + 2*alpha*m + u.
double recompose(const QuantumNumbers &q, BinSize alpha);

/// Gauge-mode position alpha*m + u; ell does not enter.
double gauge_position(const QuantumNumbers &q, BinSize alpha);

}  // namespace hiddencluster
