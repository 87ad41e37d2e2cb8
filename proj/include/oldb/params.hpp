// Copyright 2026 The oldb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

namespace oldb {

/// Physical parameters of the Oldroyd-B system.
///
/// omega is the retardation ratio (Newtonian share of the stress), a the
/// slip parameter of the upper/lower convected family.
class FluidParams {
 public:
  FluidParams() = default;
  FluidParams(double omega, double a, double reynolds = 1.0, double weissenberg = 1.0);

  double omega() const noexcept { return omega_; }
  double a() const noexcept { return a_; }
  double reynolds() const noexcept { return reynolds_; }
  double weissenberg() const noexcept { return weissenberg_; }

  bool operator==(const FluidParams&) const = default;

 private:
  double omega_ = 0.5;
  double a_ = 0.0;
  double reynolds_ = 1.0;
  double weissenberg_ = 1.0;
};

/// Coefficients of the per-mode linear system
///   u' = -nu |k|^2 u + beta P(i k . tau),   tau' = -gamma tau + 2 eta D(u).
/// The unit-parameter system has nu = 1 - omega, beta = gamma = 1, eta = omega.
struct LinearCoefficients {
  double nu = 0.5;
  double beta = 1.0;
  double gamma = 1.0;
  double eta = 0.5;

  static LinearCoefficients unit(double omega) { return {1.0 - omega, 1.0, 1.0, omega}; }
  static LinearCoefficients from(const FluidParams& p);
};

}  // namespace oldb
