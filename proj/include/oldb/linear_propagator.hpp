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

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "oldb/params.hpp"

namespace oldb {

using cplx = std::complex<double>;

/// Roots of lambda^2 + (1 + (1 - omega)|xi|^2) lambda + |xi|^2 (general
/// coefficients: lambda^2 + (nu s^2 + gamma) lambda + s^2 (nu gamma + beta eta)).
/// lambda_plus is the root nearer zero (positive imaginary part when complex).
struct EigenPair {
  cplx lambda_plus;
  cplx lambda_minus;
};

EigenPair eigenvalues(double xi_mag, double omega);
EigenPair eigenvalues(double xi_mag, const LinearCoefficients& coeffs);

/// A = (e^{l+ t} - e^{l- t}) / (l+ - l-),
/// B = ((l+ + 1) e^{l+ t} - (l- + 1) e^{l- t}) / (l+ - l-),
/// C = ((l- + 1) e^{l+ t} - (l+ + 1) e^{l- t}) / (l+ - l-).
/// For general coefficients B and -C are the diagonal entries of the 2x2
/// propagator acting on (u, P(i xi . tau)).
struct KernelTriple {
  cplx a_val;
  cplx b_val;
  cplx c_val;
};

/// Relative root separation below which the confluent (double-root) formulas are used.
inline constexpr double kConfluentWindow = 1e-6;

KernelTriple kernel_triple(double xi_mag, double t, double omega);
KernelTriple kernel_triple(double xi_mag, double t, const LinearCoefficients& coeffs);

/// Frequencies (1 +- sqrt(omega)) / (1 - omega) where the two roots coincide.
std::array<double, 2> degenerate_wavenumbers(double omega);

/// Fourier coefficients of (u, tau) at one mode; tau in symmetric storage 11,22,33,12,13,23.
struct ModeState {
  std::array<cplx, 3> u{};
  std::array<cplx, 6> tau{};
};

/// Exact solution of the linearized system at wavevector xi after time t;
/// u must satisfy xi . u = 0. At xi = 0: u is frozen and tau decays like exp(-gamma t).
ModeState propagate_mode(const ModeState& initial, const std::array<double, 3>& xi, double t, double omega);
ModeState propagate_mode(const ModeState& initial, const std::array<double, 3>& xi, double t,
                         const LinearCoefficients& coeffs);
/// Same, with kernels already evaluated at |xi| and t.
ModeState propagate_mode(const ModeState& initial, const std::array<double, 3>& xi, const KernelTriple& k,
                         double relax, const LinearCoefficients& coeffs);

/// theta, C1, C2, C3 of the pointwise kernel bounds on |xi| <= R.
struct BoundConstants {
  double theta;
  double c1;
  double c2;
  double c3;
};

BoundConstants bound_constants(double omega, double radius);

struct BoundViolationReport {
  double omega = 0.0;
  double radius = 0.0;
  std::size_t samples = 0;
  std::size_t violations_a = 0;
  std::size_t violations_b = 0;
  std::size_t violations_c = 0;
  /// min over samples of (bound - |kernel|) / bound, per kernel.
  double worst_margin_a = 1.0;
  double worst_margin_b = 1.0;
  double worst_margin_c = 1.0;
  BoundConstants constants{};

  std::size_t violations() const noexcept { return violations_a + violations_b + violations_c; }
};

/// Checks |A| <= C1 e^{-theta s^2 t}, |B| <= C2 e^{-theta s^2 t},
/// |C| <= C3 (e^{-theta t / (4 (1 + sqrt omega)^2)} + s^2 e^{-theta s^2 t}) with absolute slack.
BoundViolationReport verify_pointwise_bounds(double omega, double radius, std::span<const double> xi_samples,
                                             std::span<const double> t_samples, double slack = 1e-12);

/// Uniform grids: |xi| in (0, R] (n_xi points, excluding 0) and t in [0, t_max] (n_t points).
BoundViolationReport scan_pointwise_bounds(double omega, double radius, int n_xi = 200, int n_t = 200,
                                           double t_max = 100.0);

}  // namespace oldb
