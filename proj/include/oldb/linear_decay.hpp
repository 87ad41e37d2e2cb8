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

#include <optional>
#include <span>

#include "oldb/profile.hpp"
#include "oldb/timeseries.hpp"

namespace oldb {

struct LinearCurveOptions {
  int nodes = 2048;
  double r_min = 1e-4;
  double r_max = 1e2;
  /// Node count doubles until the energy at the first and last time agrees
  /// with the half-resolution value to this relative tolerance.
  double tolerance = 1e-6;
  int max_nodes = 32768;
  bool refine = true;
};

/// Norms of the linear solution with |u0_hat| and |tau0_hat| given by profiles
/// (nullopt means zero data), on the continuum R^d.
///
/// Columns: energy (omega |u|^2 + |tau|^2 / 2), u_l2sq, u_h1sq, u_h2sq,
/// tau_l2sq, tau_h1sq, tau_h2sq, def_l2sq (|D(u)|^2), eps_l2sq
/// (|tau - 2 omega D(u)|^2), align_cos.
TimeSeries linear_energy_curve(const std::optional<SpectralProfile>& u_profile,
                               const std::optional<SpectralProfile>& tau_profile, double omega,
                               std::span<const double> times, const LinearCurveOptions& opts = {});

/// |d/dt E + |tau|^2 + 2 omega (1 - omega) |grad u|^2| / dissipation, with E
/// the energy column and d/dt a central difference of step dt (one-sided
/// second order when t < dt). Returns 0 when everything vanishes.
double energy_identity_residual(const std::optional<SpectralProfile>& u_profile,
                                const std::optional<SpectralProfile>& tau_profile, double omega, double t,
                                double dt, const LinearCurveOptions& opts = {});

/// Integral of |u_L(xi, t)|^2 over |xi| <= radius.
double linear_ball_energy(const std::optional<SpectralProfile>& u_profile,
                          const std::optional<SpectralProfile>& tau_profile, double omega, double t,
                          double radius, const LinearCurveOptions& opts = {});

}  // namespace oldb
