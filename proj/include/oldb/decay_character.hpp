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

#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "oldb/fields.hpp"
#include "oldb/profile.hpp"

namespace oldb {

/// Raised when the low-frequency behaviour does not settle to a power law.
class NoDecayCharacter : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DecayCharacterEstimate {
  double r_star = 0.0;
  double p_r_value = 0.0;
  std::pair<double, double> fit_window{1e-4, 1e-1};
  double slope_stderr = 0.0;
  double drift = 0.0;  ///< spread of sub-window slopes of log E vs log rho
};

struct EstimatorOptions {
  double rho_min = 1e-4;
  double rho_max = 1e-1;
  int points = 25;
  double drift_tolerance = 0.05;
};

/// E(rho) = int_{|xi| <= rho} |v_hat|^2 d xi (adaptive tanh-sinh in |xi|).
double ball_integral(const SpectralProfile& v, double rho);

/// rho^{-2r-d} E(rho); requires r > -d/2 and rho > 0.
double correlation_integral(const SpectralProfile& v, double r, double rho);

enum class CorrelationLimit { vanishing, finite, divergent };
/// Behaviour of correlation_integral(v, r, rho) as rho -> 0, read off rho in [1e-6, 1e-3].
CorrelationLimit classify_correlation(const SpectralProfile& v, double r);

/// Log-log slope s of E(rho) on the window; r* = (s - d)/2, P from the intercept.
/// Throws NoDecayCharacter when sub-window slopes drift beyond the tolerance.
DecayCharacterEstimate estimate_r_star(const SpectralProfile& v, const EstimatorOptions& opts = {});

/// Lattice version for box fields: E(rho) is the Parseval shell sum over |k| <= rho.
/// The window must start at >= 4 lattice spacings (4 / M).
template <class Kind>
DecayCharacterEstimate estimate_r_star(const SpectralField<Kind>& f, const EstimatorOptions& opts);

/// Decay character of L^p data in R^n: -n (1 - 1/p), p in [1, 2).
double lp_decay_character(double p, int n);

/// Decay character of Lambda^s v0.
double r_star_shift(double r_star, double s);

/// Symbol -c |xi|^{2 sigma} of a diagonalizable dissipative semigroup.
class DiagonalSemigroup {
 public:
  DiagonalSemigroup(double frac_order, double damping_floor, int dimension = 3);
  double frac_order() const noexcept { return frac_order_; }
  double damping_floor() const noexcept { return damping_floor_; }
  int dimension() const noexcept { return dimension_; }

 private:
  double frac_order_;
  double damping_floor_;
  int dimension_;
};

/// ||v(t)||^2 = int exp(-2 c |xi|^{2 sigma} t) |v_hat|^2 d xi at each time.
std::vector<double> semigroup_decay_curve(const SpectralProfile& v, const DiagonalSemigroup& sg,
                                          std::span<const double> times);

/// Asymptotic exponent -(d/2 + r*)/sigma of ||v(t)||^2.
double semigroup_exponent(double r_star, const DiagonalSemigroup& sg);

}  // namespace oldb
