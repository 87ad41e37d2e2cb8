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

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "oldb/fields.hpp"
#include "oldb/profile.hpp"
#include "oldb/timeseries.hpp"

namespace oldb {

/// min{3/2, 3/2 + min{r_u, 1 + r_tau}}; arguments must exceed -3/2.
double alpha(double r_u, double r_tau);

/// Predicted exponents p, meaning quantity ~ (1 + t)^p, keyed by series column:
/// energy and u_l2sq -> -alpha, u_h1sq and def_l2sq -> -(1 + alpha),
/// u_h2sq -> -(2 + alpha), tau_l2sq -> -(1 + alpha), tau_h1sq and tau_h2sq ->
/// -(2 + alpha), eps_l2sq -> -(2 + alpha).
struct RatePrediction {
  double r_u = 0.0;
  double r_tau = 0.0;
  double alpha = 1.5;
  std::map<std::string, double> exponents;
  /// Two-sided exponent of |D(u)|^2 and |tau|^2 when r_u <= 1 + r_tau and r_u <= 0.
  std::optional<double> lower_case_a;
  /// Two-sided exponent when 1 + r_tau <= r_u and 1 + r_tau <= 0.
  std::optional<double> lower_case_b;

  double exponent(const std::string& column) const;
  bool has(const std::string& column) const { return exponents.count(column) > 0; }
  /// The applicable two-sided exponent (case a preferred when both hold).
  std::optional<double> two_sided() const;
};

RatePrediction predicted_exponents(double r_u, double r_tau);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  double max_residual = 0.0;
  double t_lo = 0.0;
  double t_hi = 0.0;
  int n_points = 0;
};

/// Least squares of log(value) against log(1 + t) over samples with t in [t_lo, t_hi].
SlopeFit fit_loglog_slope(const TimeSeries& series, const std::string& column, double t_lo, double t_hi);

struct AlignmentTolerances {
  double t_lo = 5.0;
  double t_hi = 50.0;
  double max_ratio_slope = -0.7;
  double min_final_cosine = 0.9;
};

struct AlignmentReport {
  /// Fit of |eps|^2 / |tau|^2; absent when eps vanishes identically in the window.
  std::optional<SlopeFit> ratio_fit;
  double cosine_start = 0.0;
  double cosine_end = 0.0;
  bool cosine_defined = false;
  bool ratio_pass = false;
  bool cosine_pass = false;
  bool pass = false;
};

/// Needs eps_l2sq, tau_l2sq and align_cos columns. A cosine of exactly 0 at
/// either end of the window is treated as undefined and fails the cosine test.
AlignmentReport alignment_report(const TimeSeries& series, const AlignmentTolerances& tol = {});

/// Box integral of |f_k|^2 over modes with |k| <= radius.
template <class Kind>
double ball_energy(const SpectralField<Kind>& f, double radius);

/// Integral over |xi| <= radius of (multiplier(|xi|) |v_hat(xi)|)^2 for a profile.
double ball_energy(const SpectralProfile& profile, double radius,
                   const std::function<double(double)>& multiplier = {});

struct ColumnVerdict {
  std::string column;
  double predicted = 0.0;
  SlopeFit fit;
  bool pass = false;
};

struct TwoSidedVerdict {
  bool applicable = false;
  std::string which_case;  ///< "a", "b" or "not applicable"
  std::vector<ColumnVerdict> columns;
  bool pass() const;
};

/// Slopes of |D(u)|^2 (def_l2sq, or u_h1sq when absent) and |tau|^2 against
/// the two-sided exponent; "not applicable" when neither case holds.
TwoSidedVerdict two_sided_check(const TimeSeries& series, const RatePrediction& prediction, double t_lo,
                                double t_hi, double tol);

}  // namespace oldb
