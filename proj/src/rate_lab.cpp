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

#include "oldb/rate_lab.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <algorithm>
#include <cmath>

#include "oldb/error.hpp"
#include "oldb/numerics.hpp"

namespace oldb {

double alpha(double r_u, double r_tau) {
  if (!(r_u > -1.5) || !(r_tau > -1.5)) throw ValidationError("decay characters must exceed -3/2");
  return std::min(1.5, 1.5 + std::min(r_u, 1.0 + r_tau));
}

double RatePrediction::exponent(const std::string& column) const {
  auto it = exponents.find(column);
  if (it == exponents.end()) throw ValidationError("no predicted exponent for " + column);
  return it->second;
}

std::optional<double> RatePrediction::two_sided() const { return lower_case_a ? lower_case_a : lower_case_b; }

RatePrediction predicted_exponents(double r_u, double r_tau) {
  RatePrediction p;
  p.r_u = r_u;
  p.r_tau = r_tau;
  const double a = alpha(r_u, r_tau);
  p.alpha = a;
  p.exponents = {{"energy", -a},           {"u_l2sq", -a},          {"u_h1sq", -(1.0 + a)},
                 {"def_l2sq", -(1.0 + a)}, {"u_h2sq", -(2.0 + a)},  {"tau_l2sq", -(1.0 + a)},
                 {"tau_h1sq", -(2.0 + a)}, {"tau_h2sq", -(2.0 + a)}, {"eps_l2sq", -(2.0 + a)}};
  if (r_u <= 1.0 + r_tau && r_u <= 0.0) p.lower_case_a = -(2.5 + r_u);
  if (1.0 + r_tau <= r_u && 1.0 + r_tau <= 0.0) p.lower_case_b = -(3.5 + r_tau);
  if (p.exponent("eps_l2sq") != p.exponent("tau_l2sq") - 1.0 || p.exponent("tau_l2sq") != p.exponent("u_h1sq"))
    throw RuntimeAbort("exponent table out of order");
  return p;
}

SlopeFit fit_loglog_slope(const TimeSeries& series, const std::string& column, double t_lo, double t_hi) {
  if (!(t_hi > t_lo)) throw ValidationError("fit window must have t_lo < t_hi");
  auto t = series.times();
  auto v = series.column(column);
  std::vector<double> x, y;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t_lo || t[i] > t_hi) continue;
    if (!(v[i] > 0.0)) throw ValidationError("column " + column + " is not positive inside the fit window");
    x.push_back(std::log1p(t[i]));
    y.push_back(std::log(v[i]));
  }
  if (x.size() < 4) throw ValidationError("fit window holds fewer than 4 samples of " + column);
  auto line = fit_line(x, y);
  SlopeFit f;
  f.slope = line.slope;
  f.intercept = line.intercept;
  f.slope_stderr = line.slope_stderr;
  f.max_residual = line.max_residual;
  f.t_lo = t_lo;
  f.t_hi = t_hi;
  f.n_points = line.n_points;
  return f;
}

AlignmentReport alignment_report(const TimeSeries& series, const AlignmentTolerances& tol) {
  auto win = series.window(tol.t_lo, tol.t_hi);
  if (win.size() < 4) throw ValidationError("alignment window holds fewer than 4 samples");
  auto tau = win.column("tau_l2sq");
  auto eps = win.column("eps_l2sq");
  auto cosine = win.column("align_cos");
  if (std::all_of(tau.begin(), tau.end(), [](double v) { return v == 0.0; }))
    throw ValidationError("stress vanishes identically in the alignment window");
  AlignmentReport r;
  if (std::all_of(eps.begin(), eps.end(), [](double v) { return v == 0.0; })) {
    r.ratio_pass = true;
  } else {
    std::vector<double> ratio(win.size());
    for (std::size_t i = 0; i < ratio.size(); ++i) ratio[i] = eps[i] / tau[i];
    win.add_column("eps_tau_ratio", ratio);
    r.ratio_fit = fit_loglog_slope(win, "eps_tau_ratio", tol.t_lo, tol.t_hi);
    r.ratio_pass = r.ratio_fit->slope <= tol.max_ratio_slope;
  }
  r.cosine_start = cosine.front();
  r.cosine_end = cosine.back();
  r.cosine_defined = r.cosine_start != 0.0 && r.cosine_end != 0.0;
  r.cosine_pass = r.cosine_defined && r.cosine_end > tol.min_final_cosine &&
                  (r.cosine_end > r.cosine_start || r.cosine_end == 1.0);
  r.pass = r.ratio_pass && r.cosine_pass;
  return r;
}

template <class Kind>
double ball_energy(const SpectralField<Kind>& f, double radius) {
  if (!(radius > 0.0)) throw ValidationError("ball radius must be positive");
  const auto& g = f.grid();
  const double r2 = radius * radius;
  double sum = 0.0;
  for (int c = 0; c < f.components; ++c) {
    double part = 0.0;
    for (std::size_t m = 0; m < g.mode_count(); ++m)
      if (g.wavenumber_sq(m) <= r2) part += g.multiplicity(m) * std::norm(f.at(c, m));
    sum += Kind::weight(c) * part;
  }
  return sum * g.volume();
}

template double ball_energy(const SpectralField<ScalarKind>&, double);
template double ball_energy(const SpectralField<VectorKind>&, double);
template double ball_energy(const SpectralField<SymTensorKind>&, double);

double ball_energy(const SpectralProfile& v, double radius, const std::function<double(double)>& multiplier) {
  if (!(radius > 0.0)) throw ValidationError("ball radius must be positive");
  const int d = v.dimension();
  auto integrand = [&](double r) {
    if (r < 1e-100) return 0.0;
    double f = v.radial(r) * std::pow(r, 0.5 * (d - 1));
    if (multiplier) f *= multiplier(r);
    return f * f;
  };
  std::vector<double> edges{0.0};
  for (double b : v.breakpoints())
    if (b > 0.0 && b < radius) edges.push_back(b);
  edges.push_back(radius);
  boost::math::quadrature::tanh_sinh<double> ts;
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) sum += ts.integrate(integrand, edges[i], edges[i + 1], 1e-12);
  return sphere_area(d) * angular_mean_square(v.angular()) * sum;
}

bool TwoSidedVerdict::pass() const {
  if (!applicable || columns.empty()) return false;
  return std::all_of(columns.begin(), columns.end(), [](const ColumnVerdict& c) { return c.pass; });
}

TwoSidedVerdict two_sided_check(const TimeSeries& series, const RatePrediction& prediction, double t_lo,
                                double t_hi, double tol) {
  if (!(tol > 0.0)) throw ValidationError("tolerance must be positive");
  TwoSidedVerdict v;
  auto exponent = prediction.two_sided();
  if (!exponent) {
    v.which_case = "not applicable";
    return v;
  }
  v.applicable = true;
  v.which_case = prediction.lower_case_a ? "a" : "b";
  const std::string def = series.has("def_l2sq") ? "def_l2sq" : "u_h1sq";
  for (const std::string& col : {def, std::string("tau_l2sq")}) {
    ColumnVerdict c;
    c.column = col;
    c.predicted = *exponent;
    c.fit = fit_loglog_slope(series, col, t_lo, t_hi);
    c.pass = std::abs(c.fit.slope - c.predicted) <= tol;
    v.columns.push_back(c);
  }
  return v;
}

}  // namespace oldb
