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

#include "oldb/decay_character.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "oldb/error.hpp"
#include "oldb/numerics.hpp"
#include "oldb/quadrature.hpp"

namespace oldb {

namespace {

constexpr double kQuadTol = 1e-12;

std::vector<double> geometric_grid(double lo, double hi, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  return out;
}

/// Fit log E vs log rho on the whole window and on three overlapping thirds.
DecayCharacterEstimate fit_ball_curve(std::span<const double> rho, std::span<const double> energy, int d,
                                      const EstimatorOptions& opts) {
  std::vector<double> x, y;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    if (!(energy[i] > 0.0)) throw NoDecayCharacter("ball energy vanishes inside the fit window");
    x.push_back(std::log(rho[i]));
    y.push_back(std::log(energy[i]));
  }
  const auto fit = fit_line(x, y);
  const std::size_t n = x.size();
  const std::size_t third = std::max<std::size_t>(4, n / 3 + 1);
  double lo_slope = fit.slope, hi_slope = fit.slope;
  for (std::size_t start : {std::size_t{0}, (n - third) / 2, n - third}) {
    const auto sub = fit_line(std::span(x).subspan(start, third), std::span(y).subspan(start, third));
    lo_slope = std::min(lo_slope, sub.slope);
    hi_slope = std::max(hi_slope, sub.slope);
  }
  DecayCharacterEstimate est;
  est.r_star = 0.5 * (fit.slope - d);
  est.p_r_value = std::exp(fit.intercept);
  est.fit_window = {opts.rho_min, opts.rho_max};
  est.slope_stderr = fit.slope_stderr;
  est.drift = hi_slope - lo_slope;
  if (est.drift > opts.drift_tolerance)
    throw NoDecayCharacter("no decay character: log-log slope drifts by " + std::to_string(est.drift) +
                           " across the fit window");
  if (!(est.r_star > -0.5 * d))
    throw NoDecayCharacter("fitted decay character is not above -d/2");
  return est;
}

void check_options(const EstimatorOptions& opts) {
  if (!(opts.rho_min > 0.0 && opts.rho_max > opts.rho_min))
    throw ValidationError("estimator window must satisfy 0 < rho_min < rho_max");
  if (opts.points < 12) throw ValidationError("estimator needs at least 12 window points");
}

}  // namespace

double ball_integral(const SpectralProfile& v, double rho) {
  if (!(rho > 0.0)) throw ValidationError("ball radius must be positive");
  const int d = v.dimension();
  auto integrand = [&](double r) {
    if (r < 1e-100) return 0.0;
    const double f = v.radial(r) * std::pow(r, 0.5 * (d - 1));
    return f * f;
  };
  std::vector<double> edges{0.0};
  for (double b : v.breakpoints())
    if (b > 0.0 && b < rho) edges.push_back(b);
  edges.push_back(rho);
  boost::math::quadrature::tanh_sinh<double> ts;
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) sum += ts.integrate(integrand, edges[i], edges[i + 1], kQuadTol);
  return sphere_area(d) * angular_mean_square(v.angular()) * sum;
}

double correlation_integral(const SpectralProfile& v, double r, double rho) {
  const int d = v.dimension();
  if (!(r > -0.5 * d)) throw ValidationError("correlation_integral: r must exceed -d/2");
  return std::pow(rho, -2.0 * r - d) * ball_integral(v, rho);
}

CorrelationLimit classify_correlation(const SpectralProfile& v, double r) {
  const double rho_a = 1e-6, rho_b = 1e-3;
  const double ca = correlation_integral(v, r, rho_a);
  const double cb = correlation_integral(v, r, rho_b);
  if (ca == 0.0) return CorrelationLimit::vanishing;
  const double slope = std::log(cb / ca) / std::log(rho_b / rho_a);
  if (slope > 0.02) return CorrelationLimit::vanishing;
  if (slope < -0.02) return CorrelationLimit::divergent;
  return CorrelationLimit::finite;
}

DecayCharacterEstimate estimate_r_star(const SpectralProfile& v, const EstimatorOptions& opts) {
  check_options(opts);
  const auto rho = geometric_grid(opts.rho_min, opts.rho_max, opts.points);
  std::vector<double> energy;
  for (double r : rho) energy.push_back(ball_integral(v, r));
  return fit_ball_curve(rho, energy, v.dimension(), opts);
}

template <class Kind>
DecayCharacterEstimate estimate_r_star(const SpectralField<Kind>& f, const EstimatorOptions& opts) {
  check_options(opts);
  const auto& g = f.grid();
  const double spacing = 1.0 / g.box_scale();
  if (opts.rho_min < 4.0 * spacing)
    throw ValidationError("lattice estimator window must start at >= 4 lattice spacings (" +
                          std::to_string(4.0 * spacing) + ")");
  // Shell energies sorted by |k|, then cumulative sums.
  std::vector<std::pair<double, double>> shells;
  for (std::size_t m = 0; m < g.mode_count(); ++m) {
    double e = 0.0;
    for (int c = 0; c < f.components; ++c) e += Kind::weight(c) * std::norm(f.at(c, m));
    if (e > 0.0) shells.emplace_back(std::sqrt(g.wavenumber_sq(m)), g.multiplicity(m) * e * g.volume());
  }
  std::sort(shells.begin(), shells.end());
  const auto rho = geometric_grid(opts.rho_min, opts.rho_max, opts.points);
  std::vector<double> energy;
  double acc = 0.0;
  std::size_t next = 0;
  for (double r : rho) {
    while (next < shells.size() && shells[next].first <= r) acc += shells[next++].second;
    energy.push_back(acc);
  }
  return fit_ball_curve(rho, energy, 3, opts);
}

template DecayCharacterEstimate estimate_r_star(const SpectralField<ScalarKind>&, const EstimatorOptions&);
template DecayCharacterEstimate estimate_r_star(const SpectralField<VectorKind>&, const EstimatorOptions&);
template DecayCharacterEstimate estimate_r_star(const SpectralField<SymTensorKind>&, const EstimatorOptions&);

double lp_decay_character(double p, int n) {
  if (!(p >= 1.0 && p < 2.0)) throw ValidationError("lp_decay_character: p must lie in [1, 2)");
  if (n < 1) throw ValidationError("lp_decay_character: n must be positive");
  return -n * (1.0 - 1.0 / p);
}

double r_star_shift(double r_star, double s) { return s + r_star; }

DiagonalSemigroup::DiagonalSemigroup(double frac_order, double damping_floor, int dimension)
    : frac_order_(frac_order), damping_floor_(damping_floor), dimension_(dimension) {
  if (!(frac_order > 0.0 && frac_order <= 1.0)) throw ValidationError("semigroup order must lie in (0, 1]");
  if (!(damping_floor > 0.0)) throw ValidationError("semigroup damping floor must be positive");
  if (dimension < 1) throw ValidationError("semigroup dimension must be positive");
}

std::vector<double> semigroup_decay_curve(const SpectralProfile& v, const DiagonalSemigroup& sg,
                                          std::span<const double> times) {
  if (times.empty()) throw ValidationError("semigroup_decay_curve: empty time grid");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] > 0.0)) throw ValidationError("semigroup_decay_curve: times must be positive");
    if (i > 0 && !(times[i] > times[i - 1])) throw ValidationError("semigroup_decay_curve: times must increase");
  }
  const double sigma = sg.frac_order();
  // Resolve the frequencies |xi| ~ t^{-1/(2 sigma)} of the latest time with room to spare.
  const double r_min = std::min(1e-4, 1e-3 * std::pow(1.0 + times.back(), -0.5 / sigma));
  const double r_max = 1e2;
  const int decades = static_cast<int>(std::ceil(std::log10(r_max / r_min)));
  RadialQuadrature quad(v.dimension(), r_min, r_max, 344 * decades, v.breakpoints());
  const double mean_sq = angular_mean_square(v.angular());

  std::vector<double> profile_sq;
  for (double r : quad.nodes()) profile_sq.push_back(v.radial(r) * v.radial(r));
  std::vector<double> out, values(profile_sq.size());
  for (double t : times) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double r = quad.nodes()[i];
      values[i] = std::exp(-2.0 * sg.damping_floor() * std::pow(r, 2.0 * sigma) * t) * profile_sq[i];
    }
    out.push_back(mean_sq * quad.integrate(values));
  }
  return out;
}

double semigroup_exponent(double r_star, const DiagonalSemigroup& sg) {
  return -(0.5 * sg.dimension() + r_star) / sg.frac_order();
}

}  // namespace oldb
