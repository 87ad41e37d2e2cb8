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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oldb/decay_character.hpp"
#include "oldb/error.hpp"
#include "oldb/numerics.hpp"
#include "oldb/quadrature.hpp"

using namespace oldb;

namespace {

constexpr double kPi = std::numbers::pi;

/// Brute-force midpoint rule for E(rho) = 4 pi int_0^rho f(r)^2 r^2 dr, independent of the estimator.
double brute_ball(const SpectralProfile& v, double rho, int n = 200000) {
  double s = 0.0;
  const double h = rho / n;
  for (int i = 0; i < n; ++i) {
    const double r = (i + 0.5) * h;
    const double f = v.radial(r);
    s += f * f * r * r;
  }
  return 4.0 * kPi * angular_mean_square(v.angular()) * s * h;
}

std::vector<double> geometric(double lo, double hi, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(lo * std::pow(hi / lo, i / double(n - 1)));
  return out;
}

double loglog_slope(std::span<const double> t, std::span<const double> v) {
  std::vector<double> x, y;
  for (std::size_t i = 0; i < t.size(); ++i) {
    x.push_back(std::log1p(t[i]));
    y.push_back(std::log(v[i]));
  }
  return fit_line(x, y).slope;
}

}  // namespace

TEST(Quadrature, UnitBallVolume) {
  RadialQuadrature q(3, 1e-4, 1e2, 2048, {1.0});
  std::vector<double> values;
  for (double r : q.nodes()) values.push_back(r <= 1.0 ? 1.0 : 0.0);
  EXPECT_NEAR(q.integrate(values) / (4.0 * kPi / 3.0), 1.0, 1e-8);
  for (double w : q.weights()) EXPECT_GT(w, 0.0);
}

TEST(Quadrature, GaussianMomentInTwoDimensions) {
  // int_{R^2} exp(-|x|^2) dx = pi
  RadialQuadrature q(2, 1e-5, 20.0, 1024);
  std::vector<double> values;
  for (double r : q.nodes()) values.push_back(std::exp(-r * r));
  EXPECT_NEAR(q.integrate(values), kPi, 1e-10);
}

TEST(Quadrature, SphereRuleMoments) {
  const auto& s = SphereRule::standard();
  double sum = 0.0, m11 = 0.0, m12 = 0.0, m1111 = 0.0, m1122 = 0.0;
  for (std::size_t i = 0; i < s.weights.size(); ++i) {
    const auto& n = s.directions[i];
    sum += s.weights[i];
    m11 += s.weights[i] * n[0] * n[0];
    m12 += s.weights[i] * n[0] * n[1];
    m1111 += s.weights[i] * std::pow(n[0], 4);
    m1122 += s.weights[i] * n[0] * n[0] * n[1] * n[1];
  }
  EXPECT_NEAR(sum, 1.0, 1e-14);
  EXPECT_NEAR(m11, 1.0 / 3.0, 1e-14);
  EXPECT_NEAR(m12, 0.0, 1e-14);
  EXPECT_NEAR(m1111, 1.0 / 5.0, 1e-14);
  EXPECT_NEAR(m1122, 1.0 / 15.0, 1e-14);
}

TEST(Profile, AngularMeanSquares) {
  EXPECT_NEAR(angular_mean_square(AngularStructure::scalar), 1.0, 1e-14);
  EXPECT_NEAR(angular_mean_square(AngularStructure::solenoidal_axial), 2.0 / 3.0, 1e-14);
  EXPECT_NEAR(angular_mean_square(AngularStructure::shear_pair), 1.0, 1e-14);
  EXPECT_NEAR(angular_mean_square(AngularStructure::traceless_diagonal), 1.0, 1e-14);
  EXPECT_NEAR(angular_mean_square(AngularStructure::isotropic), 1.0, 1e-14);
}

TEST(Profile, RejectsNonIntegrableLaws) {
  EXPECT_THROW(SpectralProfile::power_gauss(-1.6), ValidationError);
  EXPECT_THROW(SpectralProfile("flat", [](double) { return 1.0; }), ValidationError);
  EXPECT_NO_THROW(SpectralProfile::power_gauss(-1.4));
  EXPECT_THROW(angular_structure_from_string("spiral"), ValidationError);
}

TEST(CorrelationIntegral, IndicatorBallVolume) {
  const auto v = SpectralProfile::indicator();
  for (double rho : {1e-3, 0.2, 1.0}) EXPECT_NEAR(correlation_integral(v, 0.0, rho), 4.0 * kPi / 3.0, 1e-10);
}

TEST(CorrelationIntegral, LinearProfile) {
  const auto v = SpectralProfile::power_cutoff(1.0);
  for (double rho : {1e-2, 0.5, 1.0}) EXPECT_NEAR(correlation_integral(v, 1.0, rho), 4.0 * kPi / 5.0, 1e-10);
  // r = 0 against a |xi| profile: rho^2 -> 0
  const double a = correlation_integral(v, 0.0, 1e-3), b = correlation_integral(v, 0.0, 1e-4);
  EXPECT_NEAR(a / b, 100.0, 1e-6);
  EXPECT_LT(b, 1e-7);
  EXPECT_THROW(correlation_integral(v, -1.5, 0.1), ValidationError);
}

TEST(CorrelationIntegral, UniquenessOfTheFiniteExponent) {
  for (double q : {-1.0, 0.0, 0.5, 2.0}) {
    const auto v = SpectralProfile::power_gauss(q);
    for (double dr : {-0.5, -0.2, 0.0, 0.2, 0.5}) {
      const double r = q + dr;
      if (r <= -1.5) continue;
      const auto cls = classify_correlation(v, r);
      if (dr < 0.0) EXPECT_EQ(cls, CorrelationLimit::vanishing) << q << " " << r;
      if (dr == 0.0) EXPECT_EQ(cls, CorrelationLimit::finite) << q << " " << r;
      if (dr > 0.0) EXPECT_EQ(cls, CorrelationLimit::divergent) << q << " " << r;
    }
  }
}

TEST(EstimateRStar, PowerGaussRecoversExponent) {
  for (double q : {-1.0, 0.0, 1.0, 2.0}) {
    const auto v = SpectralProfile::power_gauss(q);
    // Oracle: brute-force E(rho) slope is 2q + 3.
    const auto rho = geometric(1e-4, 1e-1, 12);
    std::vector<double> x, y;
    for (double r : rho) {
      x.push_back(std::log(r));
      y.push_back(std::log(brute_ball(v, r)));
    }
    EXPECT_NEAR(fit_line(x, y).slope, 2.0 * q + 3.0, 0.02);
    const auto est = estimate_r_star(v);
    EXPECT_NEAR(est.r_star, q, 0.05) << "q = " << q;
    EXPECT_LT(est.drift, 0.05);
  }
}

TEST(EstimateRStar, IndicatorConstant) {
  const auto est = estimate_r_star(SpectralProfile::indicator());
  EXPECT_NEAR(est.r_star, 0.0, 1e-6);
  EXPECT_NEAR(est.p_r_value / (4.0 * kPi / 3.0), 1.0, 1e-3);
}

TEST(EstimateRStar, LogOscillatingHasNoDecayCharacter) {
  EXPECT_THROW(estimate_r_star(SpectralProfile::log_oscillating()), NoDecayCharacter);
}

TEST(EstimateRStar, ScaleAndShift) {
  const auto v = SpectralProfile::power_gauss(0.0);
  const auto base = estimate_r_star(v);
  const auto doubled = estimate_r_star(v.scaled(2.0));
  EXPECT_NEAR(doubled.r_star, base.r_star, 1e-10);
  EXPECT_NEAR(doubled.p_r_value / base.p_r_value, 4.0, 1e-9);
  for (double s : {0.5, 1.0, 2.0}) {
    const auto shifted = estimate_r_star(v.times_power(s));
    EXPECT_NEAR(shifted.r_star, r_star_shift(base.r_star, s), 0.05) << "s = " << s;
  }
  EXPECT_NEAR(estimate_r_star(v.times_power(1.0)).r_star, 1.0, 0.05);
}

TEST(EstimateRStar, LatticeShellSums) {
  FourierGrid g(96, 32.0);
  for (double q : {0.0, 1.0}) {
    SpectralScalarField f(g);
    for (std::size_t m = 1; m < g.mode_count(); ++m) f.at(0, m) = std::pow(std::sqrt(g.wavenumber_sq(m)), q);
    EstimatorOptions opts;
    opts.rho_min = 4.0 / 32.0;
    opts.rho_max = 1.0;
    opts.drift_tolerance = 0.5;
    EXPECT_NEAR(estimate_r_star(f, opts).r_star, q, 0.1);
  }
  EstimatorOptions too_fine;
  too_fine.rho_min = 1.0 / 32.0;
  EXPECT_THROW(estimate_r_star(SpectralScalarField(g), too_fine), ValidationError);
}

TEST(LpDecayCharacter, Formula) {
  EXPECT_DOUBLE_EQ(lp_decay_character(1.0, 3), 0.0);
  EXPECT_DOUBLE_EQ(lp_decay_character(4.0 / 3.0, 3), -0.75);
  EXPECT_NEAR(lp_decay_character(2.0 - 1e-12, 3), -1.5, 1e-9);
  EXPECT_THROW(lp_decay_character(2.0, 3), ValidationError);
  EXPECT_THROW(lp_decay_character(0.9, 3), ValidationError);
  // lp_like data carries the same decay character.
  EXPECT_NEAR(estimate_r_star(SpectralProfile::lp_like(4.0 / 3.0)).r_star, -0.75, 0.05);
}

TEST(RStarShift, Identity) {
  EXPECT_DOUBLE_EQ(r_star_shift(0.0, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(r_star_shift(-0.7, 0.0), -0.7);
}

TEST(Semigroup, DecaySlopes) {
  const auto times = geometric(1e2, 1e4, 25);
  struct Case {
    double sigma;
    SpectralProfile profile;
    double r_star;
    double expected;
  };
  const Case cases[] = {
      {1.0, SpectralProfile::indicator(), 0.0, -1.5},
      {1.0, SpectralProfile::power_gauss(1.0), 1.0, -2.5},
      {0.5, SpectralProfile::indicator(), 0.0, -3.0},
      {0.5, SpectralProfile::power_gauss(1.0), 1.0, -5.0},
  };
  for (const auto& c : cases) {
    DiagonalSemigroup sg(c.sigma, 1.0);
    EXPECT_DOUBLE_EQ(semigroup_exponent(c.r_star, sg), c.expected);
    const auto curve = semigroup_decay_curve(c.profile, sg, times);
    EXPECT_NEAR(loglog_slope(times, curve), c.expected, 0.05) << c.sigma << " " << c.r_star;
    for (std::size_t i = 1; i < curve.size(); ++i) EXPECT_LT(curve[i], curve[i - 1]);
  }
}

TEST(Semigroup, HeatCurveMatchesClosedForm) {
  // Indicator under the heat semigroup: 4 pi int_0^1 exp(-2 r^2 t) r^2 dr.
  DiagonalSemigroup sg(1.0, 1.0);
  const std::vector<double> times{0.5, 3.0, 40.0};
  const auto curve = semigroup_decay_curve(SpectralProfile::indicator(), sg, times);
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double a = 2.0 * times[i];
    const double exact =
        4.0 * kPi * (std::sqrt(kPi) * std::erf(std::sqrt(a)) / (4.0 * std::pow(a, 1.5)) - std::exp(-a) / (2.0 * a));
    EXPECT_NEAR(curve[i] / exact, 1.0, 1e-9);
  }
}

TEST(Semigroup, Validation) {
  EXPECT_THROW(DiagonalSemigroup(0.0, 1.0), ValidationError);
  EXPECT_THROW(DiagonalSemigroup(1.5, 1.0), ValidationError);
  EXPECT_THROW(DiagonalSemigroup(1.0, 0.0), ValidationError);
  DiagonalSemigroup sg(1.0, 1.0);
  EXPECT_THROW(semigroup_decay_curve(SpectralProfile::indicator(), sg, {}), ValidationError);
}
