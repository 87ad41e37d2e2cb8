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

#include "oldb/profile.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "oldb/error.hpp"
#include "oldb/quadrature.hpp"

namespace oldb {

namespace {

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;
const double kInvSqrt3 = 1.0 / std::numbers::sqrt3;

/// int_0^inf f(r)^2 r^{d-1} dr, throwing when it is not finite.
double radial_mass(const SpectralProfile::RadialLaw& f, int d, const std::vector<double>& breakpoints) {
  auto integrand = [&](double r) {
    if (r < 1e-100) return 0.0;  // negligible for any integrable law; avoids overflow
    const double v = f(r) * std::pow(r, 0.5 * (d - 1));
    return v * v;
  };
  // Local exponent near the origin decides integrability before any quadrature.
  const double ra = 1e-12, rb = 1e-10;
  const double ga = integrand(ra), gb = integrand(rb);
  if (!std::isfinite(ga) || !std::isfinite(gb))
    throw ValidationError("profile is not finite near the origin");
  if (ga > 0.0 && gb > 0.0 && std::log(gb / ga) / std::log(rb / ra) <= -1.0)
    throw ValidationError("profile is not square integrable at the origin");

  std::vector<double> edges{0.0};
  for (double b : breakpoints)
    if (b > 0.0) edges.push_back(b);
  if (edges.back() < 1.0) edges.push_back(1.0);
  boost::math::quadrature::tanh_sinh<double> ts;
  boost::math::quadrature::exp_sinh<double> es;
  double total = 0.0;
  try {
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) total += ts.integrate(integrand, edges[i], edges[i + 1]);
    total += es.integrate(integrand, edges.back(), std::numeric_limits<double>::infinity());
  } catch (const std::exception& e) {
    throw ValidationError(std::string("profile is not square integrable: ") + e.what());
  }
  if (!std::isfinite(total)) throw ValidationError("profile is not square integrable");
  return total;
}

}  // namespace

bool is_tensor(AngularStructure s) noexcept {
  return s == AngularStructure::shear_pair || s == AngularStructure::traceless_diagonal ||
         s == AngularStructure::isotropic;
}

std::string to_string(AngularStructure s) {
  switch (s) {
    case AngularStructure::scalar: return "scalar";
    case AngularStructure::solenoidal_axial: return "solenoidal_axial";
    case AngularStructure::shear_pair: return "shear_pair";
    case AngularStructure::traceless_diagonal: return "traceless_diagonal";
    case AngularStructure::isotropic: return "isotropic";
  }
  return "scalar";
}

AngularStructure angular_structure_from_string(const std::string& name) {
  for (auto s : {AngularStructure::scalar, AngularStructure::solenoidal_axial, AngularStructure::shear_pair,
                 AngularStructure::traceless_diagonal, AngularStructure::isotropic})
    if (to_string(s) == name) return s;
  throw ValidationError("unknown angular structure '" + name + "'");
}

std::array<double, 6> angular_pattern(AngularStructure s, const std::array<double, 3>& n) noexcept {
  switch (s) {
    case AngularStructure::scalar: return {1.0, 0, 0, 0, 0, 0};
    case AngularStructure::solenoidal_axial: return {-n[2] * n[0], -n[2] * n[1], 1.0 - n[2] * n[2], 0, 0, 0};
    case AngularStructure::shear_pair: return {0, 0, 0, kInvSqrt2, 0, 0};
    case AngularStructure::traceless_diagonal: return {kInvSqrt2, -kInvSqrt2, 0, 0, 0, 0};
    case AngularStructure::isotropic: return {kInvSqrt3, kInvSqrt3, kInvSqrt3, 0, 0, 0};
  }
  return {};
}

double angular_mean_square(AngularStructure s) {
  const auto& rule = SphereRule::standard();
  double mean = 0.0;
  for (std::size_t i = 0; i < rule.weights.size(); ++i) {
    const auto p = angular_pattern(s, rule.directions[i]);
    double sq = 0.0;
    for (int c = 0; c < 6; ++c) sq += (is_tensor(s) && c >= 3 ? 2.0 : 1.0) * p[c] * p[c];
    mean += rule.weights[i] * sq;
  }
  return mean;
}

SpectralProfile::SpectralProfile(std::string name, RadialLaw radial, AngularStructure angular, int dimension,
                                 std::vector<double> breakpoints)
    : name_(std::move(name)),
      radial_(std::move(radial)),
      angular_(angular),
      dimension_(dimension),
      breakpoints_(std::move(breakpoints)) {
  if (dimension < 1) throw ValidationError("profile dimension must be positive");
  radial_mass(radial_, dimension_, breakpoints_);
}

SpectralProfile SpectralProfile::power_cutoff(double q, AngularStructure a, int d) {
  return SpectralProfile(
      "power_cutoff", [q](double r) { return r <= 1.0 ? std::pow(r, q) : 0.0; }, a, d, {1.0});
}

SpectralProfile SpectralProfile::power_gauss(double q, AngularStructure a, int d) {
  return SpectralProfile(
      "power_gauss", [q](double r) { return std::pow(r, q) * std::exp(-r * r); }, a, d);
}

SpectralProfile SpectralProfile::indicator(AngularStructure a, int d) {
  return SpectralProfile(
      "indicator", [](double r) { return r <= 1.0 ? 1.0 : 0.0; }, a, d, {1.0});
}

SpectralProfile SpectralProfile::lp_like(double p, AngularStructure a, int d) {
  if (!(p >= 1.0 && p < 2.0)) throw ValidationError("lp_like: p must lie in [1, 2)");
  const double q = -d * (1.0 - 1.0 / p);
  return SpectralProfile(
      "lp_like", [q](double r) { return std::pow(r, q) * std::exp(-r * r); }, a, d);
}

SpectralProfile SpectralProfile::log_oscillating(AngularStructure a, int d) {
  return SpectralProfile(
      "log_oscillating", [](double r) { return (2.0 + std::sin(std::log(r))) * std::exp(-r * r); }, a, d);
}

SpectralProfile SpectralProfile::scaled(double factor) const {
  SpectralProfile out = *this;
  out.amplitude_ *= factor;
  return out;
}

SpectralProfile SpectralProfile::times_power(double s) const {
  auto base = radial_;
  SpectralProfile out(
      name_ + "*|xi|^s", [base, s](double r) { return std::pow(r, s) * base(r); }, angular_, dimension_,
      breakpoints_);
  out.amplitude_ = amplitude_;
  return out;
}

}  // namespace oldb
