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

#include "oldb/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>

#include "oldb/error.hpp"
#include "oldb/numerics.hpp"

namespace oldb {

namespace {

/// Full Gauss-Legendre rule on [-1, 1] from Boost's half tables.
template <int N>
std::pair<std::vector<double>, std::vector<double>> legendre_rule() {
  using rule = boost::math::quadrature::gauss<double, N>;
  const auto& x = rule::abscissa();
  const auto& w = rule::weights();
  std::vector<double> nodes, weights;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0) {
      nodes.push_back(0.0);
      weights.push_back(w[i]);
      continue;
    }
    nodes.push_back(-x[i]);
    weights.push_back(w[i]);
    nodes.push_back(x[i]);
    weights.push_back(w[i]);
  }
  return {nodes, weights};
}

}  // namespace

RadialQuadrature::RadialQuadrature(int dimension, double r_min, double r_max, int nodes,
                                   std::vector<double> breakpoints)
    : dimension_(dimension), r_min_(r_min), r_max_(r_max) {
  if (dimension < 1) throw ValidationError("RadialQuadrature: dimension must be positive");
  if (!(r_min > 0.0 && r_max > r_min)) throw ValidationError("RadialQuadrature: need 0 < r_min < r_max");
  if (nodes < kPanelOrder) throw ValidationError("RadialQuadrature: too few nodes");

  const int panels = nodes / kPanelOrder;
  const double lo = std::log(r_min), hi = std::log(r_max);
  std::vector<double> edges;
  for (int p = 0; p <= panels; ++p) edges.push_back(lo + (hi - lo) * p / panels);
  for (double b : breakpoints)
    if (b > r_min && b < r_max) edges.push_back(std::log(b));
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  static const auto rule = legendre_rule<kPanelOrder>();
  const double area = sphere_area(dimension);
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    const double a = edges[p], b = edges[p + 1];
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    for (std::size_t i = 0; i < rule.first.size(); ++i) {
      const double x = mid + half * rule.first[i];
      const double r = std::exp(x);
      nodes_.push_back(r);
      // dr = r dx, measure r^{d-1} dr = r^d dx
      weights_.push_back(area * half * rule.second[i] * std::pow(r, dimension));
    }
  }
}

double RadialQuadrature::integrate(std::span<const double> values) const {
  if (values.size() != nodes_.size()) throw ValidationError("RadialQuadrature: value count mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) sum += weights_[i] * values[i];

  const double v0 = values[0], v1 = values[1];
  const double r0 = nodes_[0], r1 = nodes_[1];
  const double d = dimension_;
  double p = 0.0;  // local exponent of the integrand near r_min
  if (v0 > 0.0 && v1 > 0.0) p = std::log(v1 / v0) / std::log(r1 / r0);
  else if (v0 < 0.0 && v1 < 0.0) p = std::log(v1 / v0) / std::log(r1 / r0);
  if (v0 != 0.0) {
    if (p + d <= 0.0) throw RuntimeAbort("RadialQuadrature: integrand is not integrable at the origin");
    const double c = v0 / std::pow(r0, p);
    sum += sphere_area(dimension_) * c * std::pow(r_min_, p + d) / (p + d);
  }
  return sum;
}

namespace {

template <int N>
SphereRule product_rule(int n_phi) {
  const auto [mu, wmu] = legendre_rule<N>();
  SphereRule s;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const double st = std::sqrt(std::max(0.0, 1.0 - mu[i] * mu[i]));
    for (int j = 0; j < n_phi; ++j) {
      const double phi = 2.0 * std::numbers::pi * (j + 0.5) / n_phi;
      s.directions.push_back({st * std::cos(phi), st * std::sin(phi), mu[i]});
      s.weights.push_back(0.5 * wmu[i] / n_phi);
    }
  }
  return s;
}

}  // namespace

const SphereRule& SphereRule::standard() {
  static const SphereRule rule = product_rule<12>(24);
  return rule;
}

const SphereRule& SphereRule::compact() {
  static const SphereRule rule = product_rule<6>(12);
  return rule;
}

const SphereRule& SphereRule::circle() {
  static const SphereRule rule = [] {
    constexpr int n_phi = 24;
    SphereRule s;
    for (int j = 0; j < n_phi; ++j) {
      const double phi = 2.0 * std::numbers::pi * (j + 0.5) / n_phi;
      s.directions.push_back({std::cos(phi), std::sin(phi), 0.0});
      s.weights.push_back(1.0 / n_phi);
    }
    return s;
  }();
  return rule;
}

}  // namespace oldb
