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
#include <span>
#include <vector>

namespace oldb {

/// Composite Gauss-Legendre rule in log|xi| for integrals over R^d of radial
/// integrands: sum_i w_i f(r_i) ~ |S^{d-1}| int f(r) r^{d-1} dr.
///
/// Panel edges are log-spaced between r_min and r_max with any breakpoints
/// (discontinuities of the integrand) inserted as extra edges. The part of
/// the integral below r_min is added by integrate() assuming a power law
/// through the first two nodes.
class RadialQuadrature {
 public:
  static constexpr int kPanelOrder = 8;

  RadialQuadrature(int dimension = 3, double r_min = 1e-4, double r_max = 1e2, int nodes = 2048,
                   std::vector<double> breakpoints = {});

  int dimension() const noexcept { return dimension_; }
  double r_min() const noexcept { return r_min_; }
  double r_max() const noexcept { return r_max_; }
  std::span<const double> nodes() const noexcept { return nodes_; }
  std::span<const double> weights() const noexcept { return weights_; }

  /// Quadrature sum plus the power-law tail on (0, r_min).
  double integrate(std::span<const double> values) const;

 private:
  int dimension_;
  double r_min_;
  double r_max_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

/// Product rule on the unit sphere S^2 (Gauss-Legendre in cos(theta), uniform
/// in phi); weights sum to one, so sums are angular means. Exact for
/// polynomials in n of total degree <= 23.
struct SphereRule {
  std::vector<std::array<double, 3>> directions;
  std::vector<double> weights;

  static const SphereRule& standard();
  /// Exact to degree 11.
  static const SphereRule& compact();
  /// Unit circle in the (1, 2) plane, exact for trigonometric degree <= 23.
  static const SphereRule& circle();
};

}  // namespace oldb
