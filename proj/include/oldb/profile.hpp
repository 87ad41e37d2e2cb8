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
#include <functional>
#include <string>
#include <vector>

namespace oldb {

/// Fixed unit angular patterns multiplying a radial law.
enum class AngularStructure {
  scalar,              ///< 1
  solenoidal_axial,    ///< P(n) e3 = e3 - n3 n, divergence-free vector
  shear_pair,          ///< (e1 e2^T + e2 e1^T) / sqrt(2)
  traceless_diagonal,  ///< diag(1, -1, 0) / sqrt(2)
  isotropic,           ///< I / sqrt(3)
};

bool is_tensor(AngularStructure s) noexcept;
std::string to_string(AngularStructure s);
AngularStructure angular_structure_from_string(const std::string& name);

/// Pattern value at direction n: components 0..2 for vectors (and scalar in
/// slot 0), symmetric storage 11,22,33,12,13,23 for tensors.
std::array<double, 6> angular_pattern(AngularStructure s, const std::array<double, 3>& n) noexcept;
/// Mean over the unit sphere of |pattern|^2 (Frobenius for tensors).
double angular_mean_square(AngularStructure s);

/// Fourier-side description of initial data: |v_hat(xi)| = amplitude * radial(|xi|) * pattern(xi/|xi|).
class SpectralProfile {
 public:
  using RadialLaw = std::function<double(double)>;

  /// Validates square integrability of radial^2 r^{d-1} on (0, inf).
  SpectralProfile(std::string name, RadialLaw radial, AngularStructure angular = AngularStructure::scalar,
                  int dimension = 3, std::vector<double> breakpoints = {});

  /// |xi|^q on |xi| <= 1, zero outside.
  static SpectralProfile power_cutoff(double q, AngularStructure a = AngularStructure::scalar, int d = 3);
  /// |xi|^q exp(-|xi|^2).
  static SpectralProfile power_gauss(double q, AngularStructure a = AngularStructure::scalar, int d = 3);
  /// Indicator of the unit ball.
  static SpectralProfile indicator(AngularStructure a = AngularStructure::scalar, int d = 3);
  /// Low-frequency behaviour of L^p data: |xi|^{-d(1-1/p)} exp(-|xi|^2), p in [1, 2).
  static SpectralProfile lp_like(double p, AngularStructure a = AngularStructure::scalar, int d = 3);
  /// (2 + sin ln|xi|) exp(-|xi|^2): bounded but without a limiting power at 0.
  static SpectralProfile log_oscillating(AngularStructure a = AngularStructure::scalar, int d = 3);

  const std::string& name() const noexcept { return name_; }
  int dimension() const noexcept { return dimension_; }
  AngularStructure angular() const noexcept { return angular_; }
  const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }
  double amplitude() const noexcept { return amplitude_; }

  /// amplitude * radial law.
  double radial(double r) const { return amplitude_ * radial_(r); }

  SpectralProfile scaled(double factor) const;
  /// Profile multiplied by |xi|^s (the data Lambda^s v0).
  SpectralProfile times_power(double s) const;

 private:
  std::string name_;
  RadialLaw radial_;
  AngularStructure angular_;
  int dimension_;
  std::vector<double> breakpoints_;
  double amplitude_ = 1.0;
};

}  // namespace oldb
