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
#include <cstddef>
#include <memory>
#include <vector>

namespace oldb {

/// Periodic box of side 2*pi*M sampled with n points per axis.
///
/// Spectral data uses the real-to-complex half layout: indices (i1, i2, i3)
/// with i1, i2 in [0, n) and i3 in [0, n/2], row-major, i3 fastest.
/// Signed lattice index j = i for i < n/2, else i - n (third axis: j3 = i3).
class FourierGrid {
 public:
  FourierGrid(int n_per_axis, double box_scale);

  int n() const noexcept { return n_; }
  double box_scale() const noexcept { return box_scale_; }
  static constexpr int dimension() noexcept { return 3; }

  int nz_half() const noexcept { return n_ / 2 + 1; }
  std::size_t mode_count() const noexcept { return mode_count_; }
  std::size_t point_count() const noexcept { return point_count_; }

  double period() const noexcept;
  double volume() const noexcept;

  /// Signed lattice triple of flat mode index m.
  std::array<int, 3> lattice(std::size_t m) const noexcept;
  /// Wavevector j / M of flat mode index m.
  const std::array<double, 3>& wavevector(std::size_t m) const noexcept { return (*wavevectors_)[m]; }
  double wavenumber_sq(std::size_t m) const noexcept {
    const auto& k = wavevector(m);
    return k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
  }

  std::size_t index(int i1, int i2, int i3) const noexcept {
    return (static_cast<std::size_t>(i1) * n_ + i2) * nz_half() + i3;
  }
  /// Flat index of the mode with signed lattice triple j (j3 >= 0 required).
  std::size_t index_of(std::array<int, 3> j) const noexcept;

  /// Two-thirds rule: |j_i| < n/3 on every axis.
  bool retained(std::size_t m) const noexcept;

  /// Parseval multiplicity: 2 for interior j3 planes, 1 on j3 = 0 and j3 = n/2.
  double multiplicity(std::size_t m) const noexcept;

  bool operator==(const FourierGrid& other) const noexcept {
    return n_ == other.n_ && box_scale_ == other.box_scale_;
  }

 private:
  int n_;
  double box_scale_;
  std::size_t mode_count_;
  std::size_t point_count_;
  std::shared_ptr<const std::vector<std::array<double, 3>>> wavevectors_;
};

}  // namespace oldb
