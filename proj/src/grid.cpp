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

#include "oldb/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "oldb/error.hpp"

namespace oldb {

FourierGrid::FourierGrid(int n_per_axis, double box_scale) : n_(n_per_axis), box_scale_(box_scale) {
  if (n_per_axis < 4 || n_per_axis % 2 != 0)
    throw ValidationError("n_per_axis must be an even integer >= 4, got " + std::to_string(n_per_axis));
  if (!(box_scale > 0.0)) throw ValidationError("box_scale must be positive");
  mode_count_ = static_cast<std::size_t>(n_) * n_ * nz_half();
  point_count_ = static_cast<std::size_t>(n_) * n_ * n_;
  auto table = std::make_shared<std::vector<std::array<double, 3>>>(mode_count_);
  for (std::size_t m = 0; m < mode_count_; ++m) {
    const auto j = lattice(m);
    (*table)[m] = {j[0] / box_scale_, j[1] / box_scale_, j[2] / box_scale_};
  }
  wavevectors_ = std::move(table);
}

double FourierGrid::period() const noexcept { return 2.0 * std::numbers::pi * box_scale_; }

double FourierGrid::volume() const noexcept {
  const double l = period();
  return l * l * l;
}

std::array<int, 3> FourierGrid::lattice(std::size_t m) const noexcept {
  const int nz = nz_half();
  const int i3 = static_cast<int>(m % nz);
  const int i2 = static_cast<int>((m / nz) % n_);
  const int i1 = static_cast<int>(m / (static_cast<std::size_t>(nz) * n_));
  auto wrap = [this](int i) { return i < n_ / 2 ? i : i - n_; };
  return {wrap(i1), wrap(i2), i3};
}


std::size_t FourierGrid::index_of(std::array<int, 3> j) const noexcept {
  auto unwrap = [this](int v) { return v < 0 ? v + n_ : v; };
  return index(unwrap(j[0]), unwrap(j[1]), j[2]);
}

bool FourierGrid::retained(std::size_t m) const noexcept {
  const auto j = lattice(m);
  const int lim = n_;  // |j| < n/3  <=>  3|j| < n
  return 3 * std::abs(j[0]) < lim && 3 * std::abs(j[1]) < lim && 3 * std::abs(j[2]) < lim;
}

double FourierGrid::multiplicity(std::size_t m) const noexcept {
  const int i3 = static_cast<int>(m % nz_half());
  return (i3 == 0 || i3 == n_ / 2) ? 1.0 : 2.0;
}

}  // namespace oldb
