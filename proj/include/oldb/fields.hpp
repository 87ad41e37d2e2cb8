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

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "oldb/grid.hpp"

namespace oldb {

using cplx = std::complex<double>;

struct ScalarKind {
  static constexpr int components = 1;
  static constexpr double weight(int) noexcept { return 1.0; }
};
struct VectorKind {
  static constexpr int components = 3;
  static constexpr double weight(int) noexcept { return 1.0; }
};
/// Symmetric 3x3 tensor, stored as 11, 22, 33, 12, 13, 23.
struct SymTensorKind {
  static constexpr int components = 6;
  static constexpr double weight(int c) noexcept { return c < 3 ? 1.0 : 2.0; }
};
/// Antisymmetric 3x3 tensor, stored as 12, 13, 23 (the 21, 31, 32 entries are the negatives).
struct AntisymTensorKind {
  static constexpr int components = 3;
  static constexpr double weight(int) noexcept { return 2.0; }
};

/// Storage slot of entry (i, j) of a symmetric tensor.
constexpr int sym_index(int i, int j) noexcept {
  constexpr int table[3][3] = {{0, 3, 4}, {3, 1, 5}, {4, 5, 2}};
  return table[i][j];
}

/// Fourier coefficients of a real periodic field on a FourierGrid.
///
/// Coefficients follow f(x) = sum_k f_k exp(i k.x), so f_k is the box average
/// of f exp(-i k.x). Component c of mode m lives at data[c * modes + m].
template <class Kind>
class SpectralField {
 public:
  static constexpr int components = Kind::components;

  explicit SpectralField(const FourierGrid& grid)
      : grid_(grid), data_(static_cast<std::size_t>(components) * grid.mode_count()) {}

  const FourierGrid& grid() const noexcept { return grid_; }
  std::size_t modes() const noexcept { return grid_.mode_count(); }

  cplx& at(int c, std::size_t m) noexcept { return data_[c * modes() + m]; }
  const cplx& at(int c, std::size_t m) const noexcept { return data_[c * modes() + m]; }

  std::span<cplx> component(int c) noexcept { return {data_.data() + c * modes(), modes()}; }
  std::span<const cplx> component(int c) const noexcept {
    return {data_.data() + c * modes(), modes()};
  }

  std::span<cplx> raw() noexcept { return data_; }
  std::span<const cplx> raw() const noexcept { return data_; }

  SpectralField& operator+=(const SpectralField& o) {
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  SpectralField& operator-=(const SpectralField& o) {
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  SpectralField& operator*=(double s) {
    for (auto& v : data_) v *= s;
    return *this;
  }
  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(double s, SpectralField a) { return a *= s; }

  bool operator==(const SpectralField& o) const { return grid_ == o.grid_ && data_ == o.data_; }

 private:
  FourierGrid grid_;
  std::vector<cplx> data_;
};

using SpectralScalarField = SpectralField<ScalarKind>;
using SpectralVectorField = SpectralField<VectorKind>;
using SpectralTensorField = SpectralField<SymTensorKind>;
using SpectralAntisymField = SpectralField<AntisymTensorKind>;

/// Zero every mode outside the two-thirds dealiasing mask.
template <class Kind>
void apply_dealias(SpectralField<Kind>& f) {
  const auto& g = f.grid();
  for (std::size_t m = 0; m < f.modes(); ++m) {
    if (g.retained(m)) continue;
    for (int c = 0; c < f.components; ++c) f.at(c, m) = 0.0;
  }
}

/// Box integral of |f|^2 (Frobenius for tensors) via Parseval.
template <class Kind>
double l2_norm_sq(const SpectralField<Kind>& f) {
  const auto& g = f.grid();
  double sum = 0.0;
  for (int c = 0; c < f.components; ++c) {
    double part = 0.0;
    for (std::size_t m = 0; m < f.modes(); ++m) part += g.multiplicity(m) * std::norm(f.at(c, m));
    sum += Kind::weight(c) * part;
  }
  return sum * g.volume();
}

/// Box integral of f : g for real fields f, g (Frobenius for tensors, with
/// symmetric off-diagonals counted twice).
double inner(const SpectralTensorField& f, const SpectralTensorField& g);
double inner(const SpectralVectorField& f, const SpectralVectorField& g);

/// Largest violation of f(-k) = conj f(k) on the j3 = 0 plane, relative to max |f|.
template <class Kind>
double hermitian_defect(const SpectralField<Kind>& f) {
  const auto& g = f.grid();
  const int n = g.n();
  double worst = 0.0, scale = 0.0;
  for (int c = 0; c < f.components; ++c) {
    for (auto v : f.component(c)) scale = std::max(scale, std::abs(v));
    for (int i1 = 0; i1 < n; ++i1) {
      for (int i2 = 0; i2 < n; ++i2) {
        const cplx a = f.at(c, g.index(i1, i2, 0));
        const cplx b = f.at(c, g.index((n - i1) % n, (n - i2) % n, 0));
        worst = std::max(worst, std::abs(a - std::conj(b)));
      }
    }
  }
  return scale > 0.0 ? worst / scale : 0.0;
}

}  // namespace oldb
