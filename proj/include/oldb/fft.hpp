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
#include <memory>
#include <span>
#include <vector>

#include "oldb/fields.hpp"
#include "oldb/grid.hpp"

namespace oldb {

/// Real-space samples of one field component, n^3 points, row-major.
using PhysicalComponent = std::vector<double>;

/// FFTW-backed real <-> half-spectrum transforms for one grid.
///
/// Owns its plans and scratch; not safe to share between threads, create one
/// per worker. Plans are built once with FFTW_MEASURE (FFTW_ESTIMATE for tiny
/// grids). Worker threads used inside a single transform come from
/// OLDB_THREADS (0 or unset = hardware concurrency).
class FftPlan {
 public:
  explicit FftPlan(const FourierGrid& grid);
  ~FftPlan();
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;
  FftPlan(FftPlan&&) noexcept;
  FftPlan& operator=(FftPlan&&) noexcept;

  const FourierGrid& grid() const noexcept;

  /// Synthesis f(x) = sum_k f_k exp(i k.x).
  void to_physical(std::span<const cplx> spectrum, std::span<double> physical);
  /// Analysis f_k = box mean of f exp(-i k.x).
  void to_spectral(std::span<const double> physical, std::span<cplx> spectrum);

  template <class Kind>
  std::vector<PhysicalComponent> to_physical(const SpectralField<Kind>& f) {
    std::vector<PhysicalComponent> out(f.components, PhysicalComponent(grid().point_count()));
    for (int c = 0; c < f.components; ++c) to_physical(f.component(c), out[c]);
    return out;
  }

  template <class Kind>
  SpectralField<Kind> to_spectral(const std::vector<PhysicalComponent>& phys) {
    SpectralField<Kind> f(grid());
    for (int c = 0; c < f.components; ++c) to_spectral(phys[c], f.component(c));
    return f;
  }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Thread count requested through OLDB_THREADS (0 = auto).
int configured_threads();

}  // namespace oldb
