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

#include <cstdint>
#include <optional>

#include "oldb/profile.hpp"
#include "oldb/solver.hpp"

namespace oldb {

/// Gaussian random data supported on k_lo <= |k| <= k_hi (wavenumber units,
/// k = j / M), zero mean, u divergence-free, tau trace-free, dealiased, and
/// scaled so the combined H^2 norm equals amplitude.
SimState random_band(const FourierGrid& grid, const FluidParams& params, double k_lo, double k_hi,
                     double amplitude, std::uint64_t seed);

/// Lattice samples of radial profiles times their angular patterns, with the
/// same pattern conventions as the continuum curves. When amplitude > 0 the
/// result is rescaled to that combined H^2 norm.
SimState profile_data(const FourierGrid& grid, const FluidParams& params,
                      const std::optional<SpectralProfile>& u_profile,
                      const std::optional<SpectralProfile>& tau_profile, double amplitude = 0.0);

/// Multiplies u and tau by a common factor.
void rescale(SimState& state, double factor);

}  // namespace oldb
