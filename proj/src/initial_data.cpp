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

#include "oldb/initial_data.hpp"

#include <cmath>
#include <random>

#include "oldb/error.hpp"
#include "oldb/operators.hpp"

namespace oldb {

void rescale(SimState& s, double factor) {
  s.u *= factor;
  s.tau *= factor;
}

namespace {

void normalize(SimState& s, double amplitude) {
  double h2 = h2_norm(s);
  if (h2 == 0.0) throw ValidationError("initial data vanish on this grid");
  rescale(s, amplitude / h2);
}

}  // namespace

SimState random_band(const FourierGrid& g, const FluidParams& params, double k_lo, double k_hi, double amplitude,
                     std::uint64_t seed) {
  if (!(k_lo >= 0.0 && k_hi > k_lo)) throw ValidationError("random_band needs 0 <= k_lo < k_hi");
  if (!(amplitude > 0.0)) throw ValidationError("random_band amplitude must be positive");
  FftPlan fft(g);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  auto noise = [&](int comps) {
    std::vector<PhysicalComponent> phys(comps, PhysicalComponent(g.point_count()));
    for (auto& c : phys)
      for (auto& v : c) v = normal(rng);
    return phys;
  };
  SimState s(g, params);
  s.u = fft.to_spectral<VectorKind>(noise(3));
  s.tau = fft.to_spectral<SymTensorKind>(noise(6));
  for (std::size_t m = 0; m < g.mode_count(); ++m) {
    const double k = std::sqrt(g.wavenumber_sq(m));
    if (k == 0.0 || k < k_lo || k > k_hi || !g.retained(m)) {
      for (int c = 0; c < 3; ++c) s.u.at(c, m) = 0.0;
      for (int c = 0; c < 6; ++c) s.tau.at(c, m) = 0.0;
      continue;
    }
    const cplx tr = (s.tau.at(0, m) + s.tau.at(1, m) + s.tau.at(2, m)) / 3.0;
    for (int c = 0; c < 3; ++c) s.tau.at(c, m) -= tr;
  }
  s.u = leray_project(s.u);
  normalize(s, amplitude);
  return s;
}

SimState profile_data(const FourierGrid& g, const FluidParams& params, const std::optional<SpectralProfile>& up,
                      const std::optional<SpectralProfile>& tp, double amplitude) {
  if (up && up->angular() != AngularStructure::solenoidal_axial)
    throw ValidationError("velocity profile needs a divergence-free vector pattern");
  if (tp && !is_tensor(tp->angular())) throw ValidationError("stress profile needs a tensor pattern");
  SimState s(g, params);
  for (std::size_t m = 0; m < g.mode_count(); ++m) {
    if (!g.retained(m)) continue;
    const double k = std::sqrt(g.wavenumber_sq(m));
    if (k == 0.0) continue;
    const auto& kv = g.wavevector(m);
    const std::array<double, 3> n{kv[0] / k, kv[1] / k, kv[2] / k};
    if (up) {
      auto p = angular_pattern(up->angular(), n);
      const double f = up->radial(k);
      for (int c = 0; c < 3; ++c) s.u.at(c, m) = f * p[c];
    }
    if (tp) {
      auto p = angular_pattern(tp->angular(), n);
      const double f = tp->radial(k);
      for (int c = 0; c < 6; ++c) s.tau.at(c, m) = f * p[c];
    }
  }
  if (amplitude > 0.0) normalize(s, amplitude);
  return s;
}

}  // namespace oldb
