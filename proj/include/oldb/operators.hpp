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

#include <vector>

#include "oldb/fft.hpp"
#include "oldb/fields.hpp"

namespace oldb {

/// Full 3x3 tensor, row-major; gradients store (grad u)_{ij} = d_j u_i.
struct FullTensorKind {
  static constexpr int components = 9;
  static constexpr double weight(int) noexcept { return 1.0; }
};
using SpectralGradientField = SpectralField<FullTensorKind>;

/// Helmholtz-Leray projection (delta_jl - k_j k_l / |k|^2) v_l; k = 0 passes through.
SpectralVectorField leray_project(const SpectralVectorField& v);

SpectralGradientField gradient(const SpectralVectorField& u);
SpectralScalarField divergence(const SpectralVectorField& u);

/// D(u) = (grad u + grad u^T) / 2.
SpectralTensorField deformation(const SpectralVectorField& u);
/// W(u) = (grad u - grad u^T) / 2.
SpectralAntisymField vorticity_tensor(const SpectralVectorField& u);

/// (div tau)_j = d_l tau_lj.
SpectralVectorField tensor_divergence(const SpectralTensorField& tau);

/// Real-space velocity and velocity gradient, shared by the pseudo-spectral products.
struct PhysicalVelocity {
  std::vector<PhysicalComponent> u;     // 3
  std::vector<PhysicalComponent> grad;  // 9, (i, j) -> d_j u_i at 3 * i + j

  static PhysicalVelocity from(FftPlan& fft, const SpectralVectorField& u);
};

/// Dealiased (u . grad) f for a vector or symmetric-tensor field f.
SpectralVectorField advect(FftPlan& fft, const SpectralVectorField& u, const SpectralVectorField& f);
SpectralTensorField advect(FftPlan& fft, const SpectralVectorField& u, const SpectralTensorField& f);
SpectralVectorField advect(FftPlan& fft, const PhysicalVelocity& u, const SpectralVectorField& f);
SpectralTensorField advect(FftPlan& fft, const PhysicalVelocity& u, const SpectralTensorField& f);

/// Dealiased g_a(tau, grad u) = tau W - W tau - a (D tau + tau D).
SpectralTensorField g_a_term(FftPlan& fft, const SpectralTensorField& tau,
                             const SpectralVectorField& u, double a);
SpectralTensorField g_a_term(FftPlan& fft, const SpectralTensorField& tau,
                             const PhysicalVelocity& u, double a);

/// Dealiased (u . grad) u from the physical velocity and its gradient.
SpectralVectorField self_advect(FftPlan& fft, const PhysicalVelocity& u);
/// Dealiased u . grad tau + g_a(tau, grad u) with a single set of forward transforms.
SpectralTensorField stress_transport(FftPlan& fft, const SpectralTensorField& tau, const PhysicalVelocity& u,
                                     double a);

/// Box integral of |grad^k f|^2 for k in 0..2 (Parseval).
template <class Kind>
double sobolev_seminorm(const SpectralField<Kind>& f, int k);

/// max_x |trace tau(x)|.
double max_abs_trace(FftPlan& fft, const SpectralTensorField& tau);

}  // namespace oldb
