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

#include "oldb/operators.hpp"

#include <algorithm>
#include <cmath>

#include "oldb/error.hpp"

namespace oldb {

namespace {

constexpr cplx I{0.0, 1.0};

void require_same_grid(const FourierGrid& a, const FourierGrid& b) {
  if (!(a == b)) throw ValidationError("fields live on different grids");
}

/// Forward-transform each product, then dealias.
template <class Kind>
SpectralField<Kind> to_spectral_dealiased(FftPlan& fft, const std::vector<PhysicalComponent>& phys) {
  auto out = fft.to_spectral<Kind>(phys);
  apply_dealias(out);
  return out;
}

/// Physical-space gradient of every component of f: out[c][l] = d_l f_c.
template <class Kind>
std::vector<std::array<PhysicalComponent, 3>> physical_gradient(FftPlan& fft, const SpectralField<Kind>& f) {
  const auto& g = f.grid();
  std::vector<std::array<PhysicalComponent, 3>> out(f.components);
  std::vector<cplx> scratch(g.mode_count());
  for (int c = 0; c < f.components; ++c) {
    for (int l = 0; l < 3; ++l) {
      for (std::size_t m = 0; m < g.mode_count(); ++m) scratch[m] = I * g.wavevector(m)[l] * f.at(c, m);
      out[c][l].resize(g.point_count());
      fft.to_physical(scratch, out[c][l]);
    }
  }
  return out;
}

template <class Kind>
SpectralField<Kind> advect_impl(FftPlan& fft, const PhysicalVelocity& u, const SpectralField<Kind>& f) {
  const auto& g = f.grid();
  require_same_grid(g, fft.grid());
  const auto grad = physical_gradient(fft, f);
  std::vector<PhysicalComponent> prod(f.components, PhysicalComponent(g.point_count()));
  for (int c = 0; c < f.components; ++c) {
    auto& out = prod[c];
    for (std::size_t p = 0; p < g.point_count(); ++p)
      out[p] = u.u[0][p] * grad[c][0][p] + u.u[1][p] * grad[c][1][p] + u.u[2][p] * grad[c][2][p];
  }
  return to_spectral_dealiased<Kind>(fft, prod);
}

}  // namespace

SpectralVectorField leray_project(const SpectralVectorField& v) {
  const auto& g = v.grid();
  SpectralVectorField out(g);
  for (std::size_t m = 0; m < g.mode_count(); ++m) {
    const auto& k = g.wavevector(m);
    const double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
    if (k2 == 0.0) {
      for (int c = 0; c < 3; ++c) out.at(c, m) = v.at(c, m);
      continue;
    }
    const cplx kv = k[0] * v.at(0, m) + k[1] * v.at(1, m) + k[2] * v.at(2, m);
    for (int c = 0; c < 3; ++c) out.at(c, m) = v.at(c, m) - k[c] * kv / k2;
  }
  return out;
}

SpectralGradientField gradient(const SpectralVectorField& u) {
  const auto& g = u.grid();
  SpectralGradientField out(g);
  for (std::size_t m = 0; m < g.mode_count(); ++m) {
    const auto& k = g.wavevector(m);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) out.at(3 * i + j, m) = I * k[j] * u.at(i, m);
  }
  return out;
}

SpectralScalarField divergence(const SpectralVectorField& u) {
  const auto& g = u.grid();
  SpectralScalarField out(g);
  for (std::size_t m = 0; m < g.mode_count(); ++m) {
    const auto& k = g.wavevector(m);
    out.at(0, m) = I * (k[0] * u.at(0, m) + k[1] * u.at(1, m) + k[2] * u.at(2, m));
  }
  return out;
}

SpectralTensorField deformation(const SpectralVectorField& u) {
  const auto& g = u.grid();
  SpectralTensorField out(g);
  for (std::size_t m = 0; m < g.mode_count(); ++m) {
    const auto& k = g.wavevector(m);
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j)
        out.at(sym_index(i, j), m) = 0.5 * I * (k[j] * u.at(i, m) + k[i] * u.at(j, m));
  }
  return out;
}

SpectralAntisymField vorticity_tensor(const SpectralVectorField& u) {
  const auto& g = u.grid();
  SpectralAntisymField out(g);
  constexpr int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  for (std::size_t m = 0; m < g.mode_count(); ++m) {
    const auto& k = g.wavevector(m);
    for (int c = 0; c < 3; ++c) {
      const int i = pairs[c][0], j = pairs[c][1];
      out.at(c, m) = 0.5 * I * (k[j] * u.at(i, m) - k[i] * u.at(j, m));
    }
  }
  return out;
}

SpectralVectorField tensor_divergence(const SpectralTensorField& tau) {
  const auto& g = tau.grid();
  SpectralVectorField out(g);
  for (std::size_t m = 0; m < g.mode_count(); ++m) {
    const auto& k = g.wavevector(m);
    for (int j = 0; j < 3; ++j) {
      cplx s = 0.0;
      for (int l = 0; l < 3; ++l) s += k[l] * tau.at(sym_index(l, j), m);
      out.at(j, m) = I * s;
    }
  }
  return out;
}

PhysicalVelocity PhysicalVelocity::from(FftPlan& fft, const SpectralVectorField& u) {
  require_same_grid(u.grid(), fft.grid());
  PhysicalVelocity pv;
  pv.u = fft.to_physical(u);
  const auto& g = u.grid();
  std::vector<cplx> scratch(g.mode_count());
  pv.grad.resize(9);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (std::size_t m = 0; m < g.mode_count(); ++m) scratch[m] = I * g.wavevector(m)[j] * u.at(i, m);
      pv.grad[3 * i + j].resize(g.point_count());
      fft.to_physical(scratch, pv.grad[3 * i + j]);
    }
  }
  return pv;
}

SpectralVectorField advect(FftPlan& fft, const PhysicalVelocity& u, const SpectralVectorField& f) {
  return advect_impl(fft, u, f);
}

SpectralTensorField advect(FftPlan& fft, const PhysicalVelocity& u, const SpectralTensorField& f) {
  return advect_impl(fft, u, f);
}

SpectralVectorField advect(FftPlan& fft, const SpectralVectorField& u, const SpectralVectorField& f) {
  require_same_grid(u.grid(), f.grid());
  PhysicalVelocity pv;
  pv.u = fft.to_physical(u);
  return advect_impl(fft, pv, f);
}

SpectralTensorField advect(FftPlan& fft, const SpectralVectorField& u, const SpectralTensorField& f) {
  require_same_grid(u.grid(), f.grid());
  PhysicalVelocity pv;
  pv.u = fft.to_physical(u);
  return advect_impl(fft, pv, f);
}

namespace {

// tau W - W tau - a (D tau + tau D) at one point
void g_a_point(const std::vector<PhysicalComponent>& t, const PhysicalVelocity& u, std::size_t p, double a,
               double out[6]) {
  double T[3][3], D[3][3], W[3][3];
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      T[i][j] = t[sym_index(i, j)][p];
      const double gij = u.grad[3 * i + j][p];
      const double gji = u.grad[3 * j + i][p];
      D[i][j] = 0.5 * (gij + gji);
      W[i][j] = 0.5 * (gij - gji);
    }
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      double tw = 0.0, wt = 0.0, dt = 0.0, td = 0.0;
      for (int l = 0; l < 3; ++l) {
        tw += T[i][l] * W[l][j];
        wt += W[i][l] * T[l][j];
        dt += D[i][l] * T[l][j];
        td += T[i][l] * D[l][j];
      }
      out[sym_index(i, j)] = tw - wt - a * (dt + td);
    }
  }
}

}  // namespace

SpectralTensorField g_a_term(FftPlan& fft, const SpectralTensorField& tau, const PhysicalVelocity& u,
                             double a) {
  const auto& g = tau.grid();
  require_same_grid(g, fft.grid());
  const auto t = fft.to_physical(tau);
  std::vector<PhysicalComponent> out(6, PhysicalComponent(g.point_count()));
  double v[6];
  for (std::size_t p = 0; p < g.point_count(); ++p) {
    g_a_point(t, u, p, a, v);
    for (int c = 0; c < 6; ++c) out[c][p] = v[c];
  }
  return to_spectral_dealiased<SymTensorKind>(fft, out);
}

SpectralVectorField self_advect(FftPlan& fft, const PhysicalVelocity& u) {
  const auto& g = fft.grid();
  std::vector<PhysicalComponent> out(3, PhysicalComponent(g.point_count()));
  for (int i = 0; i < 3; ++i)
    for (std::size_t p = 0; p < g.point_count(); ++p)
      out[i][p] = u.u[0][p] * u.grad[3 * i][p] + u.u[1][p] * u.grad[3 * i + 1][p] + u.u[2][p] * u.grad[3 * i + 2][p];
  return to_spectral_dealiased<VectorKind>(fft, out);
}

SpectralTensorField stress_transport(FftPlan& fft, const SpectralTensorField& tau, const PhysicalVelocity& u,
                                     double a) {
  const auto& g = tau.grid();
  require_same_grid(g, fft.grid());
  const auto grad = physical_gradient(fft, tau);
  const auto t = fft.to_physical(tau);
  std::vector<PhysicalComponent> out(6, PhysicalComponent(g.point_count()));
  double v[6];
  for (std::size_t p = 0; p < g.point_count(); ++p) {
    g_a_point(t, u, p, a, v);
    for (int c = 0; c < 6; ++c)
      out[c][p] = v[c] + u.u[0][p] * grad[c][0][p] + u.u[1][p] * grad[c][1][p] + u.u[2][p] * grad[c][2][p];
  }
  return to_spectral_dealiased<SymTensorKind>(fft, out);
}

SpectralTensorField g_a_term(FftPlan& fft, const SpectralTensorField& tau, const SpectralVectorField& u,
                             double a) {
  require_same_grid(tau.grid(), u.grid());
  return g_a_term(fft, tau, PhysicalVelocity::from(fft, u), a);
}

template <class Kind>
double sobolev_seminorm(const SpectralField<Kind>& f, int k) {
  if (k < 0 || k > 2) throw ValidationError("sobolev_seminorm order must be 0, 1 or 2");
  const auto& g = f.grid();
  double sum = 0.0;
  for (int c = 0; c < f.components; ++c) {
    double part = 0.0;
    for (std::size_t m = 0; m < g.mode_count(); ++m) {
      const double k2 = g.wavenumber_sq(m);
      const double w = k == 0 ? 1.0 : (k == 1 ? k2 : k2 * k2);
      part += g.multiplicity(m) * w * std::norm(f.at(c, m));
    }
    sum += Kind::weight(c) * part;
  }
  return sum * g.volume();
}

template double sobolev_seminorm(const SpectralField<ScalarKind>&, int);
template double sobolev_seminorm(const SpectralField<VectorKind>&, int);
template double sobolev_seminorm(const SpectralField<SymTensorKind>&, int);
template double sobolev_seminorm(const SpectralField<AntisymTensorKind>&, int);
template double sobolev_seminorm(const SpectralField<FullTensorKind>&, int);

double max_abs_trace(FftPlan& fft, const SpectralTensorField& tau) {
  const auto& g = tau.grid();
  SpectralScalarField tr(g);
  for (std::size_t m = 0; m < g.mode_count(); ++m) tr.at(0, m) = tau.at(0, m) + tau.at(1, m) + tau.at(2, m);
  PhysicalComponent phys(g.point_count());
  fft.to_physical(tr.component(0), phys);
  double worst = 0.0;
  for (double v : phys) worst = std::max(worst, std::abs(v));
  return worst;
}

}  // namespace oldb
