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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oldb/error.hpp"
#include "oldb/fft.hpp"
#include "oldb/operators.hpp"
#include "oldb/params.hpp"
#include "test_support.hpp"

using namespace oldb;
using oldb::testing::max_abs;
using oldb::testing::max_abs_diff;

namespace {

constexpr cplx I{0.0, 1.0};
constexpr double M = 16.0;

FourierGrid small_grid() { return FourierGrid(16, M); }

}  // namespace

TEST(FourierGrid, LatticeAndWavevectors) {
  FourierGrid g(8, 2.0);
  EXPECT_EQ(g.mode_count(), 8u * 8u * 5u);
  const auto m = g.index_of({-3, 2, 1});
  EXPECT_EQ(g.lattice(m), (std::array<int, 3>{-3, 2, 1}));
  EXPECT_DOUBLE_EQ(g.wavevector(m)[0], -1.5);
  EXPECT_DOUBLE_EQ(g.wavevector(m)[1], 1.0);
  EXPECT_DOUBLE_EQ(g.wavevector(m)[2], 0.5);
  EXPECT_EQ(g.lattice(g.index(4, 0, 0))[0], -4);
}

TEST(FourierGrid, TwoThirdsMask) {
  FourierGrid g(12, 1.0);
  // |j| < 4 retained on each axis.
  EXPECT_TRUE(g.retained(g.index_of({3, -3, 3})));
  EXPECT_FALSE(g.retained(g.index_of({4, 0, 0})));
  EXPECT_FALSE(g.retained(g.index_of({0, -4, 0})));
  EXPECT_FALSE(g.retained(g.index_of({0, 0, 6})));
}

TEST(FourierGrid, RejectsBadSizes) {
  EXPECT_THROW(FourierGrid(7, 1.0), ValidationError);
  EXPECT_THROW(FourierGrid(16, 0.0), ValidationError);
}

TEST(FluidParams, ValidatesRanges) {
  EXPECT_NO_THROW(FluidParams(0.5, 0.0));
  EXPECT_THROW(FluidParams(1.0, 0.0), ValidationError);
  EXPECT_THROW(FluidParams(0.0, 0.0), ValidationError);
  EXPECT_THROW(FluidParams(0.5, 1.5), ValidationError);
  EXPECT_THROW(FluidParams(0.5, 0.0, -1.0), ValidationError);
  EXPECT_THROW(FluidParams(0.5, 0.0, 1.0, 0.0), ValidationError);
}

TEST(Transforms, RoundTrip) {
  FftPlan fft(small_grid());
  auto f = oldb::testing::random_field<SymTensorKind>(fft, 7, 7);
  const auto phys = fft.to_physical(f);
  const auto back = fft.to_spectral<SymTensorKind>(phys);
  EXPECT_LT(max_abs_diff(f, back), 1e-12 * max_abs(f));
  EXPECT_LT(hermitian_defect(back), 1e-13);
}

TEST(LerayProjection, AnnihilatesGradientMode) {
  const auto g = small_grid();
  SpectralVectorField v(g);
  const auto m = g.index_of({1, 2, 3});
  const auto& k = g.wavevector(m);
  for (int c = 0; c < 3; ++c) v.at(c, m) = k[c];
  const auto p = leray_project(v);
  for (int c = 0; c < 3; ++c) EXPECT_LT(std::abs(p.at(c, m)), 1e-15);
}

TEST(LerayProjection, TransverseModeUnchanged) {
  const auto g = small_grid();
  SpectralVectorField v(g);
  const auto m = g.index_of({0, 1, 0});
  v.at(0, m) = 1.0;
  const auto p = leray_project(v);
  EXPECT_EQ(p.at(0, m), cplx(1.0));
  EXPECT_EQ(p.at(1, m), cplx(0.0));
  EXPECT_EQ(p.at(2, m), cplx(0.0));
}

TEST(LerayProjection, IdempotentAndSolenoidal) {
  FftPlan fft(small_grid());
  const auto v = oldb::testing::random_field<VectorKind>(fft, 3);
  const auto p = leray_project(v);
  const auto pp = leray_project(p);
  EXPECT_LT(max_abs_diff(p, pp), 1e-14 * max_abs(p));
  const auto div = divergence(p);
  EXPECT_LT(max_abs(div), 1e-12 * max_abs(p));
  // k = 0 mode passes through.
  for (int c = 0; c < 3; ++c) EXPECT_EQ(p.at(c, 0), v.at(c, 0));
}

TEST(Deformation, SingleShearMode) {
  const auto g = small_grid();
  SpectralVectorField u(g);
  const auto m = g.index_of({0, 1, 0});
  u.at(0, m) = 1.0;
  const auto D = deformation(u);
  EXPECT_NEAR(std::abs(D.at(sym_index(0, 1), m) - I / (2.0 * M)), 0.0, 1e-16);
  for (int c : {0, 1, 2, 4, 5}) EXPECT_EQ(D.at(c, m), cplx(0.0));
  const auto W = vorticity_tensor(u);
  EXPECT_NEAR(std::abs(W.at(0, m) - I / (2.0 * M)), 0.0, 1e-16);  // W12, W21 = -W12
  EXPECT_EQ(W.at(1, m), cplx(0.0));
  EXPECT_EQ(W.at(2, m), cplx(0.0));
}

TEST(Deformation, ZeroAndTraceFree) {
  FftPlan fft(small_grid());
  const auto g = fft.grid();
  EXPECT_EQ(max_abs(deformation(SpectralVectorField(g))), 0.0);
  EXPECT_EQ(max_abs(vorticity_tensor(SpectralVectorField(g))), 0.0);
  const auto u = oldb::testing::random_solenoidal(fft, 11);
  const auto D = deformation(u);
  double worst = 0.0;
  for (std::size_t m = 0; m < g.mode_count(); ++m)
    worst = std::max(worst, std::abs(D.at(0, m) + D.at(1, m) + D.at(2, m)));
  EXPECT_LT(worst, 1e-12 * max_abs(D));
}

TEST(Deformation, SymmetricPlusAntisymmetricIsGradient) {
  FftPlan fft(small_grid());
  const auto g = fft.grid();
  const auto u = oldb::testing::random_field<VectorKind>(fft, 5);
  const auto D = deformation(u);
  const auto W = vorticity_tensor(u);
  const auto G = gradient(u);
  auto w_at = [&](int i, int j, std::size_t m) -> cplx {
    if (i == j) return 0.0;
    const int c = (i + j == 1) ? 0 : (i + j == 2 ? 1 : 2);
    return i < j ? W.at(c, m) : -W.at(c, m);
  };
  double worst = 0.0;
  for (std::size_t m = 0; m < g.mode_count(); ++m)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        worst = std::max(worst, std::abs(D.at(sym_index(i, j), m) + w_at(i, j, m) - G.at(3 * i + j, m)));
  EXPECT_LT(worst, 1e-13);
}

TEST(TensorDivergence, Examples) {
  const auto g = small_grid();
  SpectralTensorField id(g);
  for (int c = 0; c < 3; ++c) id.at(c, 0) = 1.0;
  EXPECT_EQ(max_abs(tensor_divergence(id)), 0.0);

  SpectralTensorField t(g);
  const auto m = g.index_of({0, 1, 0});
  t.at(sym_index(0, 1), m) = 1.0;
  const auto d = tensor_divergence(t);
  EXPECT_NEAR(std::abs(d.at(0, m) - I / M), 0.0, 1e-16);
  EXPECT_EQ(d.at(1, m), cplx(0.0));
}

TEST(TensorDivergence, DivergenceOfDeformationIsHalfLaplacian) {
  FftPlan fft(small_grid());
  const auto g = fft.grid();
  const auto u = oldb::testing::random_solenoidal(fft, 21);
  const auto d = tensor_divergence(deformation(u));
  double worst = 0.0;
  for (std::size_t m = 0; m < g.mode_count(); ++m)
    for (int c = 0; c < 3; ++c)
      worst = std::max(worst, std::abs(d.at(c, m) + 0.5 * g.wavenumber_sq(m) * u.at(c, m)));
  EXPECT_LT(worst, 1e-12);
}

TEST(Advect, TrivialCases) {
  FftPlan fft(small_grid());
  const auto g = fft.grid();
  const auto f = oldb::testing::random_field<VectorKind>(fft, 1);
  EXPECT_LT(max_abs(advect(fft, SpectralVectorField(g), f)), 1e-18);
  SpectralTensorField c(g);
  c.at(0, 0) = 2.0;
  c.at(3, 0) = -1.0;
  const auto u = oldb::testing::random_solenoidal(fft, 2);
  EXPECT_LT(max_abs(advect(fft, u, c)), 1e-15);
}

TEST(Advect, SkewSymmetryForSolenoidalVelocity) {
  FftPlan fft(small_grid());
  const auto u = oldb::testing::random_solenoidal(fft, 31, 5);
  const auto f = oldb::testing::random_field<VectorKind>(fft, 32, 5);
  const auto t = oldb::testing::random_field<SymTensorKind>(fft, 33, 5);
  const double scale_v = std::sqrt(l2_norm_sq(u) * l2_norm_sq(f) * sobolev_seminorm(f, 1));
  EXPECT_LT(std::abs(inner(f, advect(fft, u, f))) / scale_v, 1e-10);
  const double scale_t = std::sqrt(l2_norm_sq(u) * l2_norm_sq(t) * sobolev_seminorm(t, 1));
  EXPECT_LT(std::abs(inner(t, advect(fft, u, t))) / scale_t, 1e-10);
}

TEST(GaTerm, IdentityStressCommutes) {
  FftPlan fft(small_grid());
  const auto g = fft.grid();
  SpectralTensorField id(g);
  for (int c = 0; c < 3; ++c) id.at(c, 0) = 1.0;
  const auto u = oldb::testing::random_solenoidal(fft, 4);
  EXPECT_LT(max_abs(g_a_term(fft, id, u, 0.0)), 1e-15);
}

TEST(GaTerm, CorotationalTraceVanishesPointwise) {
  FftPlan fft(small_grid());
  const auto u = oldb::testing::random_solenoidal(fft, 41);
  const auto t = oldb::testing::random_field<SymTensorKind>(fft, 42);
  const auto ga = g_a_term(fft, t, u, 0.0);
  EXPECT_LT(max_abs_trace(fft, ga), 1e-11);
  EXPECT_GT(max_abs(ga), 1e-6);
}

TEST(GaTerm, ZeroVelocity) {
  FftPlan fft(small_grid());
  const auto t = oldb::testing::random_field<SymTensorKind>(fft, 43);
  for (double a : {-1.0, 0.0, 0.3, 1.0})
    EXPECT_EQ(max_abs(g_a_term(fft, t, SpectralVectorField(fft.grid()), a)), 0.0);
}

TEST(GaTerm, MatchesDirectProductForSlipParameter) {
  // For a = 1 and tau = identity, g_a = -2 D(u).
  FftPlan fft(small_grid());
  const auto g = fft.grid();
  SpectralTensorField id(g);
  for (int c = 0; c < 3; ++c) id.at(c, 0) = 1.0;
  const auto u = oldb::testing::random_solenoidal(fft, 44);
  auto expected = -2.0 * deformation(u);
  apply_dealias(expected);
  EXPECT_LT(max_abs_diff(g_a_term(fft, id, u, 1.0), expected), 1e-14 + 1e-12 * max_abs(expected));
}

TEST(Sobolev, SingleModeRatio) {
  const auto g = small_grid();
  SpectralScalarField f(g);
  const auto m = g.index_of({0, 0, 1});
  f.at(0, m) = 1.0;
  EXPECT_EQ(sobolev_seminorm(SpectralScalarField(g), 0), 0.0);
  EXPECT_NEAR(sobolev_seminorm(f, 0) / sobolev_seminorm(f, 1), M * M, 1e-10 * M * M);
  EXPECT_THROW(sobolev_seminorm(f, 3), ValidationError);
}

TEST(Sobolev, ParsevalMatchesPhysicalQuadrature) {
  FftPlan fft(FourierGrid(32, 1.5));
  const auto g = fft.grid();
  const auto f = oldb::testing::random_field<VectorKind>(fft, 51, 6);
  const double cell = g.volume() / static_cast<double>(g.point_count());
  // k = 0
  {
    const auto phys = fft.to_physical(f);
    double q = 0.0;
    for (const auto& c : phys)
      for (double v : c) q += v * v;
    EXPECT_NEAR(sobolev_seminorm(f, 0) / (q * cell), 1.0, 1e-10);
  }
  // k = 1, k = 2 via physical derivatives
  {
    const auto phys = fft.to_physical(gradient(f));
    double q = 0.0;
    for (const auto& c : phys)
      for (double v : c) q += v * v;
    EXPECT_NEAR(sobolev_seminorm(f, 1) / (q * cell), 1.0, 1e-10);
  }
  {
    SpectralField<FullTensorKind> hess(g);  // Laplacian-free check: sum_ij |d_i d_j f_c|^2 per component c
    double q = 0.0;
    for (int c = 0; c < 3; ++c) {
      for (std::size_t m = 0; m < g.mode_count(); ++m) {
        const auto& k = g.wavevector(m);
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) hess.at(3 * i + j, m) = -k[i] * k[j] * f.at(c, m);
      }
      for (const auto& comp : fft.to_physical(hess))
        for (double v : comp) q += v * v;
    }
    EXPECT_NEAR(sobolev_seminorm(f, 2) / (q * cell), 1.0, 1e-10);
  }
}
