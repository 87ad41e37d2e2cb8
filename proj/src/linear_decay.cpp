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

#include "oldb/linear_decay.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "oldb/error.hpp"
#include "oldb/linear_propagator.hpp"
#include "oldb/quadrature.hpp"

namespace oldb {

namespace {

enum Q { kU, kUh1, kUh2, kTau, kTauh1, kTauh2, kDef, kEps, kCross, kCount };

using Optional = std::optional<SpectralProfile>;

struct Setup {
  int dim = 3;
  const SphereRule* rule = nullptr;
  std::vector<std::array<double, 3>> u_pattern;
  std::vector<std::array<double, 6>> tau_pattern;
  std::vector<double> breakpoints;
};

Setup prepare(const Optional& up, const Optional& tp, double omega) {
  if (!(omega > 0.0 && omega < 1.0)) throw ValidationError("omega must lie in (0, 1)");
  Setup s;
  if (up && tp && up->dimension() != tp->dimension())
    throw ValidationError("velocity and stress profiles must share the dimension");
  if (up) s.dim = up->dimension();
  else if (tp) s.dim = tp->dimension();
  if (s.dim != 2 && s.dim != 3) throw ValidationError("linear curves support d = 2 or 3");
  if (up && up->angular() != AngularStructure::solenoidal_axial)
    throw ValidationError("velocity profile needs a divergence-free vector pattern");
  if (tp && !is_tensor(tp->angular())) throw ValidationError("stress profile needs a tensor pattern");
  s.rule = s.dim == 3 ? &SphereRule::compact() : &SphereRule::circle();
  for (const auto& n : s.rule->directions) {
    std::array<double, 3> u{};
    std::array<double, 6> t{};
    if (up) {
      auto p = angular_pattern(up->angular(), n);
      u = {p[0], p[1], p[2]};
    }
    if (tp) t = angular_pattern(tp->angular(), n);
    s.u_pattern.push_back(u);
    s.tau_pattern.push_back(t);
  }
  for (const Optional* p : {&up, &tp})
    if (*p) s.breakpoints.insert(s.breakpoints.end(), (*p)->breakpoints().begin(), (*p)->breakpoints().end());
  return s;
}

double sym_norm_sq(const std::array<cplx, 6>& a) {
  double r = 0.0;
  for (int q = 0; q < 6; ++q) r += (q < 3 ? 1.0 : 2.0) * std::norm(a[q]);
  return r;
}

// values[q][t][node] of the integrands (angular mean already taken)
std::vector<std::vector<std::vector<double>>> integrands(const Setup& s, const Optional& up, const Optional& tp,
                                                         double omega, std::span<const double> times,
                                                         std::span<const double> nodes, double cutoff) {
  const auto coeffs = LinearCoefficients::unit(omega);
  std::vector<std::vector<std::vector<double>>> out(
      kCount, std::vector<std::vector<double>>(times.size(), std::vector<double>(nodes.size(), 0.0)));
  const cplx I(0.0, 1.0);
  static constexpr int si[6] = {0, 1, 2, 0, 0, 1};
  static constexpr int sj[6] = {0, 1, 2, 1, 2, 2};
  for (std::size_t r = 0; r < nodes.size(); ++r) {
    const double x = nodes[r];
    if (x > cutoff) continue;
    const double fu = up ? up->radial(x) : 0.0;
    const double ft = tp ? tp->radial(x) : 0.0;
    if (fu == 0.0 && ft == 0.0) continue;
    const double x2 = x * x;
    for (std::size_t it = 0; it < times.size(); ++it) {
      const KernelTriple k = kernel_triple(x, times[it], coeffs);
      const double relax = std::exp(-times[it]);
      double acc[kCount] = {};
      for (std::size_t a = 0; a < s.rule->directions.size(); ++a) {
        const auto& n = s.rule->directions[a];
        ModeState m0;
        for (int i = 0; i < 3; ++i) m0.u[i] = fu * s.u_pattern[a][i];
        for (int q = 0; q < 6; ++q) m0.tau[q] = ft * s.tau_pattern[a][q];
        const std::array<double, 3> xi{x * n[0], x * n[1], x * n[2]};
        const ModeState m = propagate_mode(m0, xi, k, relax, coeffs);
        double u2 = std::norm(m.u[0]) + std::norm(m.u[1]) + std::norm(m.u[2]);
        double t2 = sym_norm_sq(m.tau);
        std::array<cplx, 6> d2, eps;  // 2 omega D(u)
        double cross = 0.0;
        for (int q = 0; q < 6; ++q) {
          d2[q] = omega * I * (xi[si[q]] * m.u[sj[q]] + xi[sj[q]] * m.u[si[q]]);
          eps[q] = m.tau[q] - d2[q];
          cross += (q < 3 ? 1.0 : 2.0) * std::real(std::conj(m.tau[q]) * d2[q]);
        }
        const double w = s.rule->weights[a];
        acc[kU] += w * u2;
        acc[kTau] += w * t2;
        acc[kDef] += w * sym_norm_sq(d2) / (4.0 * omega * omega);
        acc[kEps] += w * sym_norm_sq(eps);
        acc[kCross] += w * cross;
      }
      acc[kUh1] = x2 * acc[kU];
      acc[kUh2] = x2 * x2 * acc[kU];
      acc[kTauh1] = x2 * acc[kTau];
      acc[kTauh2] = x2 * x2 * acc[kTau];
      for (int q = 0; q < kCount; ++q) out[q][it][r] = acc[q];
    }
  }
  return out;
}

// integrated quantities [t][q]
std::vector<std::array<double, kCount>> evaluate(const Setup& s, const Optional& up, const Optional& tp, double omega,
                                                 std::span<const double> times, const RadialQuadrature& quad,
                                                 double cutoff) {
  auto vals = integrands(s, up, tp, omega, times, quad.nodes(), cutoff);
  std::vector<std::array<double, kCount>> out(times.size());
  for (std::size_t it = 0; it < times.size(); ++it)
    for (int q = 0; q < kCount; ++q) {
      // the cross term can change sign; integrate without the power-law tail
      if (q == kCross) {
        double acc = 0.0;
        for (std::size_t r = 0; r < quad.nodes().size(); ++r) acc += quad.weights()[r] * vals[q][it][r];
        out[it][q] = acc;
      } else {
        out[it][q] = quad.integrate(vals[q][it]);
      }
    }
  return out;
}

double energy_of(const std::array<double, kCount>& v, double omega) { return omega * v[kU] + 0.5 * v[kTau]; }

int converged_nodes(const Setup& s, const Optional& up, const Optional& tp, double omega,
                    std::span<const double> times, const LinearCurveOptions& o, double r_max, double cutoff) {
  if (!o.refine || times.empty()) return o.nodes;
  std::vector<double> probe{times.front()};
  if (times.size() > 1) probe.push_back(times.back());
  int n = o.nodes;
  auto coarse = evaluate(s, up, tp, omega, probe, RadialQuadrature(s.dim, o.r_min, r_max, n, s.breakpoints), cutoff);
  while (true) {
    if (2 * n > o.max_nodes) throw RuntimeAbort("radial quadrature did not converge within the node cap");
    auto fine =
        evaluate(s, up, tp, omega, probe, RadialQuadrature(s.dim, o.r_min, r_max, 2 * n, s.breakpoints), cutoff);
    bool ok = true;
    for (std::size_t i = 0; i < probe.size(); ++i) {
      double a = energy_of(coarse[i], omega), b = energy_of(fine[i], omega);
      if (std::abs(a - b) > o.tolerance * std::max(std::abs(b), 1e-300)) ok = false;
    }
    if (ok) return n;
    n *= 2;
    coarse = std::move(fine);
  }
}

void check_times(std::span<const double> times) {
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] >= 0.0)) throw ValidationError("times must be non-negative");
    if (i > 0 && !(times[i] > times[i - 1])) throw ValidationError("times must increase strictly");
  }
}

}  // namespace

TimeSeries linear_energy_curve(const Optional& up, const Optional& tp, double omega, std::span<const double> times,
                               const LinearCurveOptions& o) {
  check_times(times);
  Setup s = prepare(up, tp, omega);
  TimeSeries series({"energy", "u_l2sq", "u_h1sq", "u_h2sq", "tau_l2sq", "tau_h1sq", "tau_h2sq", "def_l2sq",
                     "eps_l2sq", "align_cos"});
  const double inf = std::numeric_limits<double>::infinity();
  int n = converged_nodes(s, up, tp, omega, times, o, o.r_max, inf);
  auto v = evaluate(s, up, tp, omega, times, RadialQuadrature(s.dim, o.r_min, o.r_max, n, s.breakpoints), inf);
  for (std::size_t it = 0; it < times.size(); ++it) {
    const auto& q = v[it];
    double norm_d2 = 2.0 * omega * std::sqrt(q[kDef]);
    double denom = std::sqrt(q[kTau]) * norm_d2;
    double cosine = denom > 0.0 ? q[kCross] / denom : 0.0;
    series.append(times[it], {energy_of(q, omega), q[kU], q[kUh1], q[kUh2], q[kTau], q[kTauh1], q[kTauh2], q[kDef],
                              q[kEps], cosine});
  }
  return series;
}

double energy_identity_residual(const Optional& up, const Optional& tp, double omega, double t, double dt,
                                const LinearCurveOptions& o) {
  if (!(dt > 0.0)) throw ValidationError("dt must be positive");
  if (!(t >= 0.0)) throw ValidationError("t must be non-negative");
  const bool central = t >= dt;
  std::vector<double> times = central ? std::vector<double>{t - dt, t, t + dt}
                                      : std::vector<double>{t, t + dt, t + 2.0 * dt};
  auto series = linear_energy_curve(up, tp, omega, times, o);
  auto e = series.column("energy");
  auto tau = series.column("tau_l2sq");
  auto gu = series.column("u_h1sq");
  double deriv = central ? (e[2] - e[0]) / (2.0 * dt) : (-3.0 * e[0] + 4.0 * e[1] - e[2]) / (2.0 * dt);
  int at = central ? 1 : 0;
  double diss = tau[at] + 2.0 * omega * (1.0 - omega) * gu[at];
  if (diss == 0.0) return deriv == 0.0 ? 0.0 : std::abs(deriv);
  return std::abs(deriv + diss) / diss;
}

double linear_ball_energy(const Optional& up, const Optional& tp, double omega, double t, double radius,
                          const LinearCurveOptions& o) {
  if (!(radius > 0.0)) throw ValidationError("radius must be positive");
  if (!(t >= 0.0)) throw ValidationError("t must be non-negative");
  Setup s = prepare(up, tp, omega);
  double r_min = std::min(o.r_min, 1e-3 * radius);
  std::vector<double> bps;
  for (double b : s.breakpoints)
    if (b > r_min && b < radius) bps.push_back(b);
  s.breakpoints = bps;
  const double times[1] = {t};
  LinearCurveOptions local = o;
  local.r_min = r_min;
  int n = converged_nodes(s, up, tp, omega, times, local, radius, radius);
  auto v = evaluate(s, up, tp, omega, times, RadialQuadrature(s.dim, r_min, radius, n, s.breakpoints), radius);
  return v[0][kU];
}

}  // namespace oldb
