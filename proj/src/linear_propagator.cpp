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

#include "oldb/linear_propagator.hpp"

#include <algorithm>
#include <cmath>

#include "oldb/error.hpp"

namespace oldb {

namespace {

void check_omega(double omega) {
  if (!(omega > 0.0 && omega < 1.0)) throw ValidationError("omega must lie in (0, 1)");
}

void check_coeffs(const LinearCoefficients& c) {
  if (!(c.nu > 0.0 && c.beta > 0.0 && c.gamma > 0.0 && c.eta > 0.0))
    throw ValidationError("linear coefficients must be positive");
}

// sinh(z) / z
cplx sinhc(cplx z) {
  if (std::abs(z) < 1e-4) {
    cplx z2 = z * z;
    return 1.0 + z2 / 6.0 * (1.0 + z2 / 20.0);
  }
  return std::sinh(z) / z;
}

}  // namespace

EigenPair eigenvalues(double xi_mag, const LinearCoefficients& c) {
  check_coeffs(c);
  if (!(xi_mag >= 0.0)) throw ValidationError("|xi| must be non-negative");
  double s2 = xi_mag * xi_mag;
  double b = c.nu * s2 + c.gamma;
  double q = s2 * (c.nu * c.gamma + c.beta * c.eta);
  double disc = b * b - 4.0 * q;
  if (disc >= 0.0) {
    double far = -0.5 * (b + std::sqrt(disc));
    return {cplx(q / far, 0.0), cplx(far, 0.0)};
  }
  double im = 0.5 * std::sqrt(-disc);
  return {cplx(-0.5 * b, im), cplx(-0.5 * b, -im)};
}

EigenPair eigenvalues(double xi_mag, double omega) {
  check_omega(omega);
  return eigenvalues(xi_mag, LinearCoefficients::unit(omega));
}

KernelTriple kernel_triple(double xi_mag, double t, const LinearCoefficients& c) {
  if (!(t >= 0.0)) throw ValidationError("t must be non-negative");
  auto [lp, lm] = eigenvalues(xi_mag, c);
  double m11 = -c.nu * xi_mag * xi_mag;
  double m22 = -c.gamma;
  cplx mu = 0.5 * (lp + lm);
  cplx delta = 0.5 * (lp - lm);
  KernelTriple k;
  if (std::abs(lp - lm) < kConfluentWindow * std::max(1.0, std::abs(lp))) {
    cplx e = std::exp(mu * t);
    k.a_val = t * e;
    k.b_val = (1.0 + (m11 - mu) * t) * e;
    k.c_val = -(1.0 + (m22 - mu) * t) * e;
  } else if (std::abs(delta * t) < 0.5) {
    cplx e = std::exp(mu * t);
    cplx sh = t * sinhc(delta * t);
    cplx ch = std::cosh(delta * t);
    k.a_val = e * sh;
    k.b_val = e * (ch + (m11 - mu) * sh);
    k.c_val = -e * (ch + (m22 - mu) * sh);
  } else {
    cplx ep = std::exp(lp * t);
    cplx em = std::exp(lm * t);
    cplx d = lp - lm;
    k.a_val = (ep - em) / d;
    k.b_val = ((m11 - lm) * ep - (m11 - lp) * em) / d;
    k.c_val = -((m22 - lm) * ep - (m22 - lp) * em) / d;
  }
  return k;
}

KernelTriple kernel_triple(double xi_mag, double t, double omega) {
  check_omega(omega);
  return kernel_triple(xi_mag, t, LinearCoefficients::unit(omega));
}

std::array<double, 2> degenerate_wavenumbers(double omega) {
  check_omega(omega);
  double r = std::sqrt(omega);
  return {(1.0 - r) / (1.0 - omega), (1.0 + r) / (1.0 - omega)};
}

ModeState propagate_mode(const ModeState& init, const std::array<double, 3>& xi, const KernelTriple& k,
                         double relax, const LinearCoefficients& c) {
  static constexpr int si[6] = {0, 1, 2, 0, 0, 1};
  static constexpr int sj[6] = {0, 1, 2, 1, 2, 2};
  ModeState out;
  double s = std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
  if (s == 0.0) {
    out.u = init.u;
    for (int q = 0; q < 6; ++q) out.tau[q] = relax * init.tau[q];
    return out;
  }
  const std::array<double, 3> n{xi[0] / s, xi[1] / s, xi[2] / s};
  auto tau0 = [&](int i, int j) {
    if (i == j) return init.tau[i];
    if (i > j) std::swap(i, j);
    return init.tau[i == 0 ? (j == 1 ? 3 : 4) : 5];
  };
  // w0 = P(tau0 n)
  std::array<cplx, 3> tn{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) tn[i] += tau0(i, j) * n[j];
  cplx ntn = n[0] * tn[0] + n[1] * tn[1] + n[2] * tn[2];
  std::array<cplx, 3> w0;
  for (int i = 0; i < 3; ++i) w0[i] = tn[i] - ntn * n[i];

  const auto& pu = init.u;
  const cplx I(0.0, 1.0);
  std::array<cplx, 3> v;
  for (int i = 0; i < 3; ++i) {
    out.u[i] = k.b_val * pu[i] + c.beta * k.a_val * I * s * w0[i];
    v[i] = c.eta * I * s * k.a_val * pu[i] - (k.c_val + relax) * w0[i];
  }
  for (int q = 0; q < 6; ++q) {
    int i = si[q], j = sj[q];
    out.tau[q] = relax * init.tau[q] + n[i] * v[j] + v[i] * n[j];
  }
  return out;
}


ModeState propagate_mode(const ModeState& init, const std::array<double, 3>& xi, double t,
                         const LinearCoefficients& c) {
  double s = std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
  return propagate_mode(init, xi, kernel_triple(s, t, c), std::exp(-c.gamma * t), c);
}

ModeState propagate_mode(const ModeState& init, const std::array<double, 3>& xi, double t, double omega) {
  check_omega(omega);
  return propagate_mode(init, xi, t, LinearCoefficients::unit(omega));
}

BoundConstants bound_constants(double omega, double radius) {
  check_omega(omega);
  if (!(radius > 0.0)) throw ValidationError("radius must be positive");
  double r = std::sqrt(omega);
  double R2 = radius * radius;
  double m = std::min(r, 1.0 - r);
  BoundConstants b;
  b.theta = 0.5 * std::min(0.5 * (1.0 - omega), 1.0 / (1.0 + R2 * (1.0 - omega)));
  b.c1 = std::max(4.0 * std::sqrt(1.0 - omega) / m,
                  8.0 * (1.0 + r) * (1.0 + r) * std::max(2.0 / (1.0 - omega), 1.0 + R2 * (1.0 - omega)));
  b.c2 = 2.0 * std::max(1.0 + (1.0 - omega) * R2, r * radius) * b.c1;
  b.c3 = std::max(b.c2, std::max(3.0 * omega * std::sqrt(1.0 - omega), 2.0 * (1.0 - r) / std::sqrt(1.0 - omega)) / m);
  return b;
}

BoundViolationReport verify_pointwise_bounds(double omega, double radius, std::span<const double> xi_samples,
                                             std::span<const double> t_samples, double slack) {
  BoundViolationReport rep;
  rep.omega = omega;
  rep.radius = radius;
  rep.constants = bound_constants(omega, radius);
  const auto& bc = rep.constants;
  double slow = bc.theta / (4.0 * (1.0 + std::sqrt(omega)) * (1.0 + std::sqrt(omega)));
  auto margin = [](double bound, double value) { return bound > 0.0 ? (bound - value) / bound : -value; };
  for (double s : xi_samples) {
    if (!(s >= 0.0 && s <= radius)) throw ValidationError("|xi| sample outside [0, R]");
    for (double t : t_samples) {
      KernelTriple k = kernel_triple(s, t, omega);
      double fast = std::exp(-bc.theta * s * s * t);
      double ba = bc.c1 * fast, bb = bc.c2 * fast, bcc = bc.c3 * (std::exp(-slow * t) + s * s * fast);
      double va = std::abs(k.a_val), vb = std::abs(k.b_val), vc = std::abs(k.c_val);
      ++rep.samples;
      if (va > ba + slack) ++rep.violations_a;
      if (vb > bb + slack) ++rep.violations_b;
      if (vc > bcc + slack) ++rep.violations_c;
      rep.worst_margin_a = std::min(rep.worst_margin_a, margin(ba, va));
      rep.worst_margin_b = std::min(rep.worst_margin_b, margin(bb, vb));
      rep.worst_margin_c = std::min(rep.worst_margin_c, margin(bcc, vc));
    }
  }
  return rep;
}

BoundViolationReport scan_pointwise_bounds(double omega, double radius, int n_xi, int n_t, double t_max) {
  if (n_xi < 1 || n_t < 2 || !(t_max > 0.0)) throw ValidationError("scan needs n_xi >= 1, n_t >= 2, t_max > 0");
  std::vector<double> xs(n_xi), ts(n_t);
  for (int i = 0; i < n_xi; ++i) xs[i] = radius * (i + 1) / n_xi;
  for (int i = 0; i < n_t; ++i) ts[i] = t_max * i / (n_t - 1);
  return verify_pointwise_bounds(omega, radius, xs, ts);
}

}  // namespace oldb
