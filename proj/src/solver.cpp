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

#include "oldb/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "oldb/error.hpp"
#include "oldb/operators.hpp"

namespace oldb {

std::string to_string(Integrator i) { return i == Integrator::etd_heun ? "etd_heun" : "etd_euler"; }

Integrator integrator_from_string(const std::string& name) {
  if (name == "etd_heun") return Integrator::etd_heun;
  if (name == "etd_euler") return Integrator::etd_euler;
  throw ValidationError("unknown integrator " + name);
}

void SolverConfig::validate() const {
  if (!(dt > 0.0)) throw ValidationError("dt must be positive");
  if (!(t_end > 0.0)) throw ValidationError("t_end must be positive");
  if (checkpoint_every < 0) throw ValidationError("checkpoint_every must be >= 0");
  if (diagnostics_every < 1) throw ValidationError("diagnostics_every must be >= 1");
  if (!(cfl_cap > 0.0)) throw ValidationError("cfl_cap must be positive");
}

namespace {

struct Sup {
  double u = 0.0;
  double grad = 0.0;
};

NonlinearTerms rhs_impl(FftPlan& fft, const SimState& s, Sup* sup) {
  const auto& g = s.grid();
  auto pv = PhysicalVelocity::from(fft, s.u);
  if (sup) {
    for (std::size_t p = 0; p < g.point_count(); ++p) {
      double u2 = pv.u[0][p] * pv.u[0][p] + pv.u[1][p] * pv.u[1][p] + pv.u[2][p] * pv.u[2][p];
      double g2 = 0.0;
      for (int c = 0; c < 9; ++c) g2 += pv.grad[c][p] * pv.grad[c][p];
      sup->u = std::max(sup->u, u2);
      sup->grad = std::max(sup->grad, g2);
    }
    sup->u = std::sqrt(sup->u);
    sup->grad = std::sqrt(sup->grad);
  }
  NonlinearTerms n{leray_project(self_advect(fft, pv)), stress_transport(fft, s.tau, pv, s.params.a())};
  n.du *= -1.0;
  n.dtau *= -1.0;
  return n;
}

double max_retained_wavenumber(const FourierGrid& g) {
  int j = (g.n() - 1) / 3;
  while (3 * j >= g.n()) --j;
  return std::sqrt(3.0) * j / g.box_scale();
}

void require_finite(const SimState& s) {
  for (auto v : s.u.raw())
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw RuntimeAbort("non-finite velocity coefficient");
  for (auto v : s.tau.raw())
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw RuntimeAbort("non-finite stress coefficient");
}

template <class Kind>
void axpy(SpectralField<Kind>& y, double a, const SpectralField<Kind>& x) {
  auto yr = y.raw();
  auto xr = x.raw();
  for (std::size_t i = 0; i < yr.size(); ++i) yr[i] += a * xr[i];
}

}  // namespace

NonlinearTerms nonlinear_rhs(FftPlan& fft, const SimState& state) { return rhs_impl(fft, state, nullptr); }

SpectralTensorField elastic_residual(const SimState& s) {
  auto eps = s.tau;
  axpy(eps, -2.0 * s.params.omega(), deformation(s.u));
  return eps;
}

double cfl_number(FftPlan& fft, const SimState& s, double dt) {
  Sup sup;
  rhs_impl(fft, s, &sup);
  return dt * (sup.u * max_retained_wavenumber(s.grid()) + sup.grad);
}

LinearStep::LinearStep(const FourierGrid& grid, const FluidParams& params, double dt)
    : grid_(grid), coeffs_(LinearCoefficients::from(params)), dt_(dt), relax_(std::exp(-coeffs_.gamma * dt)) {
  if (!(dt >= 0.0)) throw ValidationError("dt must be non-negative");
  kernels_.resize(grid.mode_count());
  for (std::size_t m = 0; m < grid.mode_count(); ++m) {
    auto k = kernel_triple(std::sqrt(grid.wavenumber_sq(m)), dt, coeffs_);
    // exact kernels are real; dropping roundoff imaginary parts keeps f(-k) = conj f(k)
    kernels_[m] = {k.a_val.real(), k.b_val.real(), k.c_val.real()};
  }
}

void LinearStep::apply(SpectralVectorField& u, SpectralTensorField& tau) const {
  if (!(u.grid() == grid_) || !(tau.grid() == grid_)) throw ValidationError("field grid does not match propagator");
  ModeState z;
  for (std::size_t m = 0; m < grid_.mode_count(); ++m) {
    for (int i = 0; i < 3; ++i) z.u[i] = u.at(i, m);
    for (int q = 0; q < 6; ++q) z.tau[q] = tau.at(q, m);
    auto out = propagate_mode(z, grid_.wavevector(m), kernels_[m], relax_, coeffs_);
    for (int i = 0; i < 3; ++i) u.at(i, m) = out.u[i];
    for (int q = 0; q < 6; ++q) tau.at(q, m) = out.tau[q];
  }
}

const std::vector<std::string>& diagnostic_columns() {
  static const std::vector<std::string> cols{"u_l2sq",   "u_h1sq",   "u_h2sq",  "tau_l2sq", "tau_h1sq", "tau_h2sq",
                                             "eps_l2sq", "div_u",    "trace_tau_max", "energy", "align_cos"};
  return cols;
}

std::vector<double> Diagnostics::row() const {
  return {u_l2sq, u_h1sq, u_h2sq, tau_l2sq, tau_h1sq, tau_h2sq, eps_l2sq, div_u, trace_tau_max, energy, align_cos};
}

Diagnostics measure(FftPlan& fft, const SimState& s) {
  Diagnostics d;
  const double w = s.params.omega();
  d.u_l2sq = sobolev_seminorm(s.u, 0);
  d.u_h1sq = sobolev_seminorm(s.u, 1);
  d.u_h2sq = sobolev_seminorm(s.u, 2);
  d.tau_l2sq = sobolev_seminorm(s.tau, 0);
  d.tau_h1sq = sobolev_seminorm(s.tau, 1);
  d.tau_h2sq = sobolev_seminorm(s.tau, 2);
  auto d2 = deformation(s.u);
  d2 *= 2.0 * w;
  d.eps_l2sq = l2_norm_sq(s.tau - d2);
  d.div_u = std::sqrt(l2_norm_sq(divergence(s.u)));
  d.trace_tau_max = max_abs_trace(fft, s.tau);
  d.energy = w * d.u_l2sq + 0.5 * d.tau_l2sq;
  const double denom = std::sqrt(d.tau_l2sq * l2_norm_sq(d2));
  d.align_cos = denom > 0.0 ? inner(s.tau, d2) / denom : 0.0;
  return d;
}

double dissipation_rate(const SimState& s) {
  const double w = s.params.omega();
  return sobolev_seminorm(s.tau, 0) + 2.0 * w * (1.0 - w) * sobolev_seminorm(s.u, 1);
}

Solver::Solver(const FourierGrid& grid, const FluidParams& params, SolverConfig config)
    : grid_(grid), params_(params), config_(config), fft_(grid) {
  config_.validate();
}

const LinearStep& Solver::propagator(double dt) {
  if (!full_) full_ = std::make_unique<LinearStep>(grid_, params_, config_.dt);
  if (dt == config_.dt) return *full_;
  if (!last_ || last_->dt() != dt) last_ = std::make_unique<LinearStep>(grid_, params_, dt);
  return *last_;
}

void Solver::step_with(SimState& s, double dt, const LinearStep& g, NonlinearTerms* n0_out) {
  if (!(s.grid() == grid_)) throw ValidationError("state grid does not match solver");
  if (!config_.nonlinear) {
    g.apply(s.u, s.tau);
    s.time += dt;
    return;
  }
  Sup sup;
  NonlinearTerms n0 = rhs_impl(fft_, s, &sup);
  const double cfl = dt * (sup.u * max_retained_wavenumber(grid_) + sup.grad);
  if (!(cfl <= config_.cfl_cap)) {
    std::ostringstream msg;
    msg << "CFL number " << cfl << " exceeds cap " << config_.cfl_cap << " at t = " << s.time;
    throw RuntimeAbort(msg.str());
  }
  if (config_.integrator == Integrator::etd_euler) {
    axpy(s.u, dt, n0.du);
    axpy(s.tau, dt, n0.dtau);
    g.apply(s.u, s.tau);
  } else {
    SimState pred = s;
    axpy(pred.u, dt, n0.du);
    axpy(pred.tau, dt, n0.dtau);
    g.apply(pred.u, pred.tau);
    pred.time += dt;
    NonlinearTerms n1 = rhs_impl(fft_, pred, nullptr);
    axpy(s.u, 0.5 * dt, n0.du);
    axpy(s.tau, 0.5 * dt, n0.dtau);
    g.apply(s.u, s.tau);
    axpy(s.u, 0.5 * dt, n1.du);
    axpy(s.tau, 0.5 * dt, n1.dtau);
  }
  s.time += dt;
  require_finite(s);
  if (n0_out) *n0_out = std::move(n0);
}

void Solver::step(SimState& s) {
  double dt = std::min(config_.dt, config_.t_end - s.time);
  if (!(dt > 0.0)) dt = config_.dt;
  step_with(s, dt, propagator(dt));
}

RunResult Solver::run(SimState& s, const RunHooks& hooks) {
  RunResult r;
  r.series = TimeSeries(diagnostic_columns());
  if (hooks.warning) {
    double h2 = h2_norm(s);
    if (h2 > 0.1) {
      std::ostringstream msg;
      msg << "initial H2 norm " << h2 << " exceeds the small-data threshold 0.1";
      hooks.warning(msg.str());
    }
  }
  double integral = 0.0;
  auto record = [&] {
    r.series.append(s.time, measure(fft_, s).row());
    r.dissipation.push_back(integral);
  };
  auto track = [&] {
    r.max_div_u = std::max(r.max_div_u, std::sqrt(l2_norm_sq(divergence(s.u))));
    r.max_trace_tau = std::max(r.max_trace_tau, max_abs_trace(fft_, s.tau));
  };
  track();
  record();
  const double eps_t = 1e-12 * std::max(1.0, config_.t_end);
  while (s.time < config_.t_end - eps_t) {
    const double dt = std::min(config_.dt, config_.t_end - s.time);
    SimState before = s;
    NonlinearTerms n0{SpectralVectorField(grid_), SpectralTensorField(grid_)};
    try {
      step_with(s, dt, propagator(dt), &n0);
    } catch (const RuntimeAbort& e) {
      s = std::move(before);
      r.aborted = true;
      r.message = e.what();
      if (hooks.checkpoint) hooks.checkpoint(s);
      if (hooks.failure) hooks.failure(s, r.message);
      if (r.series.times().back() < s.time) record();
      return r;
    }
    ++r.steps;
    // Simpson on the step; the midpoint is the Euler-corrected linear half step
    SimState mid = before;
    if (config_.nonlinear) {
      axpy(mid.u, 0.5 * dt, n0.du);
      axpy(mid.tau, 0.5 * dt, n0.dtau);
    }
    if (!half_ || half_->dt() != 0.5 * dt) half_ = std::make_unique<LinearStep>(grid_, params_, 0.5 * dt);
    half_->apply(mid.u, mid.tau);
    integral += dt / 6.0 * (dissipation_rate(before) + 4.0 * dissipation_rate(mid) + dissipation_rate(s));
    track();
    const bool last = !(s.time < config_.t_end - eps_t);
    if (r.steps % config_.diagnostics_every == 0 || last) record();
    if (config_.checkpoint_every > 0 && hooks.checkpoint && (r.steps % config_.checkpoint_every == 0 || last))
      hooks.checkpoint(s);
  }
  return r;
}

SimState step_etd_heun(const SimState& state, double dt, bool nonlinear) {
  SolverConfig c;
  c.dt = dt;
  c.t_end = state.time + dt;
  c.nonlinear = nonlinear;
  Solver solver(state.grid(), state.params, c);
  SimState out = state;
  solver.step(out);
  return out;
}

SimState step_etd_euler(const SimState& state, double dt, bool nonlinear) {
  SolverConfig c;
  c.dt = dt;
  c.t_end = state.time + dt;
  c.integrator = Integrator::etd_euler;
  c.nonlinear = nonlinear;
  Solver solver(state.grid(), state.params, c);
  SimState out = state;
  solver.step(out);
  return out;
}

SimState propagate_linear(const SimState& state, double t) {
  SimState out = state;
  LinearStep(state.grid(), state.params, t).apply(out.u, out.tau);
  out.time += t;
  return out;
}

double h2_norm(const SimState& s) {
  double sum = 0.0;
  for (int k = 0; k <= 2; ++k) sum += sobolev_seminorm(s.u, k) + sobolev_seminorm(s.tau, k);
  return std::sqrt(sum);
}

}  // namespace oldb
