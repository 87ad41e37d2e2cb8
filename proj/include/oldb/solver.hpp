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

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "oldb/fft.hpp"
#include "oldb/fields.hpp"
#include "oldb/linear_propagator.hpp"
#include "oldb/params.hpp"
#include "oldb/timeseries.hpp"

namespace oldb {

struct SimState {
  double time = 0.0;
  SpectralVectorField u;
  SpectralTensorField tau;
  FluidParams params;

  SimState(const FourierGrid& g, FluidParams p = {}) : u(g), tau(g), params(p) {}
  SimState(double t, SpectralVectorField u0, SpectralTensorField tau0, FluidParams p)
      : time(t), u(std::move(u0)), tau(std::move(tau0)), params(p) {}

  const FourierGrid& grid() const noexcept { return u.grid(); }
};

enum class Integrator { etd_heun, etd_euler };

std::string to_string(Integrator i);
Integrator integrator_from_string(const std::string& name);

struct SolverConfig {
  double dt = 0.1;
  double t_end = 50.0;
  Integrator integrator = Integrator::etd_heun;
  /// Steps between checkpoint callbacks; 0 disables.
  int checkpoint_every = 0;
  /// Steps between recorded diagnostics rows.
  int diagnostics_every = 5;
  /// Drop N entirely (linear runs).
  bool nonlinear = true;
  double cfl_cap = 0.5;

  void validate() const;
};

struct NonlinearTerms {
  SpectralVectorField du;
  SpectralTensorField dtau;
};

/// -P(u . grad u) and -(u . grad tau + g_a(tau, grad u)), dealiased.
NonlinearTerms nonlinear_rhs(FftPlan& fft, const SimState& state);

/// epsilon = tau - 2 omega D(u).
SpectralTensorField elastic_residual(const SimState& state);

/// dt (max|u| k_max + max|grad u|); steps with a value above the cap abort.
double cfl_number(FftPlan& fft, const SimState& state, double dt);

/// Per-mode exact linear propagator for a fixed step, kernels cached.
class LinearStep {
 public:
  LinearStep(const FourierGrid& grid, const FluidParams& params, double dt);

  double dt() const noexcept { return dt_; }
  void apply(SpectralVectorField& u, SpectralTensorField& tau) const;

 private:
  FourierGrid grid_;
  LinearCoefficients coeffs_;
  double dt_;
  double relax_;
  std::vector<KernelTriple> kernels_;
};

/// Column names of solver diagnostics, in CSV order.
const std::vector<std::string>& diagnostic_columns();

struct Diagnostics {
  double u_l2sq, u_h1sq, u_h2sq;
  double tau_l2sq, tau_h1sq, tau_h2sq;
  double eps_l2sq;
  double div_u;          ///< L2 norm of div u
  double trace_tau_max;  ///< max_x |trace tau|
  double energy;         ///< omega |u|^2 + |tau|^2 / 2
  double align_cos;      ///< <tau, 2 omega D(u)> / (|tau| |2 omega D(u)|), 0 when undefined

  std::vector<double> row() const;
};

Diagnostics measure(FftPlan& fft, const SimState& state);

/// |tau|^2 + 2 omega (1 - omega) |grad u|^2.
double dissipation_rate(const SimState& state);

struct RunHooks {
  std::function<void(const SimState&)> checkpoint;
  std::function<void(const SimState&, const std::string&)> failure;
  std::function<void(const std::string&)> warning;
};

struct RunResult {
  TimeSeries series;
  /// Accumulated dissipation integral at each series row, from the start of this run.
  std::vector<double> dissipation;
  double max_div_u = 0.0;
  double max_trace_tau = 0.0;
  int steps = 0;
  bool aborted = false;
  std::string message;
};

/// Sequential driver; owns its FFT plan and cached propagators.
class Solver {
 public:
  Solver(const FourierGrid& grid, const FluidParams& params, SolverConfig config);

  const SolverConfig& config() const noexcept { return config_; }
  FftPlan& fft() noexcept { return fft_; }

  /// One step of the configured integrator. Throws RuntimeAbort on CFL or NaN.
  void step(SimState& state);
  /// Advances state to config.t_end, recording diagnostics. Aborts are
  /// reported in the result (and through hooks), not thrown.
  RunResult run(SimState& state, const RunHooks& hooks = {});

 private:
  void step_with(SimState& state, double dt, const LinearStep& g, NonlinearTerms* n0_out = nullptr);
  const LinearStep& propagator(double dt);

  FourierGrid grid_;
  FluidParams params_;
  SolverConfig config_;
  FftPlan fft_;
  std::unique_ptr<LinearStep> full_;
  std::unique_ptr<LinearStep> half_;
  std::unique_ptr<LinearStep> last_;
};

/// Single-step helpers (build a plan per call; meant for tests and tools).
SimState step_etd_heun(const SimState& state, double dt, bool nonlinear = true);
SimState step_etd_euler(const SimState& state, double dt, bool nonlinear = true);

/// Exact linear evolution of a state by time t (no nonlinearity).
SimState propagate_linear(const SimState& state, double t);

/// Combined |(u, tau)|_{H^2}: sqrt of the sum of |grad^k u|^2 + |grad^k tau|^2 for k = 0..2.
double h2_norm(const SimState& state);

}  // namespace oldb
