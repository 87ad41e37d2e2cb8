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
#include <string>
#include <vector>

#include "oldb/error.hpp"
#include "oldb/params.hpp"
#include "oldb/profile.hpp"
#include "oldb/solver.hpp"

namespace oldb {

enum class RunMode { decay_character, linear, simulate, fit, verify_bounds, plot };

std::string to_string(RunMode m);

/// Initial data for one field: a radial family name and its arguments, e.g.
/// power_gauss(0) or random_band(0, 0.5, 0.01, 42). Empty family means zero.
struct InitialSpec {
  std::string family;
  std::vector<double> args;
  AngularStructure angular = AngularStructure::scalar;

  bool present() const noexcept { return !family.empty(); }
  bool random() const noexcept { return family == "random_band"; }
  /// Continuum profile for the non-random families.
  SpectralProfile profile(int dimension = 3) const;
  /// Known decay character of the non-random families in R^3.
  std::optional<double> decay_character() const;
  std::string text() const;
};

struct RatesConfig {
  double t_lo = 5.0;
  double t_hi = 50.0;
  double tolerance = 0.3;
  /// Decay characters for predictions; estimated from the profiles when absent.
  std::optional<double> r_u;
  std::optional<double> r_tau;
  double max_ratio_slope = -0.7;
  double min_final_cosine = 0.9;
  /// Columns judged by fit; empty means every predicted column present in the series.
  std::vector<std::string> columns;
};

struct LinearTimes {
  double t_min = 100.0;
  double t_max = 1e4;
  int samples = 41;
};

struct RunConfig {
  RunMode mode = RunMode::simulate;
  std::string output = ".";
  FluidParams physics;
  int n = 64;
  double box_scale = 16.0;
  InitialSpec u;
  InitialSpec tau;
  /// Combined H^2 norm for profile data on the lattice; 0 keeps raw samples.
  double amplitude = 0.0;
  SolverConfig solver;
  RatesConfig rates;
  LinearTimes linear;
};

struct ConfigIssue {
  int line = 0;  ///< 1-based, 0 when unknown
  std::string field;
  std::string message;
};

/// Every violation found in one pass over a config text.
class ConfigError : public ValidationError {
 public:
  explicit ConfigError(std::vector<ConfigIssue> issues);
  const std::vector<ConfigIssue>& issues() const noexcept { return issues_; }

 private:
  std::vector<ConfigIssue> issues_;
};

/// YAML sections: mode, output, physics, grid, initial, solver, rates, linear.
/// Unknown keys, type errors and range violations are all collected and
/// thrown together as a ConfigError.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Parses "family(arg, ...)" or "none".
InitialSpec parse_initial_spec(const std::string& text);

/// Builds box initial data on a grid.
SimState initial_state(const RunConfig& cfg);

}  // namespace oldb
