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

#include "oldb/linear_propagator.hpp"
#include "oldb/rate_lab.hpp"
#include "oldb/solver.hpp"
#include "oldb/timeseries.hpp"

namespace oldb {

/// %.17g, which round-trips every finite double; nan and inf spelled out.
std::string format_double(double x);

/// CSV with a "t" column followed by the series columns.
std::string timeseries_csv(const TimeSeries& series);
void emit_timeseries(const TimeSeries& series, const std::string& path);
TimeSeries parse_timeseries(const std::string& text);
TimeSeries read_timeseries(const std::string& path);

/// Quoted and escaped JSON string literal.
std::string json_string(const std::string& s);

/// One row of a rate report. verdict is "pass", "fail", "not applicable" or
/// "reported" (no prediction to judge against).
struct ReportRecord {
  std::string quantity;
  std::optional<double> predicted_exponent;
  std::optional<double> fitted_slope;
  std::optional<double> stderr_value;
  double t_lo = 0.0;
  double t_hi = 0.0;
  std::string verdict;
};

/// JSON array of objects with keys in the order quantity, predicted_exponent,
/// fitted_slope, stderr, window, verdict; absent numbers are null.
std::string report_json(const std::vector<ReportRecord>& records);
void emit_report(const std::vector<ReportRecord>& records, const std::string& path);

/// Fits every requested column of a series and judges it against the
/// prediction with the given tolerance. Columns without a prediction are
/// "reported"; columns that cannot be fitted are "fail".
std::vector<ReportRecord> rate_report(const TimeSeries& series, const RatePrediction& prediction,
                                      const std::vector<std::string>& columns, double t_lo, double t_hi,
                                      double tolerance);

std::string bounds_json(const BoundViolationReport& report);

/// Binary checkpoint: "OLDB", u32 version, u32 n, f64 box_scale, omega, a,
/// reynolds, weissenberg, time, then u (3 components) and tau (6 components),
/// each component as (re, im) float64 pairs over modes in row-major order.
/// Everything little-endian.
inline constexpr std::uint32_t kCheckpointVersion = 1;
std::string checkpoint_bytes(const SimState& state);
SimState parse_checkpoint(const std::string& bytes);
void write_checkpoint(const SimState& state, const std::string& path);
SimState read_checkpoint(const std::string& path);

/// Log-log SVG of columns against 1 + t. Dashed guides with the predicted
/// slope are drawn for columns the prediction covers.
std::string render_plot(const TimeSeries& series, const std::vector<std::string>& columns,
                        const std::optional<RatePrediction>& guides = std::nullopt);
void emit_plot(const TimeSeries& series, const std::vector<std::string>& columns, const std::string& path,
               const std::optional<RatePrediction>& guides = std::nullopt);

/// Writes text to path, replacing it; throws ValidationError when unwritable.
void write_file(const std::string& path, const std::string& text);
std::string read_file(const std::string& path);

}  // namespace oldb
