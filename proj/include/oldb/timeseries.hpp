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

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace oldb {

/// Named columns sampled at strictly increasing times.
class TimeSeries {
 public:
  TimeSeries() = default;
  explicit TimeSeries(std::vector<std::string> columns);

  const std::vector<std::string>& columns() const noexcept { return names_; }
  std::span<const double> times() const noexcept { return times_; }
  std::size_t size() const noexcept { return times_.size(); }
  bool empty() const noexcept { return times_.empty(); }

  bool has(const std::string& column) const noexcept;
  std::span<const double> column(const std::string& name) const;

  /// Appends one row; values follow columns() order. Time must exceed the last time.
  void append(double t, std::span<const double> values);
  void append(double t, std::initializer_list<double> values) { append(t, std::span(values.begin(), values.size())); }

  /// Rows with t in [lo, hi].
  TimeSeries window(double lo, double hi) const;
  /// Adds a derived column computed row by row.
  void add_column(const std::string& name, std::vector<double> values);

 private:
  std::size_t index_of(const std::string& name) const;

  std::vector<std::string> names_;
  std::vector<double> times_;
  std::vector<std::vector<double>> data_;  // per column
};

}  // namespace oldb
