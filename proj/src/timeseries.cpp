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

#include "oldb/timeseries.hpp"

#include <algorithm>

#include "oldb/error.hpp"

namespace oldb {

TimeSeries::TimeSeries(std::vector<std::string> columns) : names_(std::move(columns)), data_(names_.size()) {
  for (std::size_t i = 0; i < names_.size(); ++i)
    for (std::size_t j = i + 1; j < names_.size(); ++j)
      if (names_[i] == names_[j]) throw ValidationError("duplicate column " + names_[i]);
}

bool TimeSeries::has(const std::string& column) const noexcept {
  return std::find(names_.begin(), names_.end(), column) != names_.end();
}

std::size_t TimeSeries::index_of(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw ValidationError("unknown column " + name);
  return static_cast<std::size_t>(it - names_.begin());
}

std::span<const double> TimeSeries::column(const std::string& name) const {
  if (name == "t") return times_;
  return data_[index_of(name)];
}

void TimeSeries::append(double t, std::span<const double> values) {
  if (values.size() != names_.size()) throw ValidationError("row width does not match columns");
  if (!times_.empty() && !(t > times_.back())) throw ValidationError("times must increase strictly");
  times_.push_back(t);
  for (std::size_t c = 0; c < values.size(); ++c) data_[c].push_back(values[c]);
}

TimeSeries TimeSeries::window(double lo, double hi) const {
  TimeSeries out(names_);
  std::vector<double> row(names_.size());
  for (std::size_t i = 0; i < times_.size(); ++i) {
    if (times_[i] < lo || times_[i] > hi) continue;
    for (std::size_t c = 0; c < names_.size(); ++c) row[c] = data_[c][i];
    out.append(times_[i], row);
  }
  return out;
}

void TimeSeries::add_column(const std::string& name, std::vector<double> values) {
  if (has(name)) throw ValidationError("duplicate column " + name);
  if (values.size() != times_.size()) throw ValidationError("column length does not match series");
  names_.push_back(name);
  data_.push_back(std::move(values));
}

}  // namespace oldb
