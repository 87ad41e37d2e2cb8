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

#include "oldb/fields.hpp"

namespace oldb {

namespace {

template <class Kind>
double weighted_inner(const SpectralField<Kind>& f, const SpectralField<Kind>& g) {
  const auto& grid = f.grid();
  double sum = 0.0;
  for (int c = 0; c < f.components; ++c) {
    double part = 0.0;
    for (std::size_t m = 0; m < f.modes(); ++m)
      part += grid.multiplicity(m) * std::real(f.at(c, m) * std::conj(g.at(c, m)));
    sum += Kind::weight(c) * part;
  }
  return sum * grid.volume();
}

}  // namespace

double inner(const SpectralTensorField& f, const SpectralTensorField& g) { return weighted_inner(f, g); }
double inner(const SpectralVectorField& f, const SpectralVectorField& g) { return weighted_inner(f, g); }

}  // namespace oldb
