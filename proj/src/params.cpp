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

#include "oldb/params.hpp"

#include <cmath>
#include <string>

#include "oldb/error.hpp"

namespace oldb {

FluidParams::FluidParams(double omega, double a, double reynolds, double weissenberg)
    : omega_(omega), a_(a), reynolds_(reynolds), weissenberg_(weissenberg) {
  if (!(omega > 0.0 && omega < 1.0))
    throw ValidationError("omega must lie in (0, 1), got " + std::to_string(omega));
  if (!(std::abs(a) <= 1.0)) throw ValidationError("a must lie in [-1, 1], got " + std::to_string(a));
  if (!(reynolds > 0.0)) throw ValidationError("reynolds must be positive");
  if (!(weissenberg > 0.0)) throw ValidationError("weissenberg must be positive");
}

LinearCoefficients LinearCoefficients::from(const FluidParams& p) {
  return {(1.0 - p.omega()) / p.reynolds(), 1.0 / p.reynolds(), 1.0 / p.weissenberg(),
          p.omega() / p.weissenberg()};
}

}  // namespace oldb
