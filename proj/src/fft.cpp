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

#include "oldb/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstdlib>
#include <mutex>
#include <string>
#include <thread>

#include "oldb/error.hpp"

namespace oldb {

namespace {

// The FFTW planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

void init_threads_once() {
  static std::once_flag flag;
  std::call_once(flag, [] {
    fftw_init_threads();
  });
}

}  // namespace

int configured_threads() {
  const char* env = std::getenv("OLDB_THREADS");
  int requested = 0;
  if (env != nullptr && *env != '\0') {
    try {
      requested = std::stoi(env);
    } catch (const std::exception&) {
      throw ValidationError(std::string("OLDB_THREADS must be an integer, got '") + env + "'");
    }
    if (requested < 0) throw ValidationError("OLDB_THREADS must be >= 0");
  }
  if (requested == 0) requested = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  return requested;
}

struct FftPlan::Impl {
  FourierGrid grid;
  double* real_buf = nullptr;
  fftw_complex* spec_buf = nullptr;
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;

  explicit Impl(const FourierGrid& g) : grid(g) {
    init_threads_once();
    const int n = g.n();
    real_buf = fftw_alloc_real(g.point_count());
    spec_buf = fftw_alloc_complex(g.mode_count());
    const unsigned flags = (n >= 32 ? FFTW_MEASURE : FFTW_ESTIMATE);
    std::lock_guard lock(planner_mutex());
    fftw_plan_with_nthreads(configured_threads());
    forward = fftw_plan_dft_r2c_3d(n, n, n, real_buf, spec_buf, flags);
    backward = fftw_plan_dft_c2r_3d(n, n, n, spec_buf, real_buf, flags);
    if (forward == nullptr || backward == nullptr) throw RuntimeAbort("FFTW planning failed");
  }

  ~Impl() {
    std::lock_guard lock(planner_mutex());
    if (forward != nullptr) fftw_destroy_plan(forward);
    if (backward != nullptr) fftw_destroy_plan(backward);
    fftw_free(real_buf);
    fftw_free(spec_buf);
  }
};

FftPlan::FftPlan(const FourierGrid& grid) : impl_(std::make_unique<Impl>(grid)) {}
FftPlan::~FftPlan() = default;
FftPlan::FftPlan(FftPlan&&) noexcept = default;
FftPlan& FftPlan::operator=(FftPlan&&) noexcept = default;

const FourierGrid& FftPlan::grid() const noexcept { return impl_->grid; }

void FftPlan::to_physical(std::span<const cplx> spectrum, std::span<double> physical) {
  auto& im = *impl_;
  // c2r overwrites its input, so go through the owned buffers.
  std::copy(spectrum.begin(), spectrum.end(), reinterpret_cast<cplx*>(im.spec_buf));
  fftw_execute(im.backward);
  std::copy(im.real_buf, im.real_buf + im.grid.point_count(), physical.begin());
}

void FftPlan::to_spectral(std::span<const double> physical, std::span<cplx> spectrum) {
  auto& im = *impl_;
  std::copy(physical.begin(), physical.end(), im.real_buf);
  fftw_execute(im.forward);
  const double scale = 1.0 / static_cast<double>(im.grid.point_count());
  const auto* src = reinterpret_cast<const cplx*>(im.spec_buf);
  for (std::size_t m = 0; m < im.grid.mode_count(); ++m) spectrum[m] = src[m] * scale;
}

}  // namespace oldb
