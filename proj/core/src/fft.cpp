// Copyright 2026 The HPS Authors
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

#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

namespace hps::detail {
namespace {

// FFTW planning is not thread-safe; execution with fftw_execute_dft is. Plans
// are created once per (shape, direction) with FFTW_ESTIMATE | FFTW_UNALIGNED
// so the chosen algorithm, and therefore the rounding, does not depend on
// buffer alignment or timing.
class PlanCache {
 public:
  ~PlanCache() {
    std::lock_guard lock(mutex_);
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(std::size_t nx, std::size_t ny, FftDirection dir) {
    std::lock_guard lock(mutex_);
    const auto key = std::make_tuple(nx, ny, dir);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    std::vector<fftw_complex> scratch_in(nx * ny), scratch_out(nx * ny);
    // fftw takes dimensions slowest-first: rows (ny) then columns (nx).
    fftw_plan plan = fftw_plan_dft_2d(
        static_cast<int>(ny), static_cast<int>(nx), scratch_in.data(), scratch_out.data(),
        dir == FftDirection::Forward ? FFTW_FORWARD : FFTW_BACKWARD,
        FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<std::size_t, std::size_t, FftDirection>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

}  // namespace

void fft_2d(const ComplexField& in, ComplexField& out, FftDirection dir) {
  if (!out.same_shape(in)) out = ComplexField(in.nx(), in.ny());
  fftw_plan plan = plan_cache().get(in.nx(), in.ny(), dir);
  // fftw_complex is layout-compatible with std::complex<double>.
  auto* src = reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in.data()));
  auto* dst = reinterpret_cast<fftw_complex*>(out.data());
  fftw_execute_dft(plan, src, dst);
}

}  // namespace hps::detail
