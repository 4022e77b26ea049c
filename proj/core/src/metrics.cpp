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

#include "hps/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace hps {
namespace {

template <class A, class B>
void require_same_shape(const Grid<A>& a, const Grid<B>& b, const char* what) {
  if (a.empty() || b.empty()) throw_invalid(std::string(what) + ": empty input");
  if (!a.same_shape(b)) {
    throw_invalid(std::string(what) + ": dimension mismatch " + std::to_string(a.nx()) + "x" +
                  std::to_string(a.ny()) + " vs " + std::to_string(b.nx()) + "x" +
                  std::to_string(b.ny()));
  }
}

}  // namespace

double total_se_phase_sensitive(const ComplexField& target, const ComplexField& replay) {
  require_same_shape(target, replay, "phase-sensitive error");
  double sum = 0.0;
  for (std::size_t i = 0; i < target.size(); ++i) sum += std::norm(target[i] - replay[i]);
  return sum;
}

double total_se_phase_insensitive(const ComplexField& target, const ComplexField& replay) {
  require_same_shape(target, replay, "phase-insensitive error");
  double sum = 0.0;
  for (std::size_t i = 0; i < target.size(); ++i) {
    const double d = std::abs(target[i]) - std::abs(replay[i]);
    sum += d * d;
  }
  return sum;
}

double total_se(const ComplexField& target, const ComplexField& replay, bool phase_sensitive) {
  return phase_sensitive ? total_se_phase_sensitive(target, replay)
                         : total_se_phase_insensitive(target, replay);
}

double mse_phase_sensitive(const ComplexField& target, const ComplexField& replay) {
  return total_se_phase_sensitive(target, replay) / static_cast<double>(target.size());
}

double mse_phase_insensitive(const ComplexField& target, const ComplexField& replay) {
  return total_se_phase_insensitive(target, replay) / static_cast<double>(target.size());
}

double ssim(const RealGrid& a, const RealGrid& b, double dynamic_range) {
  require_same_shape(a, b, "ssim");
  if (!(dynamic_range > 0.0)) throw_invalid("ssim: dynamic range must be positive");
  const double c1 = (0.01 * dynamic_range) * (0.01 * dynamic_range);
  const double c2 = (0.03 * dynamic_range) * (0.03 * dynamic_range);
  const std::size_t wx = std::min(kSsimWindow, a.nx());
  const std::size_t wy = std::min(kSsimWindow, a.ny());
  const double inv_n = 1.0 / static_cast<double>(wx * wy);

  double total = 0.0;
  std::size_t windows = 0;
  for (std::size_t y0 = 0; y0 + wy <= a.ny(); ++y0) {
    for (std::size_t x0 = 0; x0 + wx <= a.nx(); ++x0) {
      double sa = 0.0, sb = 0.0;
      for (std::size_t y = y0; y < y0 + wy; ++y) {
        for (std::size_t x = x0; x < x0 + wx; ++x) {
          sa += a(x, y);
          sb += b(x, y);
        }
      }
      const double ma = sa * inv_n;
      const double mb = sb * inv_n;
      double vaa = 0.0, vbb = 0.0, vab = 0.0;
      for (std::size_t y = y0; y < y0 + wy; ++y) {
        for (std::size_t x = x0; x < x0 + wx; ++x) {
          const double da = a(x, y) - ma;
          const double db = b(x, y) - mb;
          vaa += da * da;
          vbb += db * db;
          vab += da * db;
        }
      }
      vaa *= inv_n;
      vbb *= inv_n;
      vab *= inv_n;
      total += ((2.0 * ma * mb + c1) * (2.0 * vab + c2)) /
               ((ma * ma + mb * mb + c1) * (vaa + vbb + c2));
      ++windows;
    }
  }
  return total / static_cast<double>(windows);
}

RealGrid display_image(const ComplexField& field, const ComplexField& target,
                       bool phase_sensitive) {
  require_same_shape(field, target, "display_image");
  double peak = 0.0;
  for (const Complex& t : target.values()) peak = std::max(peak, std::abs(t));
  if (!phase_sensitive) peak *= peak;
  if (peak <= 0.0) peak = 1.0;
  RealGrid out(field.nx(), field.ny());
  for (std::size_t i = 0; i < field.size(); ++i) {
    out[i] = (phase_sensitive ? std::abs(field[i]) : std::norm(field[i])) / peak;
  }
  return out;
}

ErrorReport error_report(const ComplexField& target, const ComplexField& replay,
                         bool phase_sensitive) {
  ErrorReport r;
  r.mse_ps = mse_phase_sensitive(target, replay);
  r.mse_pi = mse_phase_insensitive(target, replay);
  r.total_se = total_se(target, replay, phase_sensitive);
  r.ssim = ssim(display_image(replay, target, phase_sensitive),
                display_image(target, target, phase_sensitive), 1.0);
  return r;
}

}  // namespace hps
