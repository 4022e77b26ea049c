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

#pragma once

#include "hps/field.hpp"

namespace hps {

// Sums are unnormalized; divide by nx*ny for the mean squared error.
double total_se_phase_sensitive(const ComplexField& target, const ComplexField& replay);
double total_se_phase_insensitive(const ComplexField& target, const ComplexField& replay);
double total_se(const ComplexField& target, const ComplexField& replay, bool phase_sensitive);

/// (1 / (nx ny)) sum |T - R|^2
double mse_phase_sensitive(const ComplexField& target, const ComplexField& replay);

/// (1 / (nx ny)) sum (|T| - |R|)^2
double mse_phase_insensitive(const ComplexField& target, const ComplexField& replay);

/// Mean SSIM over all 8x8 windows (smaller images use a single window of the
/// full extent). Means and variances are population statistics over the
/// window; C1 = (0.01 L)^2 and C2 = (0.03 L)^2 with L the dynamic range.
double ssim(const RealGrid& a, const RealGrid& b, double dynamic_range);

inline constexpr std::size_t kSsimWindow = 8;

struct ErrorReport {
  double mse_ps = 0.0;
  double mse_pi = 0.0;
  double total_se = 0.0;  // for the sensitivity the report was made for
  double ssim = 0.0;
};

/// Display images used for SSIM reporting. Phase-sensitive: magnitudes
/// divided by the target peak magnitude. Phase-insensitive: intensities
/// divided by the target peak intensity.
RealGrid display_image(const ComplexField& field, const ComplexField& target,
                       bool phase_sensitive);

ErrorReport error_report(const ComplexField& target, const ComplexField& replay,
                         bool phase_sensitive);

}  // namespace hps
