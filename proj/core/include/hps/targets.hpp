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

#include <filesystem>
#include <optional>

#include "hps/field.hpp"
#include "hps/slm.hpp"

namespace hps {

enum class Sensitivity { Sensitive, Insensitive };

/// Where the target image sits in the replay plane.
enum class TargetLayout {
  Full,      // image fills the replay field
  Quadrant,  // image fills the central (nx/2, ny/2) block, zeros elsewhere
};

/// Quadrant for phase-sensitive targets, full field otherwise.
TargetLayout default_layout(Sensitivity sensitivity);

struct TargetField {
  ComplexField field;
  bool phase_sensitive = false;
  double energy = 0.0;  // sum |T|^2
};

/// Greyscale PGM scaled to [0, 1].
RealGrid load_image(const std::filesystem::path& path);

/// Bilinear resampling with pixel-center alignment and edge clamping.
RealGrid resample_bilinear(const RealGrid& image, std::size_t nx, std::size_t ny);

/// Averages each pixel with its point reflection (u, v) -> (-u, -v) mod (nx, ny).
/// The result satisfies the reflection symmetry bit-exactly.
RealGrid enforce_point_symmetry(const RealGrid& image);

/// Point-symmetric counterpart of an image with even dimensions: four
/// half-resolution copies, the bottom pair rotated by 180 degrees, then
/// averaged with the point reflection.
RealGrid symmetrize_point(const RealGrid& image);

/// Resamples `image` (no larger than nx/2 x ny/2) to exactly nx/2 x ny/2 and
/// centers it in an nx x ny zero field.
RealGrid embed_central_quadrant(const RealGrid& image, std::size_t nx, std::size_t ny);

/// Replay-plane energy the target is scaled to: nx*ny for phase SLMs (every
/// pixel unit magnitude), nx*ny/3 for amplitude SLMs (the mean of r^2 for r
/// uniform on [0, 1]).
double energy_budget(const SlmSpec& spec);

/// s * T with s = sqrt(budget / sum |T|^2).
ComplexField scale_energy(const ComplexField& target, double budget);

/// Combines prepared amplitude (and optional phase, in turns) images of the
/// SLM's dimensions into a target and scales it to energy_budget(spec).
/// A phase image on a phase-insensitive target is a ConfigError.
TargetField build_target(const RealGrid& amplitude, const std::optional<RealGrid>& phase,
                         const SlmSpec& spec, Sensitivity sensitivity);

/// Full preparation from source images of any size: resampling, point
/// symmetrization for amplitude SLMs, quadrant embedding, energy scaling.
TargetField prepare_target(const RealGrid& amplitude_source,
                           const std::optional<RealGrid>& phase_source, const SlmSpec& spec,
                           Sensitivity sensitivity, TargetLayout layout);

// Built-in test images for when no image files are supplied. Values in [0, 1].
RealGrid synthetic_amplitude(std::size_t nx, std::size_t ny);
RealGrid synthetic_phase(std::size_t nx, std::size_t ny);

}  // namespace hps
