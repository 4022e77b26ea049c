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

#include <cstddef>
#include <vector>

#include "hps/field.hpp"
#include "hps/rng.hpp"

namespace hps {

enum class Modulation { Phase, Amplitude };

/// A pixellated SLM with `levels` discrete states per pixel.
///
/// Phase level k is exp(2 pi i k / L); amplitude level k is k / (L - 1).
struct SlmSpec {
  Modulation modulation = Modulation::Phase;
  int levels = 256;
  std::size_t nx = 0;
  std::size_t ny = 0;

  bool is_phase() const noexcept { return modulation == Modulation::Phase; }
  std::size_t pixels() const noexcept { return nx * ny; }
  void validate() const;
};

Complex level_to_complex(const SlmSpec& spec, int level);

/// Complex value of every level, indexed by level.
std::vector<Complex> level_table(const SlmSpec& spec);

/// Nearest phase level under circular distance. Ties go to the higher index.
int quantize_phase(const SlmSpec& spec, double theta);

/// Clamps r to [0, 1] and returns the nearest amplitude level. Ties go to
/// the higher index.
int quantize_amplitude(const SlmSpec& spec, double r);

int random_level(const SlmSpec& spec, Rng& rng);

}  // namespace hps
