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

#include "hps/slm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace hps {

void SlmSpec::validate() const {
  if (levels < 2) throw_invalid("SLM needs at least 2 levels, got " + std::to_string(levels));
  if (nx == 0 || ny == 0) throw_invalid("SLM dimensions must be positive");
}

Complex level_to_complex(const SlmSpec& spec, int level) {
  if (level < 0 || level >= spec.levels) {
    throw_invalid("level " + std::to_string(level) + " outside [0, " +
                  std::to_string(spec.levels) + ")");
  }
  if (spec.is_phase()) {
    return std::polar(1.0, 2.0 * std::numbers::pi * level / spec.levels);
  }
  return {static_cast<double>(level) / (spec.levels - 1), 0.0};
}

std::vector<Complex> level_table(const SlmSpec& spec) {
  std::vector<Complex> table(static_cast<std::size_t>(spec.levels));
  for (int k = 0; k < spec.levels; ++k) table[static_cast<std::size_t>(k)] = level_to_complex(spec, k);
  return table;
}

int quantize_phase(const SlmSpec& spec, double theta) {
  const double turns = theta / (2.0 * std::numbers::pi);
  double t = (turns - std::floor(turns)) * spec.levels;  // [0, L]
  auto k = static_cast<long long>(std::floor(t + 0.5));
  return static_cast<int>(k % spec.levels);
}

int quantize_amplitude(const SlmSpec& spec, double r) {
  const double clamped = std::clamp(r, 0.0, 1.0);
  const double t = clamped * (spec.levels - 1);
  return std::min(static_cast<int>(std::floor(t + 0.5)), spec.levels - 1);
}

int random_level(const SlmSpec& spec, Rng& rng) {
  return static_cast<int>(rng.below(static_cast<std::uint64_t>(spec.levels)));
}

}  // namespace hps
