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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "hps/rng.hpp"
#include "hps/slm.hpp"

namespace hps {
namespace {

constexpr double kPi = std::numbers::pi;

SlmSpec phase_slm(int levels) { return {Modulation::Phase, levels, 4, 4}; }
SlmSpec amplitude_slm(int levels) { return {Modulation::Amplitude, levels, 4, 4}; }

TEST(SlmSpec, Validation) {
  EXPECT_THROW(phase_slm(1).validate(), InvalidInput);
  EXPECT_THROW((SlmSpec{Modulation::Phase, 4, 0, 3}.validate()), InvalidInput);
  EXPECT_NO_THROW(amplitude_slm(2).validate());
}

TEST(LevelToComplex, Examples) {
  EXPECT_EQ(level_to_complex(phase_slm(256), 0), Complex(1.0, 0.0));
  const Complex quarter = level_to_complex(phase_slm(4), 1);
  EXPECT_NEAR(quarter.real(), 0.0, 1e-15);
  EXPECT_NEAR(quarter.imag(), 1.0, 1e-15);
  EXPECT_EQ(level_to_complex(amplitude_slm(16), 15), Complex(1.0, 0.0));
  EXPECT_EQ(level_to_complex(amplitude_slm(16), 0), Complex(0.0, 0.0));
}

TEST(LevelToComplex, OutOfRange) {
  EXPECT_THROW(level_to_complex(phase_slm(4), 4), InvalidInput);
  EXPECT_THROW(level_to_complex(phase_slm(4), -1), InvalidInput);
}

TEST(LevelTable, AgreesWithLevelToComplex) {
  const SlmSpec spec = phase_slm(16);
  const std::vector<Complex> table = level_table(spec);
  ASSERT_EQ(table.size(), 16u);
  for (int k = 0; k < 16; ++k) EXPECT_EQ(table[k], level_to_complex(spec, k));
}

TEST(QuantizePhase, Examples) {
  const SlmSpec spec = phase_slm(256);
  EXPECT_EQ(quantize_phase(spec, 0.0), 0);
  EXPECT_EQ(quantize_phase(spec, 2.0 * kPi + 1e-12), 0);
  EXPECT_EQ(quantize_phase(spec, -1e-12), 0);
  EXPECT_EQ(quantize_phase(spec, 2.0 * kPi * 100.4 / 256.0), 100);
  EXPECT_EQ(quantize_phase(spec, 2.0 * kPi * 255.7 / 256.0), 0);
}

TEST(QuantizePhase, TieGoesUp) {
  // Exactly halfway between level 0 and level 1 of a 4-level SLM.
  EXPECT_EQ(quantize_phase(phase_slm(4), kPi / 4.0), 1);
}

TEST(QuantizePhase, WithinHalfStepAndIdempotent) {
  for (int levels : {2, 3, 16, 256}) {
    const SlmSpec spec = phase_slm(levels);
    for (int i = -400; i <= 400; ++i) {
      const double theta = 0.0371 * i;
      const Complex q = level_to_complex(spec, quantize_phase(spec, theta));
      const double gap = std::abs(std::remainder(std::arg(q) - theta, 2.0 * kPi));
      EXPECT_LE(gap, kPi / levels + 1e-12);
    }
    for (int k = 0; k < levels; ++k) {
      EXPECT_EQ(quantize_phase(spec, 2.0 * kPi * k / levels), k);
    }
  }
}

TEST(QuantizeAmplitude, Examples) {
  const SlmSpec spec = amplitude_slm(16);
  EXPECT_EQ(quantize_amplitude(spec, 1.2), 15);
  EXPECT_EQ(quantize_amplitude(spec, -0.3), 0);
  // 0.5 is equidistant from 7/15 and 8/15.
  EXPECT_EQ(quantize_amplitude(spec, 0.5), 8);
}

TEST(QuantizeAmplitude, ErrorBoundAndIdempotence) {
  const SlmSpec spec = amplitude_slm(16);
  for (int i = 0; i <= 1000; ++i) {
    const double r = i / 1000.0;
    const double got = level_to_complex(spec, quantize_amplitude(spec, r)).real();
    EXPECT_LE(std::abs(got - r), 1.0 / (2.0 * 15.0) + 1e-12);
  }
  for (int k = 0; k < 16; ++k) EXPECT_EQ(quantize_amplitude(spec, k / 15.0), k);
}

TEST(RandomLevel, UniformOverTwoLevels) {
  Rng rng(2024);
  const SlmSpec spec = phase_slm(2);
  int ones = 0;
  for (int i = 0; i < 100000; ++i) ones += random_level(spec, rng);
  EXPECT_NEAR(ones / 100000.0, 0.5, 0.01);
}

TEST(RandomLevel, InRangeAndDeterministic) {
  const SlmSpec spec = phase_slm(256);
  Rng a(77), b(77);
  for (int i = 0; i < 5000; ++i) {
    const int k = random_level(spec, a);
    ASSERT_GE(k, 0);
    ASSERT_LT(k, 256);
    ASSERT_EQ(k, random_level(spec, b));
  }
}

TEST(Rng, FixedEngineSequence) {
  // The first output of mt19937_64 with the default seed is fixed by the standard.
  Rng rng(5489u);
  EXPECT_EQ(rng.next(), 14514284786278117030ull);
}

TEST(Rng, UniformRangeAndBelow) {
  Rng rng(3);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    ASSERT_LT(rng.below(7), 7u);
  }
  EXPECT_THROW(rng.below(0), InvalidInput);
}

TEST(Rng, RunStreamsDiffer) {
  Rng a = Rng::for_run(1, 0), b = Rng::for_run(1, 1), c = Rng::for_run(1, 0);
  EXPECT_NE(a.seed(), b.seed());
  EXPECT_EQ(a.next(), c.next());
}

}  // namespace
}  // namespace hps
