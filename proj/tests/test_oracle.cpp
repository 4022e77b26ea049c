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
#include <filesystem>
#include <fstream>
#include <numbers>
#include <string>

#include "hps/oracle.hpp"
#include "test_util.hpp"

namespace hps {
namespace {

using testing::random_state;

TEST(FullRecompute, MatchesCachedError) {
  for (bool fresnel : {false, true}) {
    const DomainSpec d = fresnel ? testing::test_fresnel() : DomainSpec::fraunhofer();
    for (Modulation m : {Modulation::Phase, Modulation::Amplitude}) {
      for (bool sensitive : {false, true}) {
        const RunState s = random_state(m, sensitive, 12, 60, d, 8);
        EXPECT_NEAR(oracle::full_recompute_error(s), s.total_se(), 1e-10 * s.total_se());
      }
    }
  }
}

TEST(FullRecompute, ReachableTargetHasZeroError) {
  const SlmSpec spec{Modulation::Phase, 8, 8, 8};
  LevelGrid levels(8, 8);
  for (std::size_t i = 0; i < levels.size(); ++i) levels[i] = static_cast<int>((i * 5) % 8);
  TargetField t;
  t.field = forward_transform(oracle::levels_to_aperture(spec, levels), testing::test_fresnel());
  t.phase_sensitive = true;
  t.energy = energy(t.field);
  const RunState s(spec, testing::test_fresnel(), t, levels, 1);
  EXPECT_LT(oracle::full_recompute_error(s), 1e-20);
  EXPECT_LT(s.total_se(), 1e-20);
}

TEST(LevelsToAperture, LiteralValues) {
  const SlmSpec spec{Modulation::Amplitude, 5, 2, 1};
  LevelGrid levels(2, 1);
  levels[0] = 0;
  levels[1] = 4;
  const ComplexField a = oracle::levels_to_aperture(spec, levels);
  EXPECT_EQ(a[0], Complex{});
  EXPECT_EQ(a[1], Complex(1.0, 0.0));
  levels[1] = 5;
  EXPECT_THROW(oracle::levels_to_aperture(spec, levels), InvalidInput);
}

TEST(BruteForce, TwoLevelsByHand) {
  const RunState s = random_state(Modulation::Phase, false, 8, 61, DomainSpec::fraunhofer(), 2);
  for (std::size_t x : {0u, 3u, 7u}) {
    const std::size_t y = (x * 3) % 8;
    const int other = 1 - s.levels()(x, y);
    const double de_other = s.delta_error(x, y, other);
    const oracle::LevelChoice best = oracle::brute_force_best_level(s, x, y);
    if (de_other < 0.0) {
      EXPECT_EQ(best.level, other);
      EXPECT_NEAR(best.delta_error, de_other, 1e-9 * s.total_se());
    } else {
      EXPECT_EQ(best.level, s.levels()(x, y));
      EXPECT_EQ(best.delta_error, 0.0);
    }
  }
}

TEST(BruteForce, NeverWorseThanStaying) {
  const RunState s = random_state(Modulation::Amplitude, true, 10, 62, testing::test_fresnel(), 16);
  for (std::size_t i = 0; i < 20; ++i) {
    const oracle::LevelChoice best = oracle::brute_force_best_level(s, i % 10, (i * 7) % 10);
    EXPECT_LE(best.delta_error, 0.0);
    EXPECT_GE(best.level, 0);
    EXPECT_LT(best.level, 16);
  }
}

TEST(Sweep, ContainsCurrentStateError) {
  const RunState s = random_state(Modulation::Phase, false, 8, 63, DomainSpec::fraunhofer(), 256);
  const oracle::SweepCurve c = oracle::pixel_sweep(s, 2, 5, 256);
  ASSERT_EQ(c.params.size(), 256u);
  const auto k = static_cast<std::size_t>(s.levels()(2, 5));
  EXPECT_NEAR(c.errors[k], s.total_se(), 1e-9 * s.total_se());
  EXPECT_DOUBLE_EQ(c.params[1], 2.0 * std::numbers::pi / 256.0);
}

TEST(Sweep, AmplitudeGridEndpoints) {
  const RunState s = random_state(Modulation::Amplitude, false, 8, 64, DomainSpec::fraunhofer(), 16);
  const oracle::SweepCurve c = oracle::pixel_sweep(s, 1, 1, 11);
  EXPECT_EQ(c.params.front(), 0.0);
  EXPECT_EQ(c.params.back(), 1.0);
  EXPECT_NEAR(c.errors.back(), oracle::error_with_value(s, 1, 1, 1.0), 1e-12 * s.total_se());
  EXPECT_THROW(oracle::pixel_sweep(s, 1, 1, 1), InvalidInput);
  EXPECT_THROW(oracle::pixel_sweep(s, 8, 1, 16), InvalidInput);
}

TEST(Sweep, PhaseIsPeriodic) {
  const RunState s = random_state(Modulation::Phase, false, 8, 65);
  const oracle::SweepCurve c = oracle::pixel_sweep(s, 4, 4, 16);
  for (std::size_t j = 0; j < 16; ++j) {
    const double wrapped =
        oracle::error_with_value(s, 4, 4, std::polar(1.0, c.params[j] + 2.0 * std::numbers::pi));
    EXPECT_NEAR(wrapped, c.errors[j], 1e-10 * s.total_se());
  }
}

TEST(Sweep, ShapesOfSensitiveCurves) {
  // A complex target makes the error exactly sinusoidal in phase and exactly
  // quadratic in amplitude.
  const RunState ps = random_state(Modulation::Phase, true, 16, 66, testing::test_fresnel());
  const oracle::SweepCurve cp = oracle::pixel_sweep(ps, 3, 9, 256);
  EXPECT_LT(oracle::sinusoid_fit_residual(cp.params, cp.errors), 1e-9);

  const RunState as = random_state(Modulation::Amplitude, true, 16, 67, testing::test_fresnel());
  const oracle::SweepCurve ca = oracle::pixel_sweep(as, 3, 9, 256);
  EXPECT_LT(oracle::quadratic_fit_residual(ca.params, ca.errors), 1e-9);
}

TEST(Fits, SyntheticCurves) {
  std::vector<double> t, sinus, quad, cubic;
  for (int i = 0; i < 50; ++i) {
    const double x = 0.1 * i;
    t.push_back(x);
    sinus.push_back(3.0 + 0.5 * std::cos(x) - 2.0 * std::sin(x));
    quad.push_back(1.0 - 2.0 * x + 0.25 * x * x);
    cubic.push_back(x * x * x);
  }
  EXPECT_LT(oracle::sinusoid_fit_residual(t, sinus), 1e-12);
  EXPECT_LT(oracle::quadratic_fit_residual(t, quad), 1e-12);
  EXPECT_GT(oracle::quadratic_fit_residual(t, cubic), 1e-3);
  EXPECT_THROW(oracle::quadratic_fit_residual({1.0, 2.0}, {1.0, 2.0}), InvalidInput);
}

TEST(SweepCsv, WritesHeaderAndRows) {
  const std::filesystem::path dir = std::filesystem::temp_directory_path() / "hps_oracle_csv";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  oracle::SweepCurve c;
  c.x = 3;
  c.y = 4;
  c.params = {0.0, 0.5};
  c.errors = {1.25, 0.1};
  oracle::write_sweep_csv(dir / "curve.csv", c);
  std::ifstream in(dir / "curve.csv");
  const std::string text{std::istreambuf_iterator<char>(in), {}};
  EXPECT_EQ(text, "# pixel 3 4\nparam,error\n0,1.25\n0.5,0.1\n");
  EXPECT_THROW(oracle::write_sweep_csv(dir / "no" / "such" / "dir.csv", c), IoError);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace hps
