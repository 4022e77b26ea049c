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
#include <limits>

#include "hps/field.hpp"
#include "hps/oracle.hpp"
#include "test_util.hpp"

namespace hps {
namespace {

using testing::max_abs_diff;
using testing::random_field;

TEST(Grid, RejectsZeroDimensions) {
  EXPECT_THROW(ComplexField(0, 4), InvalidInput);
  EXPECT_THROW(ComplexField(4, 0), InvalidInput);
}

TEST(Grid, RowMajorLayout) {
  RealGrid g(3, 2);
  g(2, 1) = 7.0;
  EXPECT_EQ(g[1 * 3 + 2], 7.0);
}

TEST(Grid, RequireValidRejectsNonFinite) {
  ComplexField f(2, 2);
  f(1, 1) = {std::numeric_limits<double>::quiet_NaN(), 0.0};
  EXPECT_THROW(require_valid(f, "f"), InvalidInput);
}

TEST(Dft, SinglePointIsIdentity) {
  ComplexField f(1, 1);
  f(0, 0) = {0.3, -1.7};
  EXPECT_EQ(dft_unitary(f)(0, 0), f(0, 0));
  EXPECT_EQ(idft_unitary(f)(0, 0), f(0, 0));
}

TEST(Dft, AllOnesTwoByTwo) {
  ComplexField f(2, 2, Complex{1.0, 0.0});
  const ComplexField F = dft_unitary(f);
  EXPECT_NEAR(std::abs(F(0, 0) - Complex{2.0, 0.0}), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(F(1, 0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(F(0, 1)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(F(1, 1)), 0.0, 1e-15);

  ComplexField spike(2, 2);
  spike(0, 0) = 2.0;
  const ComplexField back = idft_unitary(spike);
  for (const Complex& c : back.values()) EXPECT_NEAR(std::abs(c - Complex{1.0, 0.0}), 0.0, 1e-15);
}

TEST(Dft, ParsevalRandom8x8) {
  const ComplexField f = random_field(8, 8, 11);
  EXPECT_NEAR(energy(dft_unitary(f)) / energy(f), 1.0, 1e-12);
}

TEST(Dft, RoundTripUpTo128) {
  for (std::size_t n : {1u, 3u, 16u, 33u, 128u}) {
    const ComplexField f = random_field(n, n + 2, 100 + n);
    EXPECT_LT(max_abs_diff(idft_unitary(dft_unitary(f)), f), 1e-12) << n;
  }
}

TEST(Dft, MatchesNaiveOracle) {
  for (auto [nx, ny] : {std::pair<std::size_t, std::size_t>{16, 16}, {12, 7}, {5, 9}}) {
    const ComplexField f = random_field(nx, ny, nx * 31 + ny);
    EXPECT_LT(max_abs_diff(dft_unitary(f), oracle::naive_dft(f)), 1e-12);
  }
}

TEST(Dft, SignConventionSingleFrequency) {
  // f(x) = exp(2 pi i x / N) concentrates in bin u = 1.
  ComplexField f(8, 1);
  for (std::size_t x = 0; x < 8; ++x) f(x, 0) = std::polar(1.0, 2.0 * std::numbers::pi * x / 8.0);
  const ComplexField F = dft_unitary(f);
  EXPECT_NEAR(std::abs(F(1, 0)), std::sqrt(8.0), 1e-12);
  EXPECT_NEAR(std::abs(F(7, 0)), 0.0, 1e-12);
}

TEST(Fresnel, PrephaseCenterAndSymmetry) {
  const DomainSpec d = testing::test_fresnel();
  const RealGrid chi = fresnel_prephase(d, 16, 16);
  EXPECT_EQ(chi(8, 8), 0.0);
  for (std::size_t y = 1; y < 16; ++y) {
    for (std::size_t x = 1; x < 16; ++x) {
      EXPECT_NEAR(chi(x, y), chi(16 - x, 16 - y), 1e-12);
    }
  }
}

TEST(Fresnel, PrephaseOnePixelOffset) {
  // pi * (8e-6)^2 / (633e-9 * 0.1), evaluated independently.
  constexpr double kExpected = 0.003176333804577358;
  const RealGrid chi = fresnel_prephase(testing::test_fresnel(), 16, 16);
  EXPECT_NEAR(chi(9, 8), kExpected, 1e-15);
  EXPECT_NEAR(chi(8, 7), kExpected, 1e-15);
}

TEST(Fresnel, RejectsFraunhoferAndBadParameters) {
  EXPECT_THROW(fresnel_prephase(DomainSpec::fraunhofer(), 4, 4), InvalidInput);
  EXPECT_THROW(DomainSpec::fresnel(0.0, 0.1, 8e-6).validate(), InvalidInput);
  EXPECT_THROW(DomainSpec::fresnel(633e-9, 0.0, 8e-6).validate(), InvalidInput);
  EXPECT_THROW(DomainSpec::fresnel(633e-9, 0.1, -1.0).validate(), InvalidInput);
  EXPECT_NO_THROW(DomainSpec::fresnel(633e-9, -0.1, 8e-6).validate());
}

TEST(ForwardTransform, FraunhoferIsPlainDft) {
  const ComplexField h = random_field(16, 16, 5);
  EXPECT_EQ(forward_transform(h, DomainSpec::fraunhofer()), dft_unitary(h));
}

TEST(ForwardTransform, FarFresnelApproachesFraunhofer) {
  const ComplexField h = random_field(16, 16, 6);
  const DomainSpec far = DomainSpec::fresnel(633e-9, 1e12, 8e-6);
  EXPECT_LT(max_abs_diff(forward_transform(h, far), dft_unitary(h)), 1e-9);
}

TEST(ForwardTransform, FresnelPreservesEnergy) {
  const ComplexField h = random_field(16, 16, 7);
  const ComplexField r = forward_transform(h, testing::test_fresnel());
  EXPECT_NEAR(energy(r) / energy(h), 1.0, 1e-10);
}

TEST(ForwardTransform, FresnelMatchesNaiveOracle) {
  const ComplexField h = random_field(12, 10, 8);
  const DomainSpec d = testing::test_fresnel();
  EXPECT_LT(max_abs_diff(forward_transform(h, d), oracle::naive_forward(h, d)), 1e-12);
}

TEST(ForwardTransform, RealApertureGivesConjugateSymmetricReplay) {
  ComplexField h = random_field(16, 12, 9);
  for (Complex& c : h.values()) c = c.real();
  const ComplexField r = forward_transform(h, DomainSpec::fraunhofer());
  for (std::size_t v = 0; v < 12; ++v) {
    for (std::size_t u = 0; u < 16; ++u) {
      EXPECT_LT(std::abs(r(u, v) - std::conj(r((16 - u) % 16, (12 - v) % 12))), 1e-10);
    }
  }
}

TEST(DeltaReplay, OriginPixelIsFlat) {
  const Complex d{0.4, -0.2};
  const ComplexField dr = delta_replay(d, 0, 0, 8, 4, DomainSpec::fraunhofer());
  for (const Complex& c : dr.values()) EXPECT_LT(std::abs(c - d / std::sqrt(32.0)), 1e-15);
}

TEST(DeltaReplay, ZeroChangeIsZero) {
  const ComplexField dr = delta_replay({}, 3, 2, 8, 4, testing::test_fresnel());
  for (const Complex& c : dr.values()) EXPECT_EQ(c, Complex{});
}

TEST(DeltaReplay, OutOfRangeRejected) {
  EXPECT_THROW(delta_replay({1.0, 0.0}, 8, 0, 8, 4, DomainSpec::fraunhofer()), InvalidInput);
  EXPECT_THROW(delta_replay({1.0, 0.0}, 0, 4, 8, 4, DomainSpec::fraunhofer()), InvalidInput);
}

class IncrementalUpdate : public ::testing::TestWithParam<bool> {};

TEST_P(IncrementalUpdate, MatchesFullTransform) {
  const DomainSpec domain = GetParam() ? testing::test_fresnel() : DomainSpec::fraunhofer();
  ComplexField h = random_field(16, 16, 21);
  const ComplexField r = forward_transform(h, domain);
  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t x = rng.below(16), y = rng.below(16);
    const Complex d{rng.uniform() - 0.5, rng.uniform() - 0.5};
    ComplexField moved = h;
    moved(x, y) += d;
    ComplexField predicted = r;
    const ComplexField dr = delta_replay(d, x, y, 16, 16, domain);
    for (std::size_t i = 0; i < r.size(); ++i) predicted[i] += dr[i];
    EXPECT_LT(max_abs_diff(predicted, forward_transform(moved, domain)), 1e-10);
  }
}

TEST_P(IncrementalUpdate, IsLinearInTheChange) {
  const DomainSpec domain = GetParam() ? testing::test_fresnel() : DomainSpec::fraunhofer();
  const Complex d1{0.3, 0.1}, d2{-0.2, 0.7}, a{1.5, -0.5}, b{-0.25, 2.0};
  const ComplexField r1 = delta_replay(d1, 5, 9, 16, 12, domain);
  const ComplexField r2 = delta_replay(d2, 5, 9, 16, 12, domain);
  const ComplexField both = delta_replay(a * d1 + b * d2, 5, 9, 16, 12, domain);
  for (std::size_t i = 0; i < both.size(); ++i) {
    EXPECT_LT(std::abs(both[i] - (a * r1[i] + b * r2[i])), 1e-14);
  }
}

INSTANTIATE_TEST_SUITE_P(Domains, IncrementalUpdate, ::testing::Values(false, true),
                         [](const auto& info) { return info.param ? "Fresnel" : "Fraunhofer"; });

}  // namespace
}  // namespace hps
