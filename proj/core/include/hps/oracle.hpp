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

// Slow, literal reference computations. Nothing in here shares code with the
// FFT path, the replay kernel or the cached state updates, so the engines can
// be checked against it.

#include <filesystem>
#include <vector>

#include "hps/field.hpp"
#include "hps/search.hpp"
#include "hps/slm.hpp"

namespace hps::oracle {

/// Direct O(N^2) unitary DFT.
ComplexField naive_dft(const ComplexField& f);

/// naive_dft of the aperture, with the quadratic phase applied for Fresnel.
ComplexField naive_forward(const ComplexField& aperture, const DomainSpec& domain);

/// SLM-plane values of a level grid, without prephase.
ComplexField levels_to_aperture(const SlmSpec& spec, const LevelGrid& levels);

/// Total squared error rebuilt from the state's level grid alone.
double full_recompute_error(const RunState& state);

/// Exact total error if pixel (x, y) held the SLM-plane value `value`,
/// evaluated against the state's cached replay.
double error_with_value(const RunState& state, std::size_t x, std::size_t y, Complex value);

struct LevelChoice {
  int level = 0;
  double delta_error = 0.0;
};

/// Tries every level at (x, y); the lowest error wins, lower index on ties.
LevelChoice brute_force_best_level(const RunState& state, std::size_t x, std::size_t y);

struct SweepCurve {
  std::size_t x = 0;
  std::size_t y = 0;
  std::vector<double> params;
  std::vector<double> errors;
};

/// Error as one pixel's value is swept: phases 2 pi j / n for j < n on a phase
/// SLM, magnitudes j / (n - 1) on an amplitude SLM.
SweepCurve pixel_sweep(const RunState& state, std::size_t x, std::size_t y, std::size_t n_samples);

/// Writes "param,error" rows with round-trip precision.
void write_sweep_csv(const std::filesystem::path& path, const SweepCurve& curve);

/// Least-squares fits returning ||residual|| / ||errors||.
double sinusoid_fit_residual(const std::vector<double>& theta, const std::vector<double>& errors);
double quadratic_fit_residual(const std::vector<double>& r, const std::vector<double>& errors);

}  // namespace hps::oracle
