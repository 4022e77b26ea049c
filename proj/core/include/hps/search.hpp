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

#include <cstdint>
#include <string_view>
#include <vector>

#include "hps/field.hpp"
#include "hps/rng.hpp"
#include "hps/slm.hpp"
#include "hps/targets.hpp"

namespace hps {

enum class InitMode {
  BackProjection,  // inverse transform of the target, projected onto the SLM levels
  Uniform,         // every pixel an independent uniform random level
};

/// Hologram being optimized together with its cached replay field and error.
///
/// The aperture cache holds the SLM values times the Fresnel prephase, so the
/// replay cache is always dft_unitary(aperture). Both caches and the total
/// squared error are updated incrementally by apply() and rebuilt from the
/// level grid by resync().
class RunState {
 public:
  RunState(SlmSpec spec, DomainSpec domain, TargetField target, InitMode init,
           std::uint64_t seed);
  RunState(SlmSpec spec, DomainSpec domain, TargetField target, LevelGrid levels,
           std::uint64_t seed);

  const SlmSpec& spec() const noexcept { return spec_; }
  const DomainSpec& domain() const noexcept { return domain_; }
  const TargetField& target() const noexcept { return target_; }
  bool phase_sensitive() const noexcept { return target_.phase_sensitive; }
  const LevelGrid& levels() const noexcept { return levels_; }
  const ComplexField& aperture() const noexcept { return aperture_; }
  const ComplexField& replay() const noexcept { return replay_; }
  const RealGrid& target_magnitude() const noexcept { return target_mag_; }
  const ReplayKernel& kernel() const noexcept { return kernel_; }
  std::size_t pixels() const noexcept { return levels_.size(); }

  /// Unnormalized squared error, sum over the replay plane.
  double total_se() const noexcept { return total_se_; }
  double mse() const noexcept { return total_se_ / static_cast<double>(pixels()); }

  std::uint64_t iterations() const noexcept { return iterations_; }
  std::uint64_t accepted() const noexcept { return accepted_; }
  Rng& rng() noexcept { return rng_; }

  /// SLM-plane value of a level (no prephase).
  Complex level_value(int level) const { return level_values_.at(static_cast<std::size_t>(level)); }
  /// SLM-plane value currently at pixel (x, y).
  Complex pixel_value(std::size_t x, std::size_t y) const {
    return level_values_[static_cast<std::size_t>(levels_(x, y))];
  }

  /// sum_{u,v} (T - R) conj(g) for pixel (x, y), with g the replay change of
  /// a unit SLM-plane change at that pixel.
  Complex residual_projection(std::size_t x, std::size_t y) const;

  /// Exact change of the total error if pixel (x, y) moved to `level`.
  double delta_error(std::size_t x, std::size_t y, int level) const;

  /// Moves pixel (x, y) to `level`, updating the caches by the single-pixel
  /// replay change. `delta_e` is added to the cached error.
  void apply(std::size_t x, std::size_t y, int level, double delta_e);

  /// Convenience: delta_error followed by apply.
  void set_level(std::size_t x, std::size_t y, int level);

  void record_step(bool accepted) noexcept {
    ++iterations_;
    if (accepted) ++accepted_;
  }

  /// Rebuilds aperture, replay and error from the level grid with a full
  /// transform. Returns |cached - exact| / exact for the error before the
  /// rebuild (absolute difference when the exact error is 0).
  double resync();

 private:
  void rebuild();

  SlmSpec spec_;
  DomainSpec domain_;
  TargetField target_;
  ReplayKernel kernel_;
  std::vector<Complex> level_values_;
  RealGrid target_mag_;
  LevelGrid levels_;
  ComplexField aperture_;
  ComplexField replay_;
  RealGrid replay_mag_;  // maintained for phase-insensitive targets only
  double total_se_ = 0.0;
  std::uint64_t iterations_ = 0;
  std::uint64_t accepted_ = 0;
  Rng rng_;
};

/// Level grid for a back-projected start: the inverse transform of the
/// target (uniform random phases first when phase-insensitive), with the
/// Fresnel prephase removed, quantized to the nearest SLM level. Amplitude
/// SLMs keep the clamped magnitude.
LevelGrid back_projection_levels(const SlmSpec& spec, const DomainSpec& domain,
                                 const TargetField& target, Rng& rng);

// ---------------------------------------------------------------------------
// Blind search

/// Direct search: random pixel, random level, keep it iff the error drops.
bool ds_step(RunState& state);

/// Simulated annealing step at `temperature` (in units of the unnormalized
/// error). Worse moves are kept with probability exp(-dE / temperature).
bool sa_step(RunState& state, double temperature);

// ---------------------------------------------------------------------------
// Predictive search

enum class HpsVariant {
  PhaseSensitive,        // phase SLM, complex target
  PhaseInsensitive,      // phase SLM, magnitude-only target
  AmplitudeSensitive,    // amplitude SLM, complex target
  AmplitudeInsensitive,  // amplitude SLM, magnitude-only target
};

HpsVariant variant_for(const SlmSpec& spec, bool phase_sensitive);
std::string_view to_string(HpsVariant variant);

/// Error-minimizing phase for pixel (x, y), phase SLM and complex target.
///
/// With the pixel zeroed (replay R-dagger), the error of a unit pixel at
/// phase t is 1 - (2/sqrt(N)) sum sqrt(E-dagger) cos(C - t) summed over the
/// replay plane, which is exactly sinusoidal in t. The minimizer is the
/// argument of sum sqrt(E-dagger) exp(iC), evaluated here as
/// sum (T - R) conj(g) + H(x, y).
double optimal_phase_ps(const RunState& state, std::size_t x, std::size_t y);

/// Approximate error-minimizing phase for a magnitude-only target.
///
/// Two-term Taylor expansion of |R-dagger + exp(it) g| about the zeroed
/// replay makes the error D + sum F cos(t - C); the minimum sits opposite the
/// argument of sum F exp(iC). Returns 0 when that sum vanishes.
double optimal_phase_pi(const RunState& state, std::size_t x, std::size_t y);

/// Exact error-minimizing magnitude change for an amplitude SLM and complex
/// target: the error is the parabola dr^2 - 2 dr sum sqrt(E) cos(beta)/sqrt(N).
double optimal_dr_ps(const RunState& state, std::size_t x, std::size_t y);

/// Magnitude change for an amplitude SLM and magnitude-only target, from the
/// small-change approximation with per-pixel weights (1 - |T|) |R|.
double optimal_dr_pi(const RunState& state, std::size_t x, std::size_t y);

/// Per-replay-pixel quantities behind the predictors, computed literally from
/// angles. Which grids are filled depends on the variant:
///   PhaseSensitive:       c, e_dagger
///   PhaseInsensitive:     c, d, f, e_dagger
///   AmplitudeSensitive:   beta, e (in e_dagger), f = sqrt(E) weights
///   AmplitudeInsensitive: beta, e (in e_dagger), f = (1 - |T|)|R| weights
struct PredictorTerms {
  RealGrid c;
  RealGrid f;
  RealGrid d;
  RealGrid beta;
  RealGrid e_dagger;
};

PredictorTerms predictor_terms(const RunState& state, std::size_t x, std::size_t y,
                               HpsVariant variant);

/// Phase (radians) or magnitude change predicted from explicit terms using
/// trigonometric sums. Same quantity as the optimal_* functions.
double predict_from_terms(const PredictorTerms& terms, HpsVariant variant);

/// One predictive step: random pixel, closed-form optimum, nearest level,
/// applied iff the exact error change is <= 0.
bool hps_step(RunState& state, HpsVariant variant);

// ---------------------------------------------------------------------------
// Runs

enum class Algorithm { DirectSearch, SimulatedAnnealing, PredictiveSearch };

std::string_view to_string(Algorithm algorithm);

/// Geometric schedule T_k = initial * decay^k. Non-positive fields select the
/// defaults: initial = 1e-3 * initial per-pixel MSE, decay such that the
/// temperature falls by 1e3 over the run.
struct SaSchedule {
  double initial_temperature = 0.0;
  double decay = 0.0;
};

struct RunOptions {
  Algorithm algorithm = Algorithm::PredictiveSearch;
  std::uint64_t iterations = 0;
  std::uint64_t checkpoint_every = 1000;
  std::uint64_t resync_every = 10000;  // 0 disables resynchronization
  SaSchedule sa;
};

struct Checkpoint {
  std::uint64_t iteration = 0;
  double mse = 0.0;
  std::uint64_t accepted = 0;
  double elapsed_seconds = 0.0;
};

struct ConvergenceLog {
  std::vector<Checkpoint> rows;
  std::uint64_t resyncs = 0;
  double max_resync_drift = 0.0;
  double seconds = 0.0;
};

/// Runs `options.iterations` steps, checkpointing the cached MSE at
/// iteration 0, every `checkpoint_every` steps and at the end.
ConvergenceLog run(RunState& state, const RunOptions& options);

/// Audit of the small-change assumption behind optimal_dr_pi.
///
/// A magnitude change dr moves |R|^2 by delta = dr^2/N + 2 |R| dr cos(beta)/sqrt(N);
/// the predictor linearizes |R'| = sqrt(|R|^2 + delta) as |R| + delta / (2|R|),
/// whose square overshoots |R'|^2 by (delta / (2|R|))^2. Returns the fraction
/// of entries of `replay_magnitude` where that dropped term exceeds
/// `threshold` * |R|^2 at the worst-case alignment cos(beta) = 1. Zero
/// magnitudes always count as violations.
double small_change_violation_fraction(const RealGrid& replay_magnitude, double dr,
                                       double threshold);

}  // namespace hps
