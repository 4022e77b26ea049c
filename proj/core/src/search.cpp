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

#include <algorithm>
#include <chrono>
#include <cmath>

#include "hps/search.hpp"

namespace hps {
namespace {

struct Pixel {
  std::size_t x;
  std::size_t y;
};

Pixel random_pixel(RunState& state) {
  const std::size_t i = state.rng().below(state.pixels());
  return {i % state.spec().nx, i / state.spec().nx};
}

// Nearest level to the predicted optimum for the pixel.
int predicted_level(const RunState& state, Pixel p, HpsVariant variant) {
  const SlmSpec& spec = state.spec();
  switch (variant) {
    case HpsVariant::PhaseSensitive:
      return quantize_phase(spec, optimal_phase_ps(state, p.x, p.y));
    case HpsVariant::PhaseInsensitive:
      return quantize_phase(spec, optimal_phase_pi(state, p.x, p.y));
    case HpsVariant::AmplitudeSensitive:
      return quantize_amplitude(spec, state.pixel_value(p.x, p.y).real() +
                                          optimal_dr_ps(state, p.x, p.y));
    case HpsVariant::AmplitudeInsensitive:
      return quantize_amplitude(spec, state.pixel_value(p.x, p.y).real() +
                                          optimal_dr_pi(state, p.x, p.y));
  }
  return 0;
}

}  // namespace

bool ds_step(RunState& state) {
  const Pixel p = random_pixel(state);
  const int level = random_level(state.spec(), state.rng());
  bool accepted = false;
  if (level != state.levels()(p.x, p.y)) {
    const double de = state.delta_error(p.x, p.y, level);
    if (de < 0.0) {
      state.apply(p.x, p.y, level, de);
      accepted = true;
    }
  }
  state.record_step(accepted);
  return accepted;
}

bool sa_step(RunState& state, double temperature) {
  if (!(temperature > 0.0)) throw_invalid("sa_step: temperature must be positive");
  const Pixel p = random_pixel(state);
  const int level = random_level(state.spec(), state.rng());
  bool accepted = false;
  if (level != state.levels()(p.x, p.y)) {
    const double de = state.delta_error(p.x, p.y, level);
    accepted = de < 0.0 || state.rng().uniform() < std::exp(-de / temperature);
    if (accepted) state.apply(p.x, p.y, level, de);
  }
  state.record_step(accepted);
  return accepted;
}

HpsVariant variant_for(const SlmSpec& spec, bool phase_sensitive) {
  if (spec.is_phase()) {
    return phase_sensitive ? HpsVariant::PhaseSensitive : HpsVariant::PhaseInsensitive;
  }
  return phase_sensitive ? HpsVariant::AmplitudeSensitive : HpsVariant::AmplitudeInsensitive;
}

std::string_view to_string(HpsVariant variant) {
  switch (variant) {
    case HpsVariant::PhaseSensitive: return "phase-sensitive";
    case HpsVariant::PhaseInsensitive: return "phase-insensitive";
    case HpsVariant::AmplitudeSensitive: return "amplitude-sensitive";
    case HpsVariant::AmplitudeInsensitive: return "amplitude-insensitive";
  }
  return "unknown";
}

bool hps_step(RunState& state, HpsVariant variant) {
  if (variant != variant_for(state.spec(), state.phase_sensitive())) {
    throw ConfigError("hps_step: variant " + std::string(to_string(variant)) +
                      " does not match the SLM and target (expected " +
                      std::string(to_string(variant_for(state.spec(), state.phase_sensitive()))) +
                      ")");
  }
  const Pixel p = random_pixel(state);
  const int level = predicted_level(state, p, variant);
  bool accepted = false;
  if (level != state.levels()(p.x, p.y)) {
    const double de = state.delta_error(p.x, p.y, level);
    if (de <= 0.0) {
      state.apply(p.x, p.y, level, de);
      accepted = true;
    }
  }
  state.record_step(accepted);
  return accepted;
}

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::DirectSearch: return "ds";
    case Algorithm::SimulatedAnnealing: return "sa";
    case Algorithm::PredictiveSearch: return "hps";
  }
  return "unknown";
}

ConvergenceLog run(RunState& state, const RunOptions& options) {
  if (options.iterations == 0) throw_invalid("run: iterations must be at least 1");
  if (options.checkpoint_every == 0) throw_invalid("run: checkpoint_every must be at least 1");

  const HpsVariant variant = variant_for(state.spec(), state.phase_sensitive());
  double temperature = options.sa.initial_temperature > 0.0
                           ? options.sa.initial_temperature
                           : 1e-3 * state.mse();
  const double decay =
      options.sa.decay > 0.0
          ? options.sa.decay
          : std::pow(1e-3, 1.0 / static_cast<double>(options.iterations));
  if (options.algorithm == Algorithm::SimulatedAnnealing && !(temperature > 0.0)) {
    throw_invalid("run: initial error is zero, no annealing temperature can be derived");
  }

  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };

  ConvergenceLog log;
  log.rows.reserve(static_cast<std::size_t>(
      (options.iterations + options.checkpoint_every - 1) / options.checkpoint_every + 1));
  const std::uint64_t base_accepted = state.accepted();
  log.rows.push_back({0, state.mse(), 0, 0.0});

  for (std::uint64_t i = 1; i <= options.iterations; ++i) {
    switch (options.algorithm) {
      case Algorithm::DirectSearch:
        ds_step(state);
        break;
      case Algorithm::SimulatedAnnealing:
        sa_step(state, temperature);
        temperature *= decay;
        break;
      case Algorithm::PredictiveSearch:
        hps_step(state, variant);
        break;
    }
    if (options.resync_every != 0 && i % options.resync_every == 0) {
      log.max_resync_drift = std::max(log.max_resync_drift, state.resync());
      ++log.resyncs;
    }
    if (i % options.checkpoint_every == 0 || i == options.iterations) {
      log.rows.push_back({i, state.mse(), state.accepted() - base_accepted, elapsed()});
    }
  }
  log.seconds = elapsed();
  return log;
}

double small_change_violation_fraction(const RealGrid& replay_magnitude, double dr,
                                       double threshold) {
  if (replay_magnitude.empty()) throw_invalid("small_change_violation_fraction: empty grid");
  const double n = static_cast<double>(replay_magnitude.size());
  const double step = std::abs(dr);
  std::size_t violations = 0;
  for (double m : replay_magnitude.values()) {
    if (!(m > 0.0)) {
      ++violations;
      continue;
    }
    const double delta = step * step / n + 2.0 * m * step / std::sqrt(n);
    const double dropped = (delta / (2.0 * m)) * (delta / (2.0 * m));
    if (dropped > threshold * m * m) ++violations;
  }
  return static_cast<double>(violations) / n;
}

}  // namespace hps
