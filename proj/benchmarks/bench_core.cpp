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

#include <benchmark/benchmark.h>

#include "hps/field.hpp"
#include "hps/search.hpp"
#include "hps/targets.hpp"

namespace {

using namespace hps;

RunState make_state(Modulation modulation, bool sensitive, std::size_t n, int levels = 256) {
  const SlmSpec spec{modulation, levels, n, n};
  const Sensitivity s = sensitive ? Sensitivity::Sensitive : Sensitivity::Insensitive;
  std::optional<RealGrid> phase;
  if (sensitive) phase = synthetic_phase(n, n);
  const TargetField t = prepare_target(synthetic_amplitude(n, n), phase, spec, s, default_layout(s));
  return RunState(spec, DomainSpec::fraunhofer(), t, InitMode::BackProjection, 1);
}

void BM_DftUnitary(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  ComplexField f(n, n, Complex{0.5, -0.25});
  for (auto _ : st) benchmark::DoNotOptimize(dft_unitary(f));
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(n * n));
}
BENCHMARK(BM_DftUnitary)->Arg(64)->Arg(128)->Arg(256);

void BM_DeltaError(benchmark::State& st) {
  const RunState s = make_state(Modulation::Phase, st.range(1) != 0,
                                static_cast<std::size_t>(st.range(0)));
  std::size_t i = 0;
  for (auto _ : st) {
    const std::size_t x = (i * 37) % s.spec().nx, y = (i * 91) % s.spec().ny;
    benchmark::DoNotOptimize(s.delta_error(x, y, static_cast<int>(i % 256)));
    ++i;
  }
}
BENCHMARK(BM_DeltaError)->Args({128, 0})->Args({128, 1});

template <Algorithm A>
void BM_Step(benchmark::State& st) {
  RunState s = make_state(st.range(1) == 0 ? Modulation::Phase : Modulation::Amplitude,
                          st.range(2) != 0, static_cast<std::size_t>(st.range(0)));
  const HpsVariant variant = variant_for(s.spec(), s.phase_sensitive());
  for (auto _ : st) {
    if constexpr (A == Algorithm::DirectSearch) {
      benchmark::DoNotOptimize(ds_step(s));
    } else {
      benchmark::DoNotOptimize(hps_step(s, variant));
    }
  }
  st.counters["mse"] = s.mse();
}
BENCHMARK(BM_Step<Algorithm::DirectSearch>)->Args({128, 0, 0})->Args({128, 1, 0});
BENCHMARK(BM_Step<Algorithm::PredictiveSearch>)
    ->Args({128, 0, 0})
    ->Args({128, 0, 1})
    ->Args({128, 1, 0})
    ->Args({128, 1, 1});

}  // namespace
BENCHMARK_MAIN();
