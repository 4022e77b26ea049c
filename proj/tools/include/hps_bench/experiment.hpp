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
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hps/metrics.hpp"
#include "hps/search.hpp"
#include "hps_bench/config.hpp"

namespace hps::bench {

/// One row of a convergence CSV.
struct LogRow {
  std::uint64_t iteration = 0;
  double mse = 0.0;
  double accepted = 0.0;  // integral per seed, averaged in the mean curve
};

struct LogFile {
  std::vector<std::string> header;  // '#' lines without the marker
  std::vector<LogRow> rows;
};

/// Writes `contents` to path.tmp and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

std::string format_log_csv(const std::vector<std::string>& header, const std::vector<LogRow>& rows);
LogFile read_log_csv(const std::filesystem::path& path);

struct SeedResult {
  std::uint64_t seed = 0;
  std::vector<LogRow> rows;
  ErrorReport report;
  double seconds = 0.0;
  std::uint64_t resyncs = 0;
  double max_resync_drift = 0.0;
};

struct RunResult {
  std::vector<SeedResult> seeds;
  std::vector<LogRow> mean;
};

/// Pointwise mean of equally sampled per-seed curves.
std::vector<LogRow> mean_curve(const std::vector<SeedResult>& seeds);

/// Runs every seed of `config` (in parallel up to config.threads) and writes
/// run_seed<S>.csv, mean.csv, recon_seed<S>_magnitude.pgm (plus _phase.pgm
/// for sensitive targets) and summary.txt into config.out.
RunResult cmd_run(const ExperimentConfig& config);

/// Sweeps n_pixels random pixels of the initial state for the first seed and
/// writes curve_<i>.csv files. Returns the written paths.
std::vector<std::filesystem::path> cmd_curves(const ExperimentConfig& config, std::size_t n_pixels,
                                              std::size_t n_samples);

struct CompareRow {
  std::string algorithm;
  double final_mse = 0.0;
  double final_mse_ratio = 0.0;
  std::optional<std::uint64_t> iterations_to_target;
  std::optional<double> iterations_ratio;
};

/// First checkpoint at which the curve is at or below `target`.
std::optional<std::uint64_t> iterations_to_reach(const std::vector<LogRow>& curve, double target);

/// Compares mean curves against the first entry. The target error is the
/// first curve's final MSE; ratios are relative to the first curve.
std::vector<CompareRow> compare_curves(const std::vector<std::string>& algorithms,
                                       const std::vector<std::vector<LogRow>>& curves);

/// Throws ConfigError unless the configs differ in `algorithm` (and `out`) only.
void check_comparable(const std::vector<ExperimentConfig>& configs);

/// Runs each config into out/<index>_<algorithm> and writes out/compare.csv.
std::vector<CompareRow> cmd_compare(const std::vector<ExperimentConfig>& configs,
                                    const std::filesystem::path& out);

}  // namespace hps::bench
