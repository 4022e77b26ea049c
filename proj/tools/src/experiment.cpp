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

#include "hps_bench/experiment.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <system_error>
#include <thread>

#include "hps/oracle.hpp"
#include "hps/pgm.hpp"

namespace hps::bench {
namespace {

std::string fmt(double v) {
  // Shortest representation that reads back to the same double.
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, result.ptr);
}

void make_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
}

// Settings that change results. Output location and thread count do not.
std::vector<std::string> config_header(const ExperimentConfig& config) {
  std::vector<std::string> header;
  for (const auto& [key, value] : config.echo()) {
    if (key != "out" && key != "threads") header.push_back(key + "=" + value);
  }
  return header;
}

template <class Fn>
void for_each_parallel(std::size_t count, unsigned threads, Fn fn) {
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    const std::size_t n = std::min<std::size_t>(threads, count);
    for (std::size_t t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

SeedResult run_seed(const ExperimentConfig& config, const TargetField& target, std::uint64_t seed) {
  RunState state(config.slm, config.domain, target, config.init, seed);
  RunOptions options;
  options.algorithm = config.algorithm;
  options.iterations = config.iterations;
  options.checkpoint_every = config.checkpoint_every;
  options.resync_every = config.resync_every;
  options.sa = config.sa;
  const ConvergenceLog log = run(state, options);

  SeedResult r;
  r.seed = seed;
  for (const Checkpoint& c : log.rows) {
    r.rows.push_back({c.iteration, c.mse, static_cast<double>(c.accepted)});
  }
  r.report = error_report(target.field, state.replay(), target.phase_sensitive);
  r.seconds = log.seconds;
  r.resyncs = log.resyncs;
  r.max_resync_drift = log.max_resync_drift;

  const std::string stem = "recon_seed" + std::to_string(seed);
  write_pgm(config.out / (stem + "_magnitude.pgm"),
            display_image(state.replay(), target.field, target.phase_sensitive), 16);
  if (target.phase_sensitive) {
    RealGrid phase(config.slm.nx, config.slm.ny);
    for (std::size_t i = 0; i < phase.size(); ++i) {
      phase[i] = (std::arg(state.replay()[i]) + std::numbers::pi) / (2.0 * std::numbers::pi);
    }
    write_pgm(config.out / (stem + "_phase.pgm"), phase, 16);
  }
  std::vector<std::string> header{"hps_bench convergence log"};
  for (const std::string& line : config_header(config)) header.push_back(line);
  header.push_back("seed=" + std::to_string(seed));
  write_file_atomic(config.out / ("run_seed" + std::to_string(seed) + ".csv"),
                    format_log_csv(header, r.rows));
  return r;
}

}  // namespace

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out << contents;
    if (!out.flush()) throw IoError("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

std::string format_log_csv(const std::vector<std::string>& header, const std::vector<LogRow>& rows) {
  std::string out;
  for (const std::string& line : header) out += "# " + line + "\n";
  out += "iteration,mse,accepted\n";
  for (const LogRow& r : rows) {
    out += std::to_string(r.iteration) + "," + fmt(r.mse) + "," + fmt(r.accepted) + "\n";
  }
  return out;
}

LogFile read_log_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  LogFile file;
  std::string line;
  bool columns = false;
  for (int number = 1; std::getline(in, line); ++number) {
    const std::string where = path.string() + ":" + std::to_string(number);
    if (line.rfind("# ", 0) == 0) {
      file.header.push_back(line.substr(2));
      continue;
    }
    if (!columns) {
      if (line != "iteration,mse,accepted") throw FormatError(where + ": missing column header");
      columns = true;
      continue;
    }
    LogRow row;
    const char* p = line.data();
    const char* end = line.data() + line.size();
    auto field = [&](auto& value) {
      const auto [next, ec] = std::from_chars(p, end, value);
      if (ec != std::errc{}) throw FormatError(where + ": malformed number");
      p = next;
    };
    field(row.iteration);
    if (p == end || *p++ != ',') throw FormatError(where + ": expected ','");
    field(row.mse);
    if (p == end || *p++ != ',') throw FormatError(where + ": expected ','");
    field(row.accepted);
    if (p != end) throw FormatError(where + ": trailing characters");
    file.rows.push_back(row);
  }
  if (!columns) throw FormatError(path.string() + ": no data section");
  return file;
}

std::vector<LogRow> mean_curve(const std::vector<SeedResult>& seeds) {
  if (seeds.empty()) return {};
  std::vector<LogRow> mean = seeds.front().rows;
  for (std::size_t s = 1; s < seeds.size(); ++s) {
    if (seeds[s].rows.size() != mean.size()) {
      throw InvariantViolation("per-seed logs have different lengths");
    }
  }
  const auto n = static_cast<double>(seeds.size());
  for (std::size_t i = 0; i < mean.size(); ++i) {
    double mse = 0.0, accepted = 0.0;
    for (const SeedResult& s : seeds) {
      mse += s.rows[i].mse;
      accepted += s.rows[i].accepted;
    }
    mean[i].mse = mse / n;
    mean[i].accepted = accepted / n;
  }
  return mean;
}

RunResult cmd_run(const ExperimentConfig& config) {
  const TargetField target = load_target(config);
  make_dir(config.out);

  RunResult result;
  result.seeds.resize(config.seeds.size());
  for_each_parallel(config.seeds.size(), config.threads, [&](std::size_t i) {
    result.seeds[i] = run_seed(config, target, config.seeds[i]);
  });
  result.mean = mean_curve(result.seeds);

  std::vector<std::string> header{"hps_bench mean convergence log"};
  for (const std::string& line : config_header(config)) header.push_back(line);
  header.push_back("runs=" + std::to_string(config.seeds.size()));
  write_file_atomic(config.out / "mean.csv", format_log_csv(header, result.mean));

  std::string summary = "# hps_bench run summary\n";
  for (const std::string& line : config_header(config)) summary += "# " + line + "\n";
  summary += "seed,final_mse,mse_ps,mse_pi,ssim,seconds,seconds_per_iteration,resyncs,max_resync_drift\n";
  for (const SeedResult& s : result.seeds) {
    summary += std::to_string(s.seed) + "," + fmt(s.rows.back().mse) + "," + fmt(s.report.mse_ps) +
               "," + fmt(s.report.mse_pi) + "," + fmt(s.report.ssim) + "," + fmt(s.seconds) + "," +
               fmt(s.seconds / static_cast<double>(config.iterations)) + "," +
               std::to_string(s.resyncs) + "," + fmt(s.max_resync_drift) + "\n";
  }
  summary += "mean," + fmt(result.mean.back().mse) + ",,,,,,,\n";
  write_file_atomic(config.out / "summary.txt", summary);
  return result;
}

std::vector<std::filesystem::path> cmd_curves(const ExperimentConfig& config, std::size_t n_pixels,
                                              std::size_t n_samples) {
  if (n_pixels < 1) throw ConfigError("curves: pixels must be at least 1");
  if (n_samples < 2) throw ConfigError("curves: samples must be at least 2");
  if (n_pixels > config.slm.pixels()) throw ConfigError("curves: more pixels requested than the SLM has");
  const TargetField target = load_target(config);
  make_dir(config.out);
  const std::uint64_t seed = config.seeds.front();
  const RunState state(config.slm, config.domain, target, config.init, seed);

  Rng picker = Rng::for_run(seed, 1);
  std::set<std::size_t> chosen;
  std::vector<std::size_t> order;
  while (order.size() < n_pixels) {
    const std::size_t i = picker.below(state.pixels());
    if (chosen.insert(i).second) order.push_back(i);
  }
  std::vector<std::filesystem::path> paths(n_pixels);
  for_each_parallel(n_pixels, config.threads, [&](std::size_t k) {
    const std::size_t i = order[k];
    const oracle::SweepCurve curve =
        oracle::pixel_sweep(state, i % config.slm.nx, i / config.slm.nx, n_samples);
    paths[k] = config.out / ("curve_" + std::to_string(k) + ".csv");
    oracle::write_sweep_csv(paths[k], curve);
  });
  return paths;
}

std::optional<std::uint64_t> iterations_to_reach(const std::vector<LogRow>& curve, double target) {
  for (const LogRow& row : curve) {
    if (row.mse <= target) return row.iteration;
  }
  return std::nullopt;
}

std::vector<CompareRow> compare_curves(const std::vector<std::string>& algorithms,
                                       const std::vector<std::vector<LogRow>>& curves) {
  if (curves.empty() || curves.size() != algorithms.size()) {
    throw InvalidInput("compare_curves: one algorithm name per curve required");
  }
  for (const auto& c : curves) {
    if (c.empty()) throw InvalidInput("compare_curves: empty curve");
  }
  const double target = curves.front().back().mse;
  const double base_final = curves.front().back().mse;
  const std::optional<std::uint64_t> base_iters = iterations_to_reach(curves.front(), target);
  std::vector<CompareRow> rows;
  for (std::size_t i = 0; i < curves.size(); ++i) {
    CompareRow row;
    row.algorithm = algorithms[i];
    row.final_mse = curves[i].back().mse;
    row.final_mse_ratio = base_final > 0.0 ? row.final_mse / base_final
                                           : (row.final_mse == 0.0 ? 1.0 : INFINITY);
    row.iterations_to_target = iterations_to_reach(curves[i], target);
    if (row.iterations_to_target && base_iters) {
      if (*base_iters > 0) {
        row.iterations_ratio =
            static_cast<double>(*row.iterations_to_target) / static_cast<double>(*base_iters);
      } else if (*row.iterations_to_target == 0) {
        row.iterations_ratio = 1.0;
      }
    }
    rows.push_back(row);
  }
  return rows;
}

void check_comparable(const std::vector<ExperimentConfig>& configs) {
  if (configs.size() < 2) throw ConfigError("compare: at least two configs are required");
  auto key = [](const ExperimentConfig& c) {
    KeyValues kv = c.echo();
    kv.erase("algorithm");
    kv.erase("out");
    kv.erase("threads");
    return kv;
  };
  const KeyValues first = key(configs.front());
  for (std::size_t i = 1; i < configs.size(); ++i) {
    const KeyValues other = key(configs[i]);
    for (const auto& [k, v] : first) {
      if (other.at(k) != v) {
        throw ConfigError("compare: config " + std::to_string(i + 1) + " differs from config 1 in '" +
                          k + "' (" + other.at(k) + " vs " + v + "); only algorithm may differ");
      }
    }
  }
}

std::vector<CompareRow> cmd_compare(const std::vector<ExperimentConfig>& configs,
                                    const std::filesystem::path& out) {
  check_comparable(configs);
  make_dir(out);
  std::vector<std::string> names;
  std::vector<std::vector<LogRow>> curves;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    ExperimentConfig c = configs[i];
    const std::string name(to_string(c.algorithm));
    c.out = out / (std::to_string(i + 1) + "_" + name);
    curves.push_back(cmd_run(c).mean);
    names.push_back(name);
  }
  const std::vector<CompareRow> rows = compare_curves(names, curves);

  std::string csv = "# hps_bench compare\n";
  for (const std::string& line : config_header(configs.front())) {
    if (line.rfind("algorithm=", 0) != 0) csv += "# " + line + "\n";
  }
  csv += "# target_mse=" + fmt(curves.front().back().mse) + "\n";
  csv += "algorithm,final_mse,final_mse_ratio,iterations_to_target,iterations_ratio\n";
  for (const CompareRow& r : rows) {
    csv += r.algorithm + "," + fmt(r.final_mse) + "," + fmt(r.final_mse_ratio) + ",";
    csv += (r.iterations_to_target ? std::to_string(*r.iterations_to_target) : "not_reached") + ",";
    csv += (r.iterations_ratio ? fmt(*r.iterations_ratio) : "not_reached") + "\n";
  }
  write_file_atomic(out / "compare.csv", csv);
  return rows;
}

}  // namespace hps::bench
