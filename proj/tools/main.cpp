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

#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hps_bench/config.hpp"
#include "hps_bench/experiment.hpp"

namespace {

using hps::bench::KeyValues;

enum ExitCode { kOk = 0, kConfig = 1, kIo = 2, kInternal = 3 };

// One --key option per configuration key, collected as overrides.
void add_key_options(CLI::App* app, std::map<std::string, std::string>& overrides) {
  for (const auto& info : hps::bench::config_keys()) {
    std::string key = info.key;
    std::string names = "--" + key;
    if (key.find('_') != std::string::npos) {
      std::string dashed = key;
      std::replace(dashed.begin(), dashed.end(), '_', '-');
      names += ",--" + dashed;
    }
    app->add_option_function<std::string>(
           names, [&overrides, key](const std::string& v) { overrides[key] = v; },
           std::string(info.help) + " [default: " + info.default_value + "]")
        ->type_name("VALUE");
  }
}

KeyValues merged(const std::string& config_file, const std::map<std::string, std::string>& overrides) {
  KeyValues kv;
  if (!config_file.empty()) kv = hps::bench::read_config_file(config_file);
  for (const auto& [k, v] : overrides) kv[k] = v;
  return kv;
}

void print_compare(const std::vector<hps::bench::CompareRow>& rows) {
  std::printf("%-6s %14s %10s %14s %10s\n", "algo", "final_mse", "ratio", "iters_to_tgt", "ratio");
  for (const auto& r : rows) {
    const std::string iters = r.iterations_to_target ? std::to_string(*r.iterations_to_target) : "not_reached";
    const std::string ratio = r.iterations_ratio ? std::to_string(*r.iterations_ratio) : "not_reached";
    std::printf("%-6s %14.6g %10.4f %14s %10s\n", r.algorithm.c_str(), r.final_mse, r.final_mse_ratio,
                iters.c_str(), ratio.c_str());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hps_bench: holographic search experiments (direct search, annealing, predictive search)"};
  app.require_subcommand(1);

  std::map<std::string, std::string> run_overrides, curves_overrides, compare_overrides;
  std::string run_config, curves_config;
  std::vector<std::string> compare_configs;
  std::string compare_out = "compare_out";
  std::size_t pixels = 10, samples = 256;

  CLI::App* run = app.add_subcommand("run", "run every seed of one experiment and log convergence");
  run->add_option("-c,--config", run_config, "key = value configuration file")->check(CLI::ExistingFile);
  add_key_options(run, run_overrides);

  CLI::App* curves = app.add_subcommand("curves", "sweep single-pixel error curves on the initial hologram");
  curves->add_option("-c,--config", curves_config, "key = value configuration file")->check(CLI::ExistingFile);
  curves->add_option("--pixels", pixels, "number of random pixels")->capture_default_str();
  curves->add_option("--samples", samples, "samples per curve")->capture_default_str();
  add_key_options(curves, curves_overrides);

  CLI::App* compare = app.add_subcommand("compare", "run configs that differ only in algorithm and tabulate");
  compare->add_option("configs", compare_configs, "configuration files (the first is the baseline)")
      ->required()
      ->check(CLI::ExistingFile);
  compare->add_option("--compare-out", compare_out, "directory for compare.csv and the runs")
      ->capture_default_str();
  add_key_options(compare, compare_overrides);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*run) {
      const auto config = hps::bench::make_config(merged(run_config, run_overrides));
      const auto result = hps::bench::cmd_run(config);
      std::printf("wrote %zu run(s) to %s, mean final mse %.6g\n", result.seeds.size(),
                  config.out.string().c_str(), result.mean.back().mse);
    } else if (*curves) {
      const auto config = hps::bench::make_config(merged(curves_config, curves_overrides));
      const auto paths = hps::bench::cmd_curves(config, pixels, samples);
      std::printf("wrote %zu curve(s) to %s\n", paths.size(), config.out.string().c_str());
    } else if (*compare) {
      std::vector<hps::bench::ExperimentConfig> configs;
      for (const std::string& path : compare_configs) {
        configs.push_back(hps::bench::make_config(merged(path, compare_overrides)));
      }
      print_compare(hps::bench::cmd_compare(configs, compare_out));
    }
  } catch (const hps::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kConfig;
  } catch (const hps::InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kConfig;
  } catch (const hps::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kOk;
}
