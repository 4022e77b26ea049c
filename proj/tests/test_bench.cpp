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
#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "hps_bench/config.hpp"
#include "hps_bench/experiment.hpp"

namespace hps::bench {
namespace {

namespace fs = std::filesystem;

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("hps_bench_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

KeyValues small(const fs::path& out) {
  return {{"nx", "16"},          {"ny", "16"},          {"iterations", "300"},
          {"checkpoint_every", "100"}, {"resync_every", "150"}, {"seeds", "3,4"},
          {"out", out.string()}};
}

// --- configuration -----------------------------------------------------------

TEST(Config, ParsesCommentsAndWhitespace) {
  const KeyValues kv = parse_key_values("# header\n  levels = 16  # trailing\n\nnx=8\n", "t");
  EXPECT_EQ(kv.at("levels"), "16");
  EXPECT_EQ(kv.at("nx"), "8");
  EXPECT_EQ(kv.size(), 2u);
}

TEST(Config, SyntaxErrorsNameTheLine) {
  try {
    parse_key_values("nx = 8\nthis line is wrong\n", "cfg.txt");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("cfg.txt:2"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse_key_values("bogus_key = 1\n", "t"), ConfigError);
}

TEST(Config, CanonicalKeys) {
  EXPECT_EQ(canonical_key("checkpoint-every"), "checkpoint_every");
  EXPECT_EQ(canonical_key("nx"), "nx");
}

TEST(Config, DefaultsAreValid) {
  const ExperimentConfig c = make_config({});
  EXPECT_EQ(c.algorithm, Algorithm::PredictiveSearch);
  EXPECT_EQ(c.slm.levels, 256);
  EXPECT_EQ(c.slm.nx, 128u);
  EXPECT_EQ(c.layout, TargetLayout::Full);
  EXPECT_EQ(c.phase_target, "none");
  EXPECT_EQ(c.seeds, std::vector<std::uint64_t>{1});
  EXPECT_EQ(config_keys().size(), c.echo().size());
}

TEST(Config, SensitiveDefaultsResolve) {
  const ExperimentConfig c = make_config({{"sensitivity", "sensitive"}});
  EXPECT_EQ(c.layout, TargetLayout::Quadrant);
  EXPECT_EQ(c.phase_target, "builtin");
}

TEST(Config, EchoRoundTrips) {
  const ExperimentConfig a = make_config({{"algorithm", "sa"}, {"domain", "fresnel"},
                                          {"seeds", "5,9"}, {"modulation", "amplitude"},
                                          {"levels", "16"}});
  const ExperimentConfig b = make_config(a.echo());
  EXPECT_EQ(a.echo(), b.echo());
}

TEST(Config, InvalidValuesAreConfigErrors) {
  const KeyValues bad[] = {
      {{"levels", "1"}},
      {{"levels", "abc"}},
      {{"algorithm", "ga"}},
      {{"nx", "0"}},
      {{"iterations", "0"}},
      {{"seeds", "1,1"}},
      {{"seeds", ""}},
      {{"domain", "fresnel"}, {"wavelength", "-1"}},
      {{"domain", "fresnel"}, {"distance", "0"}},
      {{"layout", "quadrant"}, {"nx", "15"}},
      {{"modulation", "amplitude"}, {"ny", "6"}, {"layout", "quadrant"}},
      {{"phase_target", "builtin"}},
      {{"threads", "2000"}},
  };
  for (const KeyValues& kv : bad) {
    std::string desc;
    for (const auto& [k, v] : kv) desc += k + "=" + v + " ";
    EXPECT_THROW(make_config(kv), ConfigError) << desc;
  }
}

TEST(Config, MissingFileIsIoError) {
  EXPECT_THROW(read_config_file("/nonexistent/hps.cfg"), IoError);
}

TEST(Config, MissingTargetImageIsIoError) {
  const ExperimentConfig c = make_config({{"target", "/nonexistent/target.pgm"}, {"nx", "16"},
                                          {"ny", "16"}});
  EXPECT_THROW(load_target(c), IoError);
}

// --- CSV and curves ---------------------------------------------------------------

TEST(LogCsv, RoundTripsExactly) {
  const fs::path dir = scratch("csv");
  const std::vector<LogRow> rows{{0, 0.1, 0}, {1000, 1.0 / 3.0, 17}, {1500, 2.5e-17, 18.5}};
  write_file_atomic(dir / "log.csv", format_log_csv({"a=1", "b=two"}, rows));
  const LogFile f = read_log_csv(dir / "log.csv");
  EXPECT_EQ(f.header, (std::vector<std::string>{"a=1", "b=two"}));
  ASSERT_EQ(f.rows.size(), 3u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(f.rows[i].iteration, rows[i].iteration);
    EXPECT_EQ(f.rows[i].mse, rows[i].mse);
    EXPECT_EQ(f.rows[i].accepted, rows[i].accepted);
  }
  EXPECT_EQ(slurp(dir / "log.csv").substr(0, 19), "# a=1\n# b=two\nitera");
}

TEST(LogCsv, MalformedRowsAreFormatErrors) {
  const fs::path dir = scratch("badcsv");
  write_file_atomic(dir / "bad.csv", "iteration,mse,accepted\n1,xyz,0\n");
  EXPECT_THROW(read_log_csv(dir / "bad.csv"), FormatError);
  EXPECT_THROW(read_log_csv(dir / "absent.csv"), IoError);
}

TEST(MeanCurve, AveragesPointwise) {
  SeedResult a, b;
  a.rows = {{0, 1.0, 0}, {10, 0.5, 3}};
  b.rows = {{0, 3.0, 0}, {10, 0.25, 4}};
  const std::vector<LogRow> m = mean_curve({a, b});
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m[0].mse, 2.0);
  EXPECT_EQ(m[1].mse, 0.375);
  EXPECT_EQ(m[1].accepted, 3.5);
  b.rows.pop_back();
  EXPECT_THROW(mean_curve({a, b}), InvariantViolation);
}

TEST(Compare, IdenticalCurvesGiveUnitRatios) {
  const std::vector<LogRow> c{{0, 1.0, 0}, {100, 0.5, 1}, {200, 0.2, 2}};
  const auto rows = compare_curves({"ds", "hps"}, {c, c});
  for (const CompareRow& r : rows) {
    EXPECT_EQ(r.final_mse_ratio, 1.0);
    ASSERT_TRUE(r.iterations_ratio);
    EXPECT_EQ(*r.iterations_ratio, 1.0);
    EXPECT_EQ(*r.iterations_to_target, 200u);
  }
}

TEST(Compare, FasterAndUnreachedCurves) {
  const std::vector<LogRow> base{{0, 1.0, 0}, {100, 0.5, 1}, {200, 0.2, 2}};
  const std::vector<LogRow> fast{{0, 1.0, 0}, {100, 0.1, 1}, {200, 0.05, 2}};
  const std::vector<LogRow> slow{{0, 1.0, 0}, {100, 0.9, 1}, {200, 0.8, 2}};
  const auto rows = compare_curves({"ds", "hps", "sa"}, {base, fast, slow});
  EXPECT_EQ(*rows[1].iterations_to_target, 100u);
  EXPECT_EQ(*rows[1].iterations_ratio, 0.5);
  EXPECT_EQ(rows[1].final_mse_ratio, 0.25);
  EXPECT_FALSE(rows[2].iterations_to_target);
  EXPECT_FALSE(rows[2].iterations_ratio);
  EXPECT_EQ(iterations_to_reach(base, 0.5), 100u);
  EXPECT_THROW(compare_curves({"ds"}, {base, fast}), InvalidInput);
}

TEST(Compare, RejectsConfigsDifferingBeyondAlgorithm) {
  const ExperimentConfig a = make_config({{"algorithm", "ds"}});
  const ExperimentConfig b = make_config({{"algorithm", "hps"}, {"threads", "4"}, {"out", "x"}});
  const ExperimentConfig c = make_config({{"algorithm", "hps"}, {"levels", "16"}});
  EXPECT_NO_THROW(check_comparable({a, b}));
  EXPECT_THROW(check_comparable({a, c}), ConfigError);
  EXPECT_THROW(check_comparable({a}), ConfigError);
}

// --- commands ---------------------------------------------------------------

TEST(CmdRun, WritesArtifactsAndIsReproducible) {
  const fs::path dir = scratch("run");
  KeyValues kv = small(dir / "first");
  kv["sensitivity"] = "sensitive";
  const RunResult r = cmd_run(make_config(kv));
  ASSERT_EQ(r.seeds.size(), 2u);
  EXPECT_EQ(r.mean.size(), 4u);
  for (const char* name : {"run_seed3.csv", "run_seed4.csv", "mean.csv", "summary.txt",
                           "recon_seed3_magnitude.pgm", "recon_seed3_phase.pgm",
                           "recon_seed4_magnitude.pgm", "recon_seed4_phase.pgm"}) {
    EXPECT_TRUE(fs::exists(dir / "first" / name)) << name;
  }
  const LogFile log = read_log_csv(dir / "first" / "run_seed3.csv");
  EXPECT_EQ(log.rows.size(), 4u);
  EXPECT_EQ(log.rows.back().mse, r.seeds[0].rows.back().mse);

  kv["out"] = (dir / "second").string();
  kv["threads"] = "2";
  cmd_run(make_config(kv));
  for (const char* name : {"run_seed3.csv", "run_seed4.csv", "mean.csv"}) {
    EXPECT_EQ(slurp(dir / "first" / name), slurp(dir / "second" / name)) << name;
  }
  fs::remove_all(dir);
}

TEST(CmdCurves, WritesOneFilePerPixel) {
  const fs::path dir = scratch("curves");
  const auto paths = cmd_curves(make_config(small(dir)), 4, 64);
  ASSERT_EQ(paths.size(), 4u);
  for (const fs::path& p : paths) {
    const std::string text = slurp(p);
    EXPECT_EQ(text.rfind("# pixel ", 0), 0u);
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 66);
  }
  fs::remove_all(dir);
}

TEST(CmdCompare, WritesTable) {
  const fs::path dir = scratch("compare");
  KeyValues kv = small(dir / "unused");
  kv["algorithm"] = "ds";
  const ExperimentConfig ds = make_config(kv);
  kv["algorithm"] = "hps";
  const ExperimentConfig hps = make_config(kv);
  const auto rows = cmd_compare({ds, hps}, dir);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].algorithm, "ds");
  EXPECT_EQ(rows[0].final_mse_ratio, 1.0);
  const std::string csv = slurp(dir / "compare.csv");
  EXPECT_NE(csv.find("algorithm,final_mse,final_mse_ratio,iterations_to_target,iterations_ratio"),
            std::string::npos);
  fs::remove_all(dir);
}

// --- executable -------------------------------------------------------------

int exit_code(const std::string& args) {
  const std::string cmd = std::string(HPS_BENCH_EXE) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(Cli, ExitCodes) {
  const fs::path dir = scratch("cli");
  const std::string out = " --out " + (dir / "o").string();
  EXPECT_EQ(exit_code("--help"), 0);
  EXPECT_EQ(exit_code("run --nx 16 --ny 16 --iterations 50 --checkpoint-every 10" + out), 0);
  EXPECT_TRUE(fs::exists(dir / "o" / "mean.csv"));
  EXPECT_EQ(exit_code("run --levels 1" + out), 1);
  EXPECT_EQ(exit_code("run --no-such-flag 3" + out), 1);
  EXPECT_EQ(exit_code("run --target /nonexistent/target.pgm --nx 16 --ny 16" + out), 2);

  std::ofstream(dir / "a.cfg") << "nx = 16\nny = 16\niterations = 40\ncheckpoint_every = 20\n"
                                  "algorithm = ds\n";
  std::ofstream(dir / "b.cfg") << "nx = 16\nny = 16\niterations = 40\ncheckpoint_every = 20\n"
                                  "algorithm = hps\n";
  EXPECT_EQ(exit_code("compare " + (dir / "a.cfg").string() + " " + (dir / "b.cfg").string() +
                      " --compare-out " + (dir / "cmp").string()),
            0);
  EXPECT_TRUE(fs::exists(dir / "cmp" / "compare.csv"));
  EXPECT_EQ(exit_code("curves -c " + (dir / "a.cfg").string() + " --pixels 2 --samples 8" + out),
            0);
  fs::remove_all(dir);
}

}  // namespace
}  // namespace hps::bench
