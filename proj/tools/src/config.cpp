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

#include "hps_bench/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

namespace hps::bench {
namespace {

constexpr std::array<KeyInfo, 22> kKeys{{
    {"algorithm", "hps", "search engine: ds | sa | hps"},
    {"modulation", "phase", "SLM modulation: phase | amplitude"},
    {"sensitivity", "insensitive", "replay metric: sensitive (complex) | insensitive (magnitude)"},
    {"domain", "fraunhofer", "diffraction domain: fraunhofer | fresnel"},
    {"wavelength", "6.33e-7", "Fresnel wavelength in meters"},
    {"distance", "0.1", "Fresnel propagation distance in meters (nonzero)"},
    {"pitch", "8e-6", "Fresnel SLM pixel pitch in meters"},
    {"levels", "256", "number of SLM levels (>= 2)"},
    {"nx", "128", "SLM width in pixels"},
    {"ny", "128", "SLM height in pixels"},
    {"target", "builtin", "amplitude image: builtin | path to a P5 PGM"},
    {"phase_target", "auto",
     "phase image in turns: auto | none | builtin | PGM path (sensitive targets only)"},
    {"layout", "auto", "target placement: auto | full | quadrant (auto: quadrant when sensitive)"},
    {"init", "backprojection", "initial hologram: backprojection | random"},
    {"iterations", "100000", "steps per run (>= 1)"},
    {"seeds", "1", "comma-separated run seeds"},
    {"checkpoint_every", "1000", "log interval in steps (>= 1)"},
    {"resync_every", "10000", "full-transform resync interval in steps (0 = never)"},
    {"sa_t0", "0", "annealing start temperature, unnormalized error units (0 = automatic)"},
    {"sa_gamma", "0", "annealing decay per step in (0, 1] (0 = automatic)"},
    {"out", "out", "output directory"},
    {"threads", "1", "runs executed in parallel (0 = all cores)"},
}};

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value,
                            const std::string& expected) {
  throw ConfigError("invalid value '" + value + "' for " + key + ": expected " + expected);
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  std::uint64_t out = 0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (value.empty() || ec != std::errc{} || ptr != end) bad_value(key, value, "a non-negative integer");
  return out;
}

double parse_double(const std::string& key, const std::string& value) {
  double out = 0.0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (value.empty() || ec != std::errc{} || ptr != end || !std::isfinite(out)) {
    bad_value(key, value, "a finite number");
  }
  return out;
}

std::string format_double(double v) {
  // Shortest representation that reads back to the same double.
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, result.ptr);
}

}  // namespace

std::span<const KeyInfo> config_keys() { return kKeys; }

std::string canonical_key(const std::string& key) {
  std::string k = key;
  std::replace(k.begin(), k.end(), '-', '_');
  for (const KeyInfo& info : kKeys) {
    if (k == info.key) return k;
  }
  throw ConfigError("unknown configuration key '" + key + "'");
}

KeyValues parse_key_values(const std::string& text, const std::string& origin) {
  KeyValues out;
  std::istringstream in(text);
  std::string line;
  for (int number = 1; std::getline(in, line); ++number) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = origin + ":" + std::to_string(number);
    if (eq == std::string::npos) throw ConfigError(where + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError(where + ": missing key");
    try {
      out[canonical_key(key)] = trim(line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError(where + ": " + e.what());
    }
  }
  return out;
}

KeyValues read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_key_values(text.str(), path.string());
}

KeyValues ExperimentConfig::echo() const {
  KeyValues kv;
  kv["algorithm"] = std::string(to_string(algorithm));
  kv["modulation"] = slm.is_phase() ? "phase" : "amplitude";
  kv["sensitivity"] = sensitivity == Sensitivity::Sensitive ? "sensitive" : "insensitive";
  kv["domain"] = domain.is_fresnel() ? "fresnel" : "fraunhofer";
  kv["wavelength"] = format_double(domain.wavelength);
  kv["distance"] = format_double(domain.distance);
  kv["pitch"] = format_double(domain.pitch);
  kv["levels"] = std::to_string(slm.levels);
  kv["nx"] = std::to_string(slm.nx);
  kv["ny"] = std::to_string(slm.ny);
  kv["target"] = target;
  kv["phase_target"] = phase_target;
  kv["layout"] = layout == TargetLayout::Quadrant ? "quadrant" : "full";
  kv["init"] = init == InitMode::BackProjection ? "backprojection" : "random";
  kv["iterations"] = std::to_string(iterations);
  std::string s;
  for (std::size_t i = 0; i < seeds.size(); ++i) s += (i ? "," : "") + std::to_string(seeds[i]);
  kv["seeds"] = s;
  kv["checkpoint_every"] = std::to_string(checkpoint_every);
  kv["resync_every"] = std::to_string(resync_every);
  kv["sa_t0"] = format_double(sa.initial_temperature);
  kv["sa_gamma"] = format_double(sa.decay);
  kv["out"] = out.string();
  kv["threads"] = std::to_string(threads);
  return kv;
}

ExperimentConfig make_config(const KeyValues& values) {
  KeyValues kv;
  for (const KeyInfo& info : kKeys) kv[info.key] = info.default_value;
  for (const auto& [key, value] : values) kv[canonical_key(key)] = value;

  auto choice = [&](const std::string& key, std::initializer_list<const char*> options) {
    const std::string& v = kv.at(key);
    std::string expected;
    for (const char* o : options) {
      if (v == o) return v;
      expected += (expected.empty() ? "" : " | ") + std::string(o);
    }
    bad_value(key, v, expected);
  };

  ExperimentConfig c;
  const std::string algorithm = choice("algorithm", {"ds", "sa", "hps"});
  c.algorithm = algorithm == "ds"   ? Algorithm::DirectSearch
                : algorithm == "sa" ? Algorithm::SimulatedAnnealing
                                    : Algorithm::PredictiveSearch;
  c.slm.modulation =
      choice("modulation", {"phase", "amplitude"}) == "phase" ? Modulation::Phase : Modulation::Amplitude;
  c.sensitivity = choice("sensitivity", {"sensitive", "insensitive"}) == "sensitive"
                      ? Sensitivity::Sensitive
                      : Sensitivity::Insensitive;
  const bool sensitive = c.sensitivity == Sensitivity::Sensitive;

  const bool fresnel = choice("domain", {"fraunhofer", "fresnel"}) == "fresnel";
  const double wavelength = parse_double("wavelength", kv.at("wavelength"));
  const double distance = parse_double("distance", kv.at("distance"));
  const double pitch = parse_double("pitch", kv.at("pitch"));
  if (fresnel) {
    if (!(wavelength > 0.0)) bad_value("wavelength", kv.at("wavelength"), "a positive length");
    if (distance == 0.0) bad_value("distance", kv.at("distance"), "a nonzero length");
    if (!(pitch > 0.0)) bad_value("pitch", kv.at("pitch"), "a positive length");
    c.domain = DomainSpec::fresnel(wavelength, distance, pitch);
  } else {
    c.domain = DomainSpec::fraunhofer();
    c.domain.wavelength = wavelength;
    c.domain.distance = distance;
    c.domain.pitch = pitch;
  }

  const std::uint64_t levels = parse_u64("levels", kv.at("levels"));
  if (levels < 2 || levels > 65536) bad_value("levels", kv.at("levels"), "an integer in [2, 65536]");
  c.slm.levels = static_cast<int>(levels);
  c.slm.nx = parse_u64("nx", kv.at("nx"));
  c.slm.ny = parse_u64("ny", kv.at("ny"));
  if (c.slm.nx < 1 || c.slm.nx > 8192) bad_value("nx", kv.at("nx"), "an integer in [1, 8192]");
  if (c.slm.ny < 1 || c.slm.ny > 8192) bad_value("ny", kv.at("ny"), "an integer in [1, 8192]");

  c.target = kv.at("target");
  if (c.target.empty()) bad_value("target", c.target, "builtin or a file path");
  c.phase_target = kv.at("phase_target");
  if (c.phase_target.empty()) bad_value("phase_target", c.phase_target, "auto, none, builtin or a path");
  if (c.phase_target == "auto") c.phase_target = sensitive ? "builtin" : "none";
  if (!sensitive && c.phase_target != "none") {
    throw ConfigError("phase_target '" + c.phase_target +
                      "' given for a phase-insensitive target; use sensitivity = sensitive");
  }

  const std::string layout = choice("layout", {"auto", "full", "quadrant"});
  c.layout = layout == "auto"   ? default_layout(c.sensitivity)
             : layout == "full" ? TargetLayout::Full
                                : TargetLayout::Quadrant;
  // Quadrant embedding halves the grid; point symmetrization needs even sides.
  std::size_t need = 1;
  if (c.layout == TargetLayout::Quadrant) need *= 2;
  if (!c.slm.is_phase()) need *= 2;
  if (c.slm.nx % need != 0) {
    bad_value("nx", kv.at("nx"), "a multiple of " + std::to_string(need) + " for this layout");
  }
  if (c.slm.ny % need != 0) {
    bad_value("ny", kv.at("ny"), "a multiple of " + std::to_string(need) + " for this layout");
  }

  c.init = choice("init", {"backprojection", "random"}) == "backprojection" ? InitMode::BackProjection
                                                                           : InitMode::Uniform;

  c.iterations = parse_u64("iterations", kv.at("iterations"));
  if (c.iterations < 1) bad_value("iterations", kv.at("iterations"), "at least 1");
  c.checkpoint_every = parse_u64("checkpoint_every", kv.at("checkpoint_every"));
  if (c.checkpoint_every < 1) bad_value("checkpoint_every", kv.at("checkpoint_every"), "at least 1");
  c.resync_every = parse_u64("resync_every", kv.at("resync_every"));

  c.seeds.clear();
  std::set<std::uint64_t> seen;
  std::istringstream seeds(kv.at("seeds"));
  for (std::string item; std::getline(seeds, item, ',');) {
    const std::uint64_t s = parse_u64("seeds", trim(item));
    if (!seen.insert(s).second) bad_value("seeds", kv.at("seeds"), "distinct seeds");
    c.seeds.push_back(s);
  }
  if (c.seeds.empty()) bad_value("seeds", kv.at("seeds"), "at least one seed");

  c.sa.initial_temperature = parse_double("sa_t0", kv.at("sa_t0"));
  if (c.sa.initial_temperature < 0.0) bad_value("sa_t0", kv.at("sa_t0"), "a non-negative number");
  c.sa.decay = parse_double("sa_gamma", kv.at("sa_gamma"));
  if (c.sa.decay < 0.0 || c.sa.decay > 1.0) bad_value("sa_gamma", kv.at("sa_gamma"), "a number in [0, 1]");

  c.out = kv.at("out");
  if (c.out.empty()) bad_value("out", kv.at("out"), "a directory path");
  const std::uint64_t threads = parse_u64("threads", kv.at("threads"));
  if (threads > 1024) bad_value("threads", kv.at("threads"), "at most 1024");
  c.threads = threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                           : static_cast<unsigned>(threads);
  return c;
}

TargetField load_target(const ExperimentConfig& config) {
  const SlmSpec& s = config.slm;
  const RealGrid amplitude =
      config.target == "builtin" ? synthetic_amplitude(s.nx, s.ny) : load_image(config.target);
  std::optional<RealGrid> phase;
  if (config.phase_target == "builtin") {
    phase = synthetic_phase(s.nx, s.ny);
  } else if (config.phase_target != "none") {
    phase = load_image(config.phase_target);
  }
  return prepare_target(amplitude, phase, s, config.sensitivity, config.layout);
}

}  // namespace hps::bench
