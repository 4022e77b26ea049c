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
#include <map>
#include <span>
#include <string>
#include <vector>

#include "hps/field.hpp"
#include "hps/search.hpp"
#include "hps/slm.hpp"
#include "hps/targets.hpp"

namespace hps::bench {

/// Raw settings, key -> value, before validation.
using KeyValues = std::map<std::string, std::string>;

struct KeyInfo {
  const char* key;
  const char* default_value;
  const char* help;
};

/// Every accepted key in canonical order, with its default and description.
std::span<const KeyInfo> config_keys();

/// Parses "key = value" lines. '#' starts a comment, blank lines are skipped.
/// Keys may use '-' or '_'. Unknown keys and malformed lines are ConfigErrors
/// naming the line.
KeyValues parse_key_values(const std::string& text, const std::string& origin);
KeyValues read_config_file(const std::filesystem::path& path);

/// Canonical key spelling ('-' becomes '_'); throws ConfigError for unknown keys.
std::string canonical_key(const std::string& key);

struct ExperimentConfig {
  Algorithm algorithm = Algorithm::PredictiveSearch;
  SlmSpec slm;
  Sensitivity sensitivity = Sensitivity::Insensitive;
  DomainSpec domain;
  std::string target = "builtin";
  std::string phase_target = "auto";  // resolved: "none", "builtin" or a path
  TargetLayout layout = TargetLayout::Full;
  InitMode init = InitMode::BackProjection;
  std::uint64_t iterations = 100000;
  std::vector<std::uint64_t> seeds{1};
  std::uint64_t checkpoint_every = 1000;
  std::uint64_t resync_every = 10000;
  SaSchedule sa;
  std::filesystem::path out = "out";
  unsigned threads = 1;

  /// All settings as canonical key=value pairs, for artifact headers.
  KeyValues echo() const;
};

/// Fills defaults for missing keys, then validates every field. Errors are
/// ConfigErrors naming the offending key.
ExperimentConfig make_config(const KeyValues& values);

/// Loads the target described by the config (image files or the synthetic
/// pattern) and applies the preparation protocol.
TargetField load_target(const ExperimentConfig& config);

}  // namespace hps::bench
