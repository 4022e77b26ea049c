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

#include <filesystem>

#include "hps/field.hpp"

namespace hps {

// Binary greymap (P5) I/O. Samples wider than 8 bits are big-endian, one
// 16-bit word per pixel. Row 0 of the file is y = 0.

/// Reads a P5 file and returns samples divided by the header maxval, so 255
/// in an 8-bit file and 65535 in a 16-bit file both map to 1.0.
/// Throws IoError (missing, truncated) or FormatError (not P5, bad maxval).
RealGrid read_pgm(const std::filesystem::path& path);

/// Writes values clamped to [0, 1] and scaled to maxval 255 (bit_depth 8) or
/// 65535 (bit_depth 16). Writes to a temporary sibling and renames it into
/// place.
void write_pgm(const std::filesystem::path& path, const RealGrid& image, int bit_depth = 8);

}  // namespace hps
