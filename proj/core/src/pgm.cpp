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

#include "hps/pgm.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <string>
#include <vector>

namespace hps {
namespace {

// Next whitespace-delimited header token, skipping '#' comments.
std::string header_token(std::istream& in, const std::string& where) {
  std::string token;
  int c = in.get();
  while (c != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = in.get();
    } else if (std::isspace(c)) {
      c = in.get();
    } else {
      break;
    }
  }
  while (c != EOF && !std::isspace(c) && c != '#') {
    token.push_back(static_cast<char>(c));
    c = in.get();
  }
  if (c == '#') in.unget();
  if (token.empty()) throw FormatError(where + ": truncated PGM header");
  // Exactly one whitespace byte separates maxval from the raster; it was
  // consumed above.
  return token;
}

unsigned long header_number(std::istream& in, const std::string& where) {
  const std::string tok = header_token(in, where);
  if (!std::all_of(tok.begin(), tok.end(), [](unsigned char ch) { return std::isdigit(ch); })) {
    throw FormatError(where + ": bad PGM header field '" + tok + "'");
  }
  try {
    return std::stoul(tok);
  } catch (const std::exception&) {
    throw FormatError(where + ": PGM header field out of range '" + tok + "'");
  }
}

}  // namespace

RealGrid read_pgm(const std::filesystem::path& path) {
  const std::string where = path.string();
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(where + ": cannot open");

  char magic[2] = {0, 0};
  in.read(magic, 2);
  if (in.gcount() != 2) throw FormatError(where + ": empty or truncated file");
  if (magic[0] != 'P' || magic[1] != '5') throw FormatError(where + ": not a binary PGM (P5)");

  const unsigned long width = header_number(in, where);
  const unsigned long height = header_number(in, where);
  const unsigned long maxval = header_number(in, where);
  if (width == 0 || height == 0) throw FormatError(where + ": zero image dimension");
  if (maxval == 0 || maxval > 65535) {
    throw FormatError(where + ": unsupported maxval " + std::to_string(maxval));
  }

  const std::size_t bytes_per_sample = maxval > 255 ? 2 : 1;
  std::vector<unsigned char> raster(width * height * bytes_per_sample);
  in.read(reinterpret_cast<char*>(raster.data()), static_cast<std::streamsize>(raster.size()));
  if (static_cast<std::size_t>(in.gcount()) != raster.size()) {
    throw IoError(where + ": truncated raster");
  }

  RealGrid image(width, height);
  const double scale = 1.0 / static_cast<double>(maxval);
  for (std::size_t i = 0; i < image.size(); ++i) {
    unsigned sample = bytes_per_sample == 2
                          ? (unsigned{raster[2 * i]} << 8) | unsigned{raster[2 * i + 1]}
                          : unsigned{raster[i]};
    if (sample > maxval) throw FormatError(where + ": sample exceeds maxval");
    image[i] = sample * scale;
  }
  return image;
}

void write_pgm(const std::filesystem::path& path, const RealGrid& image, int bit_depth) {
  if (image.empty()) throw_invalid("write_pgm: empty image");
  if (bit_depth != 8 && bit_depth != 16) throw_invalid("write_pgm: bit depth must be 8 or 16");
  const unsigned maxval = bit_depth == 8 ? 255u : 65535u;

  std::vector<unsigned char> raster;
  raster.reserve(image.size() * (bit_depth / 8));
  for (double v : image.values()) {
    const double clamped = std::isfinite(v) ? std::clamp(v, 0.0, 1.0) : 0.0;
    const auto s = static_cast<unsigned>(std::lround(clamped * maxval));
    if (bit_depth == 16) raster.push_back(static_cast<unsigned char>(s >> 8));
    raster.push_back(static_cast<unsigned char>(s & 0xff));
  }

  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(tmp.string() + ": cannot open for writing");
    out << "P5\n" << image.nx() << ' ' << image.ny() << '\n' << maxval << '\n';
    out.write(reinterpret_cast<const char*>(raster.data()),
              static_cast<std::streamsize>(raster.size()));
    if (!out) throw IoError(tmp.string() + ": write failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError(path.string() + ": rename failed: " + ec.message());
}

}  // namespace hps
