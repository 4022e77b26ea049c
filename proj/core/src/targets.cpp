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

#include "hps/targets.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hps/pgm.hpp"

namespace hps {
namespace {

RealGrid rotate_180(const RealGrid& img) {
  RealGrid out(img.nx(), img.ny());
  for (std::size_t y = 0; y < img.ny(); ++y) {
    for (std::size_t x = 0; x < img.nx(); ++x) {
      out(x, y) = img(img.nx() - 1 - x, img.ny() - 1 - y);
    }
  }
  return out;
}

void blit(RealGrid& dst, const RealGrid& src, std::size_t ox, std::size_t oy) {
  for (std::size_t y = 0; y < src.ny(); ++y) {
    for (std::size_t x = 0; x < src.nx(); ++x) dst(ox + x, oy + y) = src(x, y);
  }
}

}  // namespace

TargetLayout default_layout(Sensitivity sensitivity) {
  return sensitivity == Sensitivity::Sensitive ? TargetLayout::Quadrant : TargetLayout::Full;
}

RealGrid load_image(const std::filesystem::path& path) { return read_pgm(path); }

RealGrid resample_bilinear(const RealGrid& image, std::size_t nx, std::size_t ny) {
  if (image.empty()) throw_invalid("resample_bilinear: empty image");
  if (image.nx() == nx && image.ny() == ny) return image;
  RealGrid out(nx, ny);
  const double sx = static_cast<double>(image.nx()) / static_cast<double>(nx);
  const double sy = static_cast<double>(image.ny()) / static_cast<double>(ny);
  const double max_x = static_cast<double>(image.nx() - 1);
  const double max_y = static_cast<double>(image.ny() - 1);
  for (std::size_t y = 0; y < ny; ++y) {
    const double fy = std::clamp((static_cast<double>(y) + 0.5) * sy - 0.5, 0.0, max_y);
    const auto y0 = static_cast<std::size_t>(fy);
    const std::size_t y1 = std::min(y0 + 1, image.ny() - 1);
    const double wy = fy - static_cast<double>(y0);
    for (std::size_t x = 0; x < nx; ++x) {
      const double fx = std::clamp((static_cast<double>(x) + 0.5) * sx - 0.5, 0.0, max_x);
      const auto x0 = static_cast<std::size_t>(fx);
      const std::size_t x1 = std::min(x0 + 1, image.nx() - 1);
      const double wx = fx - static_cast<double>(x0);
      const double top = image(x0, y0) * (1.0 - wx) + image(x1, y0) * wx;
      const double bottom = image(x0, y1) * (1.0 - wx) + image(x1, y1) * wx;
      out(x, y) = top * (1.0 - wy) + bottom * wy;
    }
  }
  return out;
}

RealGrid enforce_point_symmetry(const RealGrid& image) {
  if (image.empty()) throw_invalid("enforce_point_symmetry: empty image");
  const std::size_t nx = image.nx();
  const std::size_t ny = image.ny();
  RealGrid out(nx, ny);
  for (std::size_t y = 0; y < ny; ++y) {
    for (std::size_t x = 0; x < nx; ++x) {
      out(x, y) = 0.5 * (image(x, y) + image((nx - x) % nx, (ny - y) % ny));
    }
  }
  return out;
}

RealGrid symmetrize_point(const RealGrid& image) {
  if (image.empty() || image.nx() % 2 != 0 || image.ny() % 2 != 0) {
    throw_invalid("symmetrize_point: dimensions must be even, got " +
                  std::to_string(image.nx()) + "x" + std::to_string(image.ny()));
  }
  const std::size_t hx = image.nx() / 2;
  const std::size_t hy = image.ny() / 2;
  const RealGrid half = resample_bilinear(image, hx, hy);
  const RealGrid turned = rotate_180(half);
  RealGrid tiled(image.nx(), image.ny());
  blit(tiled, half, 0, 0);
  blit(tiled, half, hx, 0);
  blit(tiled, turned, 0, hy);
  blit(tiled, turned, hx, hy);
  return enforce_point_symmetry(tiled);
}

RealGrid embed_central_quadrant(const RealGrid& image, std::size_t nx, std::size_t ny) {
  if (image.empty()) throw_invalid("embed_central_quadrant: empty image");
  const std::size_t qx = nx / 2;
  const std::size_t qy = ny / 2;
  if (qx == 0 || qy == 0) throw_invalid("embed_central_quadrant: field too small");
  if (image.nx() > qx || image.ny() > qy) {
    throw_invalid("embed_central_quadrant: " + std::to_string(image.nx()) + "x" +
                  std::to_string(image.ny()) + " image does not fit a " + std::to_string(qx) +
                  "x" + std::to_string(qy) + " quadrant");
  }
  RealGrid out(nx, ny, 0.0);
  blit(out, resample_bilinear(image, qx, qy), (nx - qx) / 2, (ny - qy) / 2);
  return out;
}

double energy_budget(const SlmSpec& spec) {
  const auto n = static_cast<double>(spec.pixels());
  return spec.is_phase() ? n : n / 3.0;
}

ComplexField scale_energy(const ComplexField& target, double budget) {
  if (!(budget > 0.0)) throw_invalid("scale_energy: budget must be positive");
  const double e = energy(target);
  if (!(e > 0.0)) throw_invalid("scale_energy: target has zero energy");
  const double s = std::sqrt(budget / e);
  ComplexField out = target;
  for (Complex& c : out.values()) c *= s;
  return out;
}

TargetField build_target(const RealGrid& amplitude, const std::optional<RealGrid>& phase,
                         const SlmSpec& spec, Sensitivity sensitivity) {
  spec.validate();
  if (amplitude.nx() != spec.nx || amplitude.ny() != spec.ny) {
    throw_invalid("build_target: amplitude image must match the SLM dimensions");
  }
  const bool sensitive = sensitivity == Sensitivity::Sensitive;
  if (phase && !sensitive) {
    throw ConfigError("build_target: phase image given for a phase-insensitive target");
  }
  if (phase && !phase->same_shape(amplitude)) {
    throw_invalid("build_target: phase image must match the amplitude image");
  }
  ComplexField t(spec.nx, spec.ny);
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double a = amplitude[i];
    t[i] = phase ? std::polar(a, 2.0 * std::numbers::pi * (*phase)[i]) : Complex{a, 0.0};
  }
  TargetField out;
  out.field = scale_energy(t, energy_budget(spec));
  out.phase_sensitive = sensitive;
  out.energy = energy(out.field);
  return out;
}

TargetField prepare_target(const RealGrid& amplitude_source,
                           const std::optional<RealGrid>& phase_source, const SlmSpec& spec,
                           Sensitivity sensitivity, TargetLayout layout) {
  spec.validate();
  const bool symmetric = !spec.is_phase();
  auto geometry = [&](const RealGrid& src) {
    if (layout == TargetLayout::Quadrant) {
      RealGrid q = resample_bilinear(src, spec.nx / 2, spec.ny / 2);
      if (symmetric) q = symmetrize_point(q);
      RealGrid full = embed_central_quadrant(q, spec.nx, spec.ny);
      return symmetric ? enforce_point_symmetry(full) : full;
    }
    RealGrid full = resample_bilinear(src, spec.nx, spec.ny);
    return symmetric ? symmetrize_point(full) : full;
  };
  std::optional<RealGrid> phase;
  if (phase_source) phase = geometry(*phase_source);
  return build_target(geometry(amplitude_source), phase, spec, sensitivity);
}

RealGrid synthetic_amplitude(std::size_t nx, std::size_t ny) {
  // Radial gradient, 8x8 checkerboard and concentric rings. Floor of 0.1 so
  // the image has no dark pixels.
  RealGrid img(nx, ny);
  const double cx = 0.5 * static_cast<double>(nx);
  const double cy = 0.5 * static_cast<double>(ny);
  const double rmax = std::hypot(cx, cy);
  const std::size_t bx = std::max<std::size_t>(1, nx / 8);
  const std::size_t by = std::max<std::size_t>(1, ny / 8);
  for (std::size_t y = 0; y < ny; ++y) {
    for (std::size_t x = 0; x < nx; ++x) {
      const double r = std::hypot(static_cast<double>(x) + 0.5 - cx,
                                  static_cast<double>(y) + 0.5 - cy) / rmax;
      const double radial = 1.0 - r;
      const double checker = static_cast<double>((x / bx + y / by) % 2);
      const double rings = 0.5 + 0.5 * std::cos(12.0 * std::numbers::pi * r);
      img(x, y) = 0.1 + 0.9 * (0.45 * radial + 0.35 * checker + 0.2 * rings);
    }
  }
  return img;
}

RealGrid synthetic_phase(std::size_t nx, std::size_t ny) {
  RealGrid img(nx, ny);
  for (std::size_t y = 0; y < ny; ++y) {
    for (std::size_t x = 0; x < nx; ++x) {
      const double sx = std::sin(6.0 * std::numbers::pi * static_cast<double>(x) / nx);
      const double cy = std::cos(4.0 * std::numbers::pi * static_cast<double>(y) / ny);
      img(x, y) = 0.5 + 0.25 * sx + 0.25 * cy;
    }
  }
  return img;
}

}  // namespace hps
