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

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hps/error.hpp"

namespace hps {

using Complex = std::complex<double>;

/// Dense 2D grid, row-major with x (the `nx` axis) varying fastest.
/// Element (x, y) lives at index y * nx + x. The same layout is used for the
/// diffraction plane (x, y) and the replay plane (u, v).
template <class T>
class Grid {
 public:
  Grid() = default;
  Grid(std::size_t nx, std::size_t ny, T fill = T{}) : nx_(nx), ny_(ny) {
    if (nx == 0 || ny == 0) {
      throw_invalid("grid dimensions must be positive, got " + std::to_string(nx) +
                    "x" + std::to_string(ny));
    }
    data_.assign(nx * ny, fill);
  }

  std::size_t nx() const noexcept { return nx_; }
  std::size_t ny() const noexcept { return ny_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  T& operator()(std::size_t x, std::size_t y) { return data_[y * nx_ + x]; }
  const T& operator()(std::size_t x, std::size_t y) const { return data_[y * nx_ + x]; }
  T& operator[](std::size_t i) { return data_[i]; }
  const T& operator[](std::size_t i) const { return data_[i]; }

  std::span<T> values() noexcept { return data_; }
  std::span<const T> values() const noexcept { return data_; }
  T* data() noexcept { return data_.data(); }
  const T* data() const noexcept { return data_.data(); }

  template <class U>
  bool same_shape(const Grid<U>& other) const noexcept {
    return nx_ == other.nx() && ny_ == other.ny();
  }

  bool operator==(const Grid&) const = default;

 private:
  std::size_t nx_ = 0;
  std::size_t ny_ = 0;
  std::vector<T> data_;
};

using ComplexField = Grid<Complex>;
using RealGrid = Grid<double>;
using LevelGrid = Grid<int>;

/// Throws InvalidInput unless the field is non-empty and every entry finite.
void require_valid(const ComplexField& f, const char* what);

/// Sum of |f|^2.
double energy(const ComplexField& f);

enum class DomainKind { Fraunhofer, Fresnel };

/// Propagation regime between the SLM and the replay plane. Wavelength,
/// distance and pitch are in meters and only used for Fresnel.
struct DomainSpec {
  DomainKind kind = DomainKind::Fraunhofer;
  double wavelength = 0.0;
  double distance = 0.0;
  double pitch = 0.0;

  static DomainSpec fraunhofer() { return {}; }
  static DomainSpec fresnel(double wavelength, double distance, double pitch) {
    return {DomainKind::Fresnel, wavelength, distance, pitch};
  }
  bool is_fresnel() const noexcept { return kind == DomainKind::Fresnel; }

  /// Throws InvalidInput if a Fresnel domain has a non-positive wavelength or
  /// pitch, or a zero distance.
  void validate() const;
};

/// Unitary forward DFT, 1/sqrt(nx*ny) scaling, kernel exp(-2 pi i (ux/nx + vy/ny)).
ComplexField dft_unitary(const ComplexField& f);

/// Unitary inverse DFT; exact inverse of dft_unitary.
ComplexField idft_unitary(const ComplexField& F);

/// Quadratic Fresnel phase chi(x, y) = pi p^2 ((x - cx)^2 + (y - cy)^2) / (lambda z)
/// in radians, with the center (cx, cy) = (nx/2, ny/2) using integer division.
RealGrid fresnel_prephase(const DomainSpec& domain, std::size_t nx, std::size_t ny);

/// Replay field of an SLM-plane aperture: the DFT for Fraunhofer, the DFT of
/// H * exp(i chi) for Fresnel.
ComplexField forward_transform(const ComplexField& aperture, const DomainSpec& domain);

/// Precomputed factors for single-pixel updates of the replay field.
///
/// A unit change at SLM pixel (x, y) changes replay pixel (u, v) by
///   g(u, v) = exp(i chi(x, y)) / sqrt(N) * exp(-2 pi i u x / nx) * exp(-2 pi i v y / ny)
/// which factorizes into a row vector over u and a column vector over v.
/// Exponents are reduced modulo nx / ny and read from tables, so the cost per
/// pixel is one complex multiply.
class ReplayKernel {
 public:
  ReplayKernel(std::size_t nx, std::size_t ny, const DomainSpec& domain);

  std::size_t nx() const noexcept { return nx_; }
  std::size_t ny() const noexcept { return ny_; }

  /// exp(i chi(x, y)); exactly 1 in the Fraunhofer domain.
  Complex prephase(std::size_t x, std::size_t y) const noexcept {
    return prephase_.empty() ? Complex{1.0, 0.0} : prephase_[y * nx_ + x];
  }

  /// Fills along_u (size nx) and along_v (size ny) so that
  /// g(u, v) = along_v[v] * along_u[u]. The scale and prephase sit in along_v.
  void basis(std::size_t x, std::size_t y, std::span<Complex> along_u,
             std::span<Complex> along_v) const;

 private:
  std::size_t nx_;
  std::size_t ny_;
  std::vector<Complex> twiddle_x_;
  std::vector<Complex> twiddle_y_;
  std::vector<Complex> prephase_;
};

/// Calls sink(u, v, dR) for every replay pixel, where dR is the change caused
/// by adding `delta` to SLM pixel (x, y). Rows are visited in order (v outer).
template <class Sink>
void for_each_delta_replay(const ReplayKernel& kernel, Complex delta, std::size_t x,
                           std::size_t y, Sink&& sink) {
  if (x >= kernel.nx() || y >= kernel.ny()) {
    throw_invalid("pixel (" + std::to_string(x) + ", " + std::to_string(y) +
                  ") outside " + std::to_string(kernel.nx()) + "x" +
                  std::to_string(kernel.ny()) + " aperture");
  }
  std::vector<Complex> along_u(kernel.nx());
  std::vector<Complex> along_v(kernel.ny());
  kernel.basis(x, y, along_u, along_v);
  for (std::size_t v = 0; v < kernel.ny(); ++v) {
    const Complex row = delta * along_v[v];
    for (std::size_t u = 0; u < kernel.nx(); ++u) sink(u, v, row * along_u[u]);
  }
}

/// Materialized replay change for a single-pixel aperture change.
ComplexField delta_replay(Complex delta, std::size_t x, std::size_t y, std::size_t nx,
                          std::size_t ny, const DomainSpec& domain);

}  // namespace hps
