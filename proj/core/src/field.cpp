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

#include "hps/field.hpp"

#include <cmath>
#include <numbers>

#include "fft.hpp"

namespace hps {

void require_valid(const ComplexField& f, const char* what) {
  if (f.empty()) throw_invalid(std::string(what) + ": field has zero dimension");
  for (const Complex& c : f.values()) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw_invalid(std::string(what) + ": field contains non-finite values");
    }
  }
}

double energy(const ComplexField& f) {
  double sum = 0.0;
  for (const Complex& c : f.values()) sum += std::norm(c);
  return sum;
}

void DomainSpec::validate() const {
  if (kind != DomainKind::Fresnel) return;
  if (!(wavelength > 0.0) || !std::isfinite(wavelength)) {
    throw_invalid("fresnel domain requires wavelength > 0");
  }
  if (distance == 0.0 || !std::isfinite(distance)) {
    throw_invalid("fresnel domain requires a non-zero distance");
  }
  if (!(pitch > 0.0) || !std::isfinite(pitch)) {
    throw_invalid("fresnel domain requires pitch > 0");
  }
}

namespace {

ComplexField scaled_transform(const ComplexField& in, detail::FftDirection dir,
                              const char* what) {
  require_valid(in, what);
  ComplexField out(in.nx(), in.ny());
  detail::fft_2d(in, out, dir);
  const double scale = 1.0 / std::sqrt(static_cast<double>(in.size()));
  for (Complex& c : out.values()) c *= scale;
  return out;
}

std::vector<Complex> twiddles(std::size_t n) {
  std::vector<Complex> table(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    table[k] = std::polar(1.0, angle);
  }
  return table;
}

}  // namespace

ComplexField dft_unitary(const ComplexField& f) {
  return scaled_transform(f, detail::FftDirection::Forward, "dft_unitary");
}

ComplexField idft_unitary(const ComplexField& F) {
  return scaled_transform(F, detail::FftDirection::Backward, "idft_unitary");
}

RealGrid fresnel_prephase(const DomainSpec& domain, std::size_t nx, std::size_t ny) {
  if (!domain.is_fresnel()) throw_invalid("fresnel_prephase requires a Fresnel domain");
  domain.validate();
  RealGrid chi(nx, ny);
  const double k = std::numbers::pi * domain.pitch * domain.pitch /
                   (domain.wavelength * domain.distance);
  const auto cx = static_cast<double>(nx / 2);
  const auto cy = static_cast<double>(ny / 2);
  for (std::size_t y = 0; y < ny; ++y) {
    const double dy = static_cast<double>(y) - cy;
    for (std::size_t x = 0; x < nx; ++x) {
      const double dx = static_cast<double>(x) - cx;
      chi(x, y) = k * (dx * dx + dy * dy);
    }
  }
  return chi;
}

ComplexField forward_transform(const ComplexField& aperture, const DomainSpec& domain) {
  domain.validate();
  if (!domain.is_fresnel()) return dft_unitary(aperture);
  require_valid(aperture, "forward_transform");
  const RealGrid chi = fresnel_prephase(domain, aperture.nx(), aperture.ny());
  ComplexField shifted = aperture;
  for (std::size_t i = 0; i < shifted.size(); ++i) shifted[i] *= std::polar(1.0, chi[i]);
  return dft_unitary(shifted);
}

ReplayKernel::ReplayKernel(std::size_t nx, std::size_t ny, const DomainSpec& domain)
    : nx_(nx), ny_(ny), twiddle_x_(twiddles(nx)), twiddle_y_(twiddles(ny)) {
  if (nx == 0 || ny == 0) throw_invalid("ReplayKernel: zero dimension");
  domain.validate();
  if (domain.is_fresnel()) {
    const RealGrid chi = fresnel_prephase(domain, nx, ny);
    prephase_.resize(chi.size());
    for (std::size_t i = 0; i < chi.size(); ++i) prephase_[i] = std::polar(1.0, chi[i]);
  }
}

void ReplayKernel::basis(std::size_t x, std::size_t y, std::span<Complex> along_u,
                         std::span<Complex> along_v) const {
  const double scale = 1.0 / std::sqrt(static_cast<double>(nx_ * ny_));
  const Complex lead = prephase(x, y) * scale;
  for (std::size_t u = 0; u < nx_; ++u) along_u[u] = twiddle_x_[(u * x) % nx_];
  for (std::size_t v = 0; v < ny_; ++v) along_v[v] = lead * twiddle_y_[(v * y) % ny_];
}

ComplexField delta_replay(Complex delta, std::size_t x, std::size_t y, std::size_t nx,
                          std::size_t ny, const DomainSpec& domain) {
  const ReplayKernel kernel(nx, ny, domain);
  ComplexField out(nx, ny);
  for_each_delta_replay(kernel, delta, x, y,
                        [&](std::size_t u, std::size_t v, Complex d) { out(u, v) = d; });
  return out;
}

}  // namespace hps
