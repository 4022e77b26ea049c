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

#include <cmath>
#include <numbers>
#include <utility>

#include "hps/metrics.hpp"
#include "hps/search.hpp"
#include "search_detail.hpp"

namespace hps {
namespace {

RealGrid magnitudes(const ComplexField& f) {
  RealGrid out(f.nx(), f.ny());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = std::abs(f[i]);
  return out;
}

const SlmSpec& check_compatible(const SlmSpec& spec, const DomainSpec& domain,
                                const TargetField& target) {
  spec.validate();
  domain.validate();
  if (target.field.nx() != spec.nx || target.field.ny() != spec.ny) {
    throw_invalid("target dimensions do not match the SLM");
  }
  require_valid(target.field, "target");
  return spec;
}

}  // namespace

LevelGrid back_projection_levels(const SlmSpec& spec, const DomainSpec& domain,
                                 const TargetField& target, Rng& rng) {
  check_compatible(spec, domain, target);
  ComplexField seed = target.field;
  if (!target.phase_sensitive) {
    for (Complex& t : seed.values()) {
      t = std::polar(std::abs(t), 2.0 * std::numbers::pi * rng.uniform());
    }
  }
  ComplexField h = idft_unitary(seed);
  if (domain.is_fresnel()) {
    const RealGrid chi = fresnel_prephase(domain, spec.nx, spec.ny);
    for (std::size_t i = 0; i < h.size(); ++i) h[i] *= std::polar(1.0, -chi[i]);
  }
  LevelGrid levels(spec.nx, spec.ny);
  for (std::size_t i = 0; i < h.size(); ++i) {
    levels[i] = spec.is_phase() ? quantize_phase(spec, std::arg(h[i]))
                                : quantize_amplitude(spec, std::abs(h[i]));
  }
  return levels;
}

namespace {

LevelGrid initial_levels(const SlmSpec& spec, const DomainSpec& domain,
                         const TargetField& target, InitMode init, Rng& rng) {
  if (init == InitMode::BackProjection) return back_projection_levels(spec, domain, target, rng);
  spec.validate();
  LevelGrid levels(spec.nx, spec.ny);
  for (int& k : levels.values()) k = random_level(spec, rng);
  return levels;
}

}  // namespace

RunState::RunState(SlmSpec spec, DomainSpec domain, TargetField target, InitMode init,
                   std::uint64_t seed)
    : spec_(spec),
      domain_(domain),
      target_(std::move(target)),
      kernel_(check_compatible(spec_, domain_, target_).nx, spec_.ny, domain_),
      level_values_(level_table(spec_)),
      target_mag_(magnitudes(target_.field)),
      rng_(seed) {
  levels_ = initial_levels(spec_, domain_, target_, init, rng_);
  rebuild();
}

RunState::RunState(SlmSpec spec, DomainSpec domain, TargetField target, LevelGrid levels,
                   std::uint64_t seed)
    : spec_(spec),
      domain_(domain),
      target_(std::move(target)),
      kernel_(check_compatible(spec_, domain_, target_).nx, spec_.ny, domain_),
      level_values_(level_table(spec_)),
      target_mag_(magnitudes(target_.field)),
      levels_(std::move(levels)),
      rng_(seed) {
  if (levels_.nx() != spec_.nx || levels_.ny() != spec_.ny) {
    throw_invalid("level grid dimensions do not match the SLM");
  }
  for (int k : levels_.values()) {
    if (k < 0 || k >= spec_.levels) throw_invalid("level grid entry outside [0, L)");
  }
  rebuild();
}

void RunState::rebuild() {
  aperture_ = ComplexField(spec_.nx, spec_.ny);
  for (std::size_t y = 0; y < spec_.ny; ++y) {
    for (std::size_t x = 0; x < spec_.nx; ++x) {
      aperture_(x, y) = pixel_value(x, y) * kernel_.prephase(x, y);
    }
  }
  replay_ = dft_unitary(aperture_);
  if (!phase_sensitive()) replay_mag_ = magnitudes(replay_);
  total_se_ = hps::total_se(target_.field, replay_, phase_sensitive());
}

double RunState::resync() {
  const double cached = total_se_;
  rebuild();
  const double diff = std::abs(cached - total_se_);
  return total_se_ > 0.0 ? diff / total_se_ : diff;
}

Complex RunState::residual_projection(std::size_t x, std::size_t y) const {
  detail::Basis basis(kernel_, x, y);
  const Complex* t = target_.field.data();
  const Complex* r = replay_.data();
  const std::size_t nx = spec_.nx;
  double acc_re = 0.0, acc_im = 0.0;
  for (std::size_t v = 0; v < spec_.ny; ++v) {
    const Complex gv = basis.along_v[v];
    const std::size_t row = v * nx;
    for (std::size_t u = 0; u < nx; ++u) {
      const Complex g = detail::mul(gv, basis.along_u[u]);
      const double er = t[row + u].real() - r[row + u].real();
      const double ei = t[row + u].imag() - r[row + u].imag();
      // (er + i ei) * conj(g)
      acc_re += er * g.real() + ei * g.imag();
      acc_im += ei * g.real() - er * g.imag();
    }
  }
  return {acc_re, acc_im};
}

double RunState::delta_error(std::size_t x, std::size_t y, int level) const {
  const Complex d = level_value(level) - pixel_value(x, y);
  if (d == Complex{}) return 0.0;
  if (phase_sensitive()) {
    // sum |T - R - d g|^2 - |T - R|^2 = |d|^2 sum|g|^2 - 2 Re(conj(d) S), sum|g|^2 = 1.
    const Complex s = residual_projection(x, y);
    return std::norm(d) - 2.0 * (d.real() * s.real() + d.imag() * s.imag());
  }
  detail::Basis basis(kernel_, x, y);
  const Complex* r = replay_.data();
  const double* rm = replay_mag_.data();
  const double* tm = target_mag_.data();
  const std::size_t nx = spec_.nx;
  double sum = 0.0;
  for (std::size_t v = 0; v < spec_.ny; ++v) {
    const Complex dv = detail::mul(d, basis.along_v[v]);
    const std::size_t row = v * nx;
    for (std::size_t u = 0; u < nx; ++u) {
      const Complex dr = detail::mul(dv, basis.along_u[u]);
      const double re = r[row + u].real() + dr.real();
      const double im = r[row + u].imag() + dr.imag();
      const double m_new = std::sqrt(re * re + im * im);
      const double m_old = rm[row + u];
      // (|T| - m_new)^2 - (|T| - m_old)^2
      sum += (m_new - m_old) * (m_new + m_old - 2.0 * tm[row + u]);
    }
  }
  return sum;
}

void RunState::apply(std::size_t x, std::size_t y, int level, double delta_e) {
  if (level < 0 || level >= spec_.levels) throw_invalid("apply: level outside [0, L)");
  const Complex d = level_value(level) - pixel_value(x, y);
  levels_(x, y) = level;
  aperture_(x, y) = level_value(level) * kernel_.prephase(x, y);
  total_se_ += delta_e;
  if (d == Complex{}) return;
  detail::Basis basis(kernel_, x, y);
  Complex* r = replay_.data();
  const std::size_t nx = spec_.nx;
  for (std::size_t v = 0; v < spec_.ny; ++v) {
    const Complex dv = detail::mul(d, basis.along_v[v]);
    const std::size_t row = v * nx;
    for (std::size_t u = 0; u < nx; ++u) {
      const Complex dr = detail::mul(dv, basis.along_u[u]);
      r[row + u] = {r[row + u].real() + dr.real(), r[row + u].imag() + dr.imag()};
    }
  }
  if (!phase_sensitive()) {
    double* rm = replay_mag_.data();
    for (std::size_t i = 0; i < replay_.size(); ++i) {
      rm[i] = std::sqrt(r[i].real() * r[i].real() + r[i].imag() * r[i].imag());
    }
  }
}

void RunState::set_level(std::size_t x, std::size_t y, int level) {
  apply(x, y, level, delta_error(x, y, level));
}

}  // namespace hps
