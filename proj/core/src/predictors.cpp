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

#include "hps/search.hpp"
#include "search_detail.hpp"

namespace hps {

// The fast predictors below never form angles. For a pixel (x, y) let g be
// the replay change of a unit SLM-plane change (prephase and 1/sqrt(N)
// included). Then sqrt(N) conj(g) = exp(i psi) with
//   psi = 2 pi (ux/nx + vy/ny) - chi(x, y),
// so every exp(iC) / exp(i beta) factor is a product of conj(g) or g with a
// unit phasor taken from the replay or residual field.

double optimal_phase_ps(const RunState& state, std::size_t x, std::size_t y) {
  // sum (T - R-dagger) conj(g) = sum (T - R) conj(g) + H sum |g|^2
  const Complex s = state.residual_projection(x, y) + state.pixel_value(x, y);
  return s == Complex{} ? 0.0 : std::arg(s);
}

double optimal_phase_pi(const RunState& state, std::size_t x, std::size_t y) {
  detail::Basis basis(state.kernel(), x, y);
  const Complex h = state.pixel_value(x, y);
  const Complex* r = state.replay().data();
  const double* tm = state.target_magnitude().data();
  const std::size_t nx = state.spec().nx;
  const double inv_n = 1.0 / static_cast<double>(state.pixels());
  double z_re = 0.0, z_im = 0.0;
  for (std::size_t v = 0; v < state.spec().ny; ++v) {
    const Complex gv = basis.along_v[v];
    const std::size_t row = v * nx;
    for (std::size_t u = 0; u < nx; ++u) {
      const Complex g = detail::mul(gv, basis.along_u[u]);
      const Complex hg = detail::mul(h, g);
      const double dre = r[row + u].real() - hg.real();
      const double dim = r[row + u].imag() - hg.imag();
      const double a = dre * dre + dim * dim + inv_n;
      // F exp(iC) = 2 (1 - |T| / sqrt(A)) conj(g) R-dagger
      const double w = 2.0 * (1.0 - tm[row + u] / std::sqrt(a));
      z_re += w * (dre * g.real() + dim * g.imag());
      z_im += w * (dim * g.real() - dre * g.imag());
    }
  }
  if (z_re == 0.0 && z_im == 0.0) return 0.0;
  // Error is D + |Z| cos(t - arg Z): the minimum is at arg Z + pi.
  return std::atan2(-z_im, -z_re);
}

double optimal_dr_ps(const RunState& state, std::size_t x, std::size_t y) {
  // sqrt(E) cos(beta) / sqrt(N) = Re((T - R) conj(g))
  return state.residual_projection(x, y).real();
}

double optimal_dr_pi(const RunState& state, std::size_t x, std::size_t y) {
  detail::Basis basis(state.kernel(), x, y);
  const Complex* t = state.target().field.data();
  const Complex* r = state.replay().data();
  const double* tm = state.target_magnitude().data();
  const std::size_t nx = state.spec().nx;
  double sum = 0.0;
  for (std::size_t v = 0; v < state.spec().ny; ++v) {
    const Complex gv = basis.along_v[v];
    const std::size_t row = v * nx;
    for (std::size_t u = 0; u < nx; ++u) {
      const double er = t[row + u].real() - r[row + u].real();
      const double ei = t[row + u].imag() - r[row + u].imag();
      const double e = std::sqrt(er * er + ei * ei);
      if (e == 0.0) continue;
      const Complex g = detail::mul(gv, basis.along_u[u]);
      const double rm = std::sqrt(r[row + u].real() * r[row + u].real() +
                                  r[row + u].imag() * r[row + u].imag());
      // (1/sqrt(N)) (1 - |T|) |R| cos(beta), cos(beta) = sqrt(N) Re((T - R) conj(g)) / |T - R|
      sum += (1.0 - tm[row + u]) * rm * (er * g.real() + ei * g.imag()) / e;
    }
  }
  return sum;
}

PredictorTerms predictor_terms(const RunState& state, std::size_t x, std::size_t y,
                               HpsVariant variant) {
  const std::size_t nx = state.spec().nx;
  const std::size_t ny = state.spec().ny;
  if (x >= nx || y >= ny) throw_invalid("predictor_terms: pixel outside the aperture");
  const double n = static_cast<double>(nx * ny);
  const double root_n = std::sqrt(n);
  const double chi = state.domain().is_fresnel()
                         ? fresnel_prephase(state.domain(), nx, ny)(x, y)
                         : 0.0;
  const Complex h = state.pixel_value(x, y);
  const ComplexField& t = state.target().field;
  const ComplexField& r = state.replay();

  PredictorTerms terms;
  terms.c = RealGrid(nx, ny);
  terms.f = RealGrid(nx, ny);
  terms.d = RealGrid(nx, ny);
  terms.beta = RealGrid(nx, ny);
  terms.e_dagger = RealGrid(nx, ny);

  for (std::size_t v = 0; v < ny; ++v) {
    for (std::size_t u = 0; u < nx; ++u) {
      const double psi = 2.0 * std::numbers::pi *
                             (static_cast<double>((u * x) % nx) / static_cast<double>(nx) +
                              static_cast<double>((v * y) % ny) / static_cast<double>(ny)) -
                         chi;
      const Complex tt = t(u, v);
      const Complex rr = r(u, v);
      switch (variant) {
        case HpsVariant::PhaseSensitive: {
          const Complex rd = rr - h * std::polar(1.0 / root_n, -psi);
          terms.e_dagger(u, v) = std::norm(tt - rd);
          terms.c(u, v) = psi + std::arg(tt - rd);
          break;
        }
        case HpsVariant::PhaseInsensitive: {
          const Complex rd = rr - h * std::polar(1.0 / root_n, -psi);
          const double m = std::abs(rd);
          const double tm = std::abs(tt);
          const double root_a = std::sqrt(m * m + 1.0 / n);
          terms.e_dagger(u, v) = (tm - m) * (tm - m);
          terms.c(u, v) = psi + std::arg(rd);
          terms.d(u, v) = 1.0 / n + 2.0 * tm * m - 2.0 * tm * root_a;
          terms.f(u, v) = 2.0 * m / root_n - 2.0 * tm * m / (root_n * root_a);
          break;
        }
        case HpsVariant::AmplitudeSensitive:
        case HpsVariant::AmplitudeInsensitive: {
          terms.e_dagger(u, v) = std::norm(tt - rr);
          terms.beta(u, v) = -psi - std::arg(tt - rr);
          terms.f(u, v) = variant == HpsVariant::AmplitudeSensitive
                              ? std::abs(tt - rr)
                              : (1.0 - std::abs(tt)) * std::abs(rr);
          break;
        }
      }
    }
  }
  return terms;
}

double predict_from_terms(const PredictorTerms& terms, HpsVariant variant) {
  const double root_n = std::sqrt(static_cast<double>(terms.c.size()));
  double sum_cos = 0.0, sum_sin = 0.0;
  for (std::size_t i = 0; i < terms.c.size(); ++i) {
    switch (variant) {
      case HpsVariant::PhaseSensitive: {
        const double w = std::sqrt(terms.e_dagger[i]);
        sum_cos += w * std::cos(terms.c[i]);
        sum_sin += w * std::sin(terms.c[i]);
        break;
      }
      case HpsVariant::PhaseInsensitive:
        sum_cos += terms.f[i] * std::cos(terms.c[i]);
        sum_sin += terms.f[i] * std::sin(terms.c[i]);
        break;
      case HpsVariant::AmplitudeSensitive:
      case HpsVariant::AmplitudeInsensitive:
        // A residual of zero has no direction; it contributes nothing.
        if (terms.e_dagger[i] > 0.0) sum_cos += terms.f[i] * std::cos(terms.beta[i]);
        break;
    }
  }
  switch (variant) {
    case HpsVariant::PhaseSensitive:
      return (sum_cos == 0.0 && sum_sin == 0.0) ? 0.0 : std::atan2(sum_sin, sum_cos);
    case HpsVariant::PhaseInsensitive:
      // Minimum branch: second derivative -(cos t sum F cos C + sin t sum F sin C) > 0.
      return (sum_cos == 0.0 && sum_sin == 0.0) ? 0.0 : std::atan2(-sum_sin, -sum_cos);
    case HpsVariant::AmplitudeSensitive:
    case HpsVariant::AmplitudeInsensitive:
      return sum_cos / root_n;
  }
  return 0.0;
}

}  // namespace hps
