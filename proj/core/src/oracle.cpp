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

#include "hps/oracle.hpp"

#include <cmath>
#include <charconv>
#include <fstream>
#include <numbers>
#include <system_error>

namespace hps::oracle {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double chi_at(const DomainSpec& domain, std::size_t nx, std::size_t ny, std::size_t x,
              std::size_t y) {
  if (!domain.is_fresnel()) return 0.0;
  const double dx = (static_cast<double>(x) - static_cast<double>(nx / 2)) * domain.pitch;
  const double dy = (static_cast<double>(y) - static_cast<double>(ny / 2)) * domain.pitch;
  return std::numbers::pi * (dx * dx + dy * dy) / (domain.wavelength * domain.distance);
}

double metric(const ComplexField& t, const ComplexField& r, bool phase_sensitive) {
  double sum = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (phase_sensitive) {
      sum += std::norm(t[i] - r[i]);
    } else {
      const double d = std::sqrt(std::norm(t[i])) - std::sqrt(std::norm(r[i]));
      sum += d * d;
    }
  }
  return sum;
}

// Replay change per unit SLM-plane change at (x, y), from angles.
ComplexField unit_response(const RunState& state, std::size_t x, std::size_t y) {
  const std::size_t nx = state.spec().nx;
  const std::size_t ny = state.spec().ny;
  if (x >= nx || y >= ny) throw_invalid("oracle: pixel outside the aperture");
  const double chi = chi_at(state.domain(), nx, ny, x, y);
  const double scale = 1.0 / std::sqrt(static_cast<double>(nx * ny));
  ComplexField g(nx, ny);
  for (std::size_t v = 0; v < ny; ++v) {
    for (std::size_t u = 0; u < nx; ++u) {
      const double turns = static_cast<double>((u * x) % nx) / static_cast<double>(nx) +
                           static_cast<double>((v * y) % ny) / static_cast<double>(ny);
      g(u, v) = std::polar(scale, chi - kTwoPi * turns);
    }
  }
  return g;
}

double error_with_response(const RunState& state, const ComplexField& g, Complex delta) {
  const ComplexField& t = state.target().field;
  const ComplexField& r = state.replay();
  double sum = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const Complex moved = r[i] + delta * g[i];
    if (state.phase_sensitive()) {
      sum += std::norm(t[i] - moved);
    } else {
      const double d = std::sqrt(std::norm(t[i])) - std::sqrt(std::norm(moved));
      sum += d * d;
    }
  }
  return sum;
}

Complex literal_level(const SlmSpec& spec, int k) {
  if (spec.is_phase()) {
    return std::polar(1.0, kTwoPi * static_cast<double>(k) / static_cast<double>(spec.levels));
  }
  return {static_cast<double>(k) / static_cast<double>(spec.levels - 1), 0.0};
}

// Gram-Schmidt (applied twice) least squares over a few basis columns.
double fit_residual(std::vector<std::vector<double>> columns, const std::vector<double>& y) {
  if (columns.empty() || columns.front().size() != y.size() || y.size() < columns.size()) {
    throw_invalid("fit: need at least as many samples as basis functions");
  }
  auto dot = [](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
  };
  for (std::size_t j = 0; j < columns.size(); ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < j; ++k) {
        const double c = dot(columns[k], columns[j]);
        for (std::size_t i = 0; i < y.size(); ++i) columns[j][i] -= c * columns[k][i];
      }
    }
    const double norm = std::sqrt(dot(columns[j], columns[j]));
    if (norm == 0.0) throw_invalid("fit: degenerate samples");
    for (double& v : columns[j]) v /= norm;
  }
  std::vector<double> residual = y;
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& q : columns) {
      const double c = dot(q, residual);
      for (std::size_t i = 0; i < y.size(); ++i) residual[i] -= c * q[i];
    }
  }
  const double scale = std::sqrt(dot(y, y));
  const double res = std::sqrt(dot(residual, residual));
  return scale > 0.0 ? res / scale : res;
}

}  // namespace

ComplexField naive_dft(const ComplexField& f) {
  if (f.empty()) throw_invalid("naive_dft: empty field");
  const std::size_t nx = f.nx();
  const std::size_t ny = f.ny();
  std::vector<Complex> wx(nx), wy(ny);
  for (std::size_t k = 0; k < nx; ++k) {
    wx[k] = std::polar(1.0, -kTwoPi * static_cast<double>(k) / static_cast<double>(nx));
  }
  for (std::size_t k = 0; k < ny; ++k) {
    wy[k] = std::polar(1.0, -kTwoPi * static_cast<double>(k) / static_cast<double>(ny));
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(nx * ny));
  ComplexField out(nx, ny);
  for (std::size_t v = 0; v < ny; ++v) {
    for (std::size_t u = 0; u < nx; ++u) {
      Complex acc{};
      for (std::size_t y = 0; y < ny; ++y) {
        const Complex row_twiddle = wy[(v * y) % ny];
        for (std::size_t x = 0; x < nx; ++x) acc += f(x, y) * wx[(u * x) % nx] * row_twiddle;
      }
      out(u, v) = acc * scale;
    }
  }
  return out;
}

ComplexField naive_forward(const ComplexField& aperture, const DomainSpec& domain) {
  domain.validate();
  ComplexField h = aperture;
  for (std::size_t y = 0; y < h.ny(); ++y) {
    for (std::size_t x = 0; x < h.nx(); ++x) {
      h(x, y) *= std::polar(1.0, chi_at(domain, h.nx(), h.ny(), x, y));
    }
  }
  return naive_dft(h);
}

ComplexField levels_to_aperture(const SlmSpec& spec, const LevelGrid& levels) {
  ComplexField out(levels.nx(), levels.ny());
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (levels[i] < 0 || levels[i] >= spec.levels) throw_invalid("oracle: level out of range");
    out[i] = literal_level(spec, levels[i]);
  }
  return out;
}

double full_recompute_error(const RunState& state) {
  const ComplexField replay =
      naive_forward(levels_to_aperture(state.spec(), state.levels()), state.domain());
  return metric(state.target().field, replay, state.phase_sensitive());
}

double error_with_value(const RunState& state, std::size_t x, std::size_t y, Complex value) {
  const ComplexField g = unit_response(state, x, y);
  return error_with_response(state, g, value - literal_level(state.spec(), state.levels()(x, y)));
}

LevelChoice brute_force_best_level(const RunState& state, std::size_t x, std::size_t y) {
  const ComplexField g = unit_response(state, x, y);
  const Complex current = literal_level(state.spec(), state.levels()(x, y));
  const double base = metric(state.target().field, state.replay(), state.phase_sensitive());
  LevelChoice best{state.levels()(x, y), 0.0};
  for (int k = 0; k < state.spec().levels; ++k) {
    const double de = error_with_response(state, g, literal_level(state.spec(), k) - current) - base;
    if (de < best.delta_error || (de == best.delta_error && k < best.level)) best = {k, de};
  }
  return best;
}

SweepCurve pixel_sweep(const RunState& state, std::size_t x, std::size_t y, std::size_t n_samples) {
  if (n_samples < 2) throw_invalid("pixel_sweep: need at least 2 samples");
  const ComplexField g = unit_response(state, x, y);
  const Complex current = literal_level(state.spec(), state.levels()(x, y));
  SweepCurve curve;
  curve.x = x;
  curve.y = y;
  curve.params.reserve(n_samples);
  curve.errors.reserve(n_samples);
  for (std::size_t j = 0; j < n_samples; ++j) {
    const double s = static_cast<double>(j);
    const double param = state.spec().is_phase()
                             ? kTwoPi * s / static_cast<double>(n_samples)
                             : s / static_cast<double>(n_samples - 1);
    const Complex value = state.spec().is_phase() ? std::polar(1.0, param) : Complex{param, 0.0};
    curve.params.push_back(param);
    curve.errors.push_back(error_with_response(state, g, value - current));
  }
  return curve;
}

void write_sweep_csv(const std::filesystem::path& path, const SweepCurve& curve) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    char buf[64];
    auto put = [&](double v) {
      const auto result = std::to_chars(buf, buf + sizeof buf, v);
      out.write(buf, result.ptr - buf);
    };
    out << "# pixel " << curve.x << ' ' << curve.y << '\n' << "param,error\n";
    for (std::size_t i = 0; i < curve.params.size(); ++i) {
      put(curve.params[i]);
      out << ',';
      put(curve.errors[i]);
      out << '\n';
    }
    if (!out.flush()) throw IoError("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

double sinusoid_fit_residual(const std::vector<double>& theta, const std::vector<double>& errors) {
  std::vector<double> one(theta.size(), 1.0), c(theta.size()), s(theta.size());
  for (std::size_t i = 0; i < theta.size(); ++i) {
    c[i] = std::cos(theta[i]);
    s[i] = std::sin(theta[i]);
  }
  return fit_residual({one, c, s}, errors);
}

double quadratic_fit_residual(const std::vector<double>& r, const std::vector<double>& errors) {
  std::vector<double> one(r.size(), 1.0), sq(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) sq[i] = r[i] * r[i];
  return fit_residual({one, r, sq}, errors);
}

}  // namespace hps::oracle
