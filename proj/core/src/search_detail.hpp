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

#include <vector>

#include "hps/field.hpp"

namespace hps::detail {

// Plain complex product. std::complex operator* carries an inf/NaN recovery
// branch that blocks vectorization of the inner loops.
inline Complex mul(Complex a, Complex b) noexcept {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

// Row/column factors of the replay change for one SLM pixel.
struct Basis {
  Basis(const ReplayKernel& kernel, std::size_t x, std::size_t y)
      : along_u(kernel.nx()), along_v(kernel.ny()) {
    if (x >= kernel.nx() || y >= kernel.ny()) {
      throw_invalid("pixel (" + std::to_string(x) + ", " + std::to_string(y) +
                    ") outside the aperture");
    }
    kernel.basis(x, y, along_u, along_v);
  }
  std::vector<Complex> along_u;
  std::vector<Complex> along_v;
};

}  // namespace hps::detail
