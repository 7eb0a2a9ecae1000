// Copyright 2026 The globalq Authors
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

// Hot loops of the dense simulator and the photophysics scans. Each kernel has
// a scalar reference and an AVX2 variant; active() picks one at runtime.

#pragma once

#include <cstddef>

#include "globalq/mat2.hpp"

namespace globalq::kernels {

/// One dipole line folded with its prefactors.
///   shift   += shift_coef   * (1/(w0-w) + 1/(w0+w))
///   scatter += scatter_coef * |(1/(w0-w) + 1/(w0+w)) / (w0-w)|
struct DipoleTerm {
  double omega0 = 0;
  double shift_coef = 0;
  double scatter_coef = 0;
};

struct KernelTable {
  const char* name;
  /// amp has 2^n entries; applies u to qubit q (bit q of the index).
  void (*apply_1q)(cplx* amp, std::size_t dim, int q, const Mat2& u);
  /// sum conj(a[i]) b[i].
  cplx (*inner)(const cplx* a, const cplx* b, std::size_t n);
  void (*dipole_sum)(const DipoleTerm* terms, std::size_t nterms, const double* omega,
                     std::size_t n, double* shift, double* scatter);
};

const KernelTable& scalar_table();
/// nullptr when the variant was not built.
const KernelTable* avx2_table();
bool cpu_has_avx2();

/// AVX2 when built and supported by the CPU, unless GLOBALQ_FORCE_SCALAR is set.
const KernelTable& active();

}  // namespace globalq::kernels
