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

#include <cmath>

#include "kernels/impl.hpp"

namespace globalq::kernels::scalar {

void apply_1q(cplx* amp, std::size_t dim, int q, const Mat2& u) {
  const std::size_t stride = std::size_t{1} << q;
  for (std::size_t base = 0; base < dim; base += 2 * stride) {
    for (std::size_t j = base; j < base + stride; ++j) {
      const cplx a0 = amp[j], a1 = amp[j + stride];
      amp[j] = u.m[0] * a0 + u.m[1] * a1;
      amp[j + stride] = u.m[2] * a0 + u.m[3] * a1;
    }
  }
}

cplx inner(const cplx* a, const cplx* b, std::size_t n) {
  double re = 0, im = 0;
  for (std::size_t i = 0; i < n; ++i) {
    re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
  }
  return {re, im};
}

void dipole_sum(const DipoleTerm* terms, std::size_t nterms, const double* omega, std::size_t n,
                double* shift, double* scatter) {
  for (std::size_t i = 0; i < n; ++i) {
    const double w = omega[i];
    double s = 0, g = 0;
    for (std::size_t l = 0; l < nterms; ++l) {
      const double w0 = terms[l].omega0;
      const double d = 1.0 / (w0 - w) + 1.0 / (w0 + w);
      s += terms[l].shift_coef * d;
      g += terms[l].scatter_coef * std::abs(d / (w0 - w));
    }
    shift[i] = s;
    scatter[i] = g;
  }
}

}  // namespace globalq::kernels::scalar
