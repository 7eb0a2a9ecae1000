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

// Built with -mavx2 -mfma. Only reached through the dispatch table after a
// cpu check, so nothing here may be inlined into generic code.

#include <immintrin.h>

#include "kernels/impl.hpp"

namespace globalq::kernels::avx2 {

namespace {

// Two complex doubles per register: [re0 im0 re1 im1].
inline __m256d cmul(__m256d mre, __m256d mim, __m256d v) {
  const __m256d swapped = _mm256_permute_pd(v, 0b0101);
  return _mm256_fmaddsub_pd(mre, v, _mm256_mul_pd(mim, swapped));
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

void apply_1q(cplx* amp, std::size_t dim, int q, const Mat2& u) {
  // q = 0 pairs neighbours inside one register; the scalar loop is as fast.
  if (q == 0 || dim < 4) {
    scalar::apply_1q(amp, dim, q, u);
    return;
  }
  const __m256d r00 = _mm256_set1_pd(u.m[0].real()), i00 = _mm256_set1_pd(u.m[0].imag());
  const __m256d r01 = _mm256_set1_pd(u.m[1].real()), i01 = _mm256_set1_pd(u.m[1].imag());
  const __m256d r10 = _mm256_set1_pd(u.m[2].real()), i10 = _mm256_set1_pd(u.m[2].imag());
  const __m256d r11 = _mm256_set1_pd(u.m[3].real()), i11 = _mm256_set1_pd(u.m[3].imag());
  auto* d = reinterpret_cast<double*>(amp);
  const std::size_t stride = std::size_t{1} << q;
  for (std::size_t base = 0; base < dim; base += 2 * stride) {
    for (std::size_t j = base; j < base + stride; j += 2) {
      double* p0 = d + 2 * j;
      double* p1 = d + 2 * (j + stride);
      const __m256d a0 = _mm256_loadu_pd(p0);
      const __m256d a1 = _mm256_loadu_pd(p1);
      const __m256d b0 = _mm256_add_pd(cmul(r00, i00, a0), cmul(r01, i01, a1));
      const __m256d b1 = _mm256_add_pd(cmul(r10, i10, a0), cmul(r11, i11, a1));
      _mm256_storeu_pd(p0, b0);
      _mm256_storeu_pd(p1, b1);
    }
  }
}

cplx inner(const cplx* a, const cplx* b, std::size_t n) {
  const auto* x = reinterpret_cast<const double*>(a);
  const auto* y = reinterpret_cast<const double*>(b);
  __m256d re = _mm256_setzero_pd();
  __m256d cross = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(x + 2 * i);
    const __m256d vb = _mm256_loadu_pd(y + 2 * i);
    re = _mm256_fmadd_pd(va, vb, re);
    cross = _mm256_fmadd_pd(va, _mm256_permute_pd(vb, 0b0101), cross);
  }
  // cross lanes: [ar*bi, ai*br, ...]; imaginary part is even minus odd.
  alignas(32) double c[4];
  _mm256_store_pd(c, cross);
  double sre = hsum(re);
  double sim = (c[0] - c[1]) + (c[2] - c[3]);
  for (; i < n; ++i) {
    sre += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    sim += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
  }
  return {sre, sim};
}

void dipole_sum(const DipoleTerm* terms, std::size_t nterms, const double* omega, std::size_t n,
                double* shift, double* scatter) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d sign = _mm256_set1_pd(-0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d w = _mm256_loadu_pd(omega + i);
    __m256d s = _mm256_setzero_pd();
    __m256d g = _mm256_setzero_pd();
    for (std::size_t l = 0; l < nterms; ++l) {
      const __m256d w0 = _mm256_set1_pd(terms[l].omega0);
      const __m256d red = _mm256_div_pd(one, _mm256_sub_pd(w0, w));
      const __m256d dd = _mm256_add_pd(red, _mm256_div_pd(one, _mm256_add_pd(w0, w)));
      s = _mm256_fmadd_pd(_mm256_set1_pd(terms[l].shift_coef), dd, s);
      const __m256d weight = _mm256_andnot_pd(sign, _mm256_mul_pd(dd, red));
      g = _mm256_fmadd_pd(_mm256_set1_pd(terms[l].scatter_coef), weight, g);
    }
    _mm256_storeu_pd(shift + i, s);
    _mm256_storeu_pd(scatter + i, g);
  }
  if (i < n) scalar::dipole_sum(terms, nterms, omega + i, n - i, shift + i, scatter + i);
}

}  // namespace globalq::kernels::avx2
