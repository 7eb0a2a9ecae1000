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

#include <cstdlib>

#include "kernels/impl.hpp"

namespace globalq::kernels {

const KernelTable& scalar_table() {
  static const KernelTable t{"scalar", &scalar::apply_1q, &scalar::inner, &scalar::dipole_sum};
  return t;
}

const KernelTable* avx2_table() {
#ifdef GLOBALQ_HAVE_AVX2
  static const KernelTable t{"avx2", &avx2::apply_1q, &avx2::inner, &avx2::dipole_sum};
  return &t;
#else
  return nullptr;
#endif
}

bool cpu_has_avx2() {
#if defined(__GNUC__) && (defined(__x86_64__) || defined(__i386__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable& active() {
  static const KernelTable* chosen = [] {
    const char* force = std::getenv("GLOBALQ_FORCE_SCALAR");
    if (force && *force && *force != '0') return &scalar_table();
    if (const KernelTable* v = avx2_table(); v && cpu_has_avx2()) return v;
    return &scalar_table();
  }();
  return *chosen;
}

}  // namespace globalq::kernels
