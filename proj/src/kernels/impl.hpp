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

#pragma once

#include "globalq/kernels.hpp"

namespace globalq::kernels::scalar {

void apply_1q(cplx* amp, std::size_t dim, int q, const Mat2& u);
cplx inner(const cplx* a, const cplx* b, std::size_t n);
void dipole_sum(const DipoleTerm* terms, std::size_t nterms, const double* omega, std::size_t n,
                double* shift, double* scatter);

}  // namespace globalq::kernels::scalar

namespace globalq::kernels::avx2 {

void apply_1q(cplx* amp, std::size_t dim, int q, const Mat2& u);
cplx inner(const cplx* a, const cplx* b, std::size_t n);
void dipole_sum(const DipoleTerm* terms, std::size_t nterms, const double* omega, std::size_t n,
                double* shift, double* scatter);

}  // namespace globalq::kernels::avx2
