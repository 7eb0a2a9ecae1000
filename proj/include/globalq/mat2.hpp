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

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

namespace globalq {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

/// Row-major 2x2 complex matrix: {m00, m01, m10, m11}.
struct Mat2 {
  std::array<cplx, 4> m{cplx{1, 0}, cplx{0, 0}, cplx{0, 0}, cplx{1, 0}};

  constexpr cplx operator()(int r, int c) const { return m[2 * r + c]; }
  constexpr cplx& operator()(int r, int c) { return m[2 * r + c]; }

  static Mat2 identity() { return {}; }
  static Mat2 x() { return {{cplx{0}, cplx{1}, cplx{1}, cplx{0}}}; }
  static Mat2 y() { return {{cplx{0}, cplx{0, -1}, cplx{0, 1}, cplx{0}}}; }
  static Mat2 z() { return {{cplx{1}, cplx{0}, cplx{0}, cplx{-1}}}; }
  static Mat2 h() {
    const double s = 1.0 / std::sqrt(2.0);
    return {{cplx{s}, cplx{s}, cplx{s}, cplx{-s}}};
  }
  static Mat2 diag(cplx a, cplx b) { return {{a, cplx{0}, cplx{0}, b}}; }

  /// exp(-i theta/2 (cos phi X + sin phi Y)).
  static Mat2 raman(double theta, double phi) {
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    const cplx e_m = std::polar(1.0, -phi), e_p = std::polar(1.0, phi);
    return {{cplx{c}, cplx{0, -1} * e_m * s, cplx{0, -1} * e_p * s, cplx{c}}};
  }

  /// n.sigma for a unit Bloch vector n.
  static Mat2 pauli_dot(const std::array<double, 3>& n) {
    return {{cplx{n[2]}, cplx{n[0], -n[1]}, cplx{n[0], n[1]}, cplx{-n[2]}}};
  }

  Mat2 adjoint() const {
    return {{std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])}};
  }
  cplx det() const { return m[0] * m[3] - m[1] * m[2]; }
  cplx trace() const { return m[0] + m[3]; }

  friend Mat2 operator*(const Mat2& a, const Mat2& b) {
    Mat2 r;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) r(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j);
    return r;
  }
  friend Mat2 operator*(cplx s, const Mat2& a) {
    return {{s * a.m[0], s * a.m[1], s * a.m[2], s * a.m[3]}};
  }
};

/// Frobenius norm of a - b.
inline double distance(const Mat2& a, const Mat2& b) {
  double acc = 0;
  for (int i = 0; i < 4; ++i) acc += std::norm(a.m[i] - b.m[i]);
  return std::sqrt(acc);
}

/// Distance between a and b after removing the best global phase.
inline double distance_up_to_phase(const Mat2& a, const Mat2& b) {
  cplx ip{0};
  for (int i = 0; i < 4; ++i) ip += std::conj(a.m[i]) * b.m[i];
  const double mag = std::abs(ip);
  const cplx phase = mag > 0 ? ip / mag : cplx{1};
  return distance(phase * a, b);
}

inline bool is_unitary(const Mat2& u, double tol = 1e-12) {
  return distance(u.adjoint() * u, Mat2::identity()) <= tol;
}

}  // namespace globalq
