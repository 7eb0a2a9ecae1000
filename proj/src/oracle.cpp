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

#include "globalq/oracle.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "globalq/kernels.hpp"

namespace globalq::oracle {

namespace {

void check_qubit(const QubitState& s, int q) {
  if (q < 0 || q >= s.qubits())
    throw OracleError("qubit " + std::to_string(q) + " out of range for " +
                      std::to_string(s.qubits()) + "-qubit state");
}

}  // namespace

QubitState::QubitState(int n) : n_(n) {
  if (n < 0 || n > kMaxQubits) throw OracleError("qubit count out of range");
  amp_.assign(std::size_t{1} << n, cplx{0});
  amp_[0] = 1;
}

QubitState::QubitState(int n, std::vector<cplx> amplitudes) : n_(n), amp_(std::move(amplitudes)) {
  if (n < 0 || n > kMaxQubits) throw OracleError("qubit count out of range");
  if (amp_.size() != std::size_t{1} << n) throw OracleError("amplitude count is not 2^n");
}

QubitState QubitState::basis(int n, std::size_t index) {
  QubitState s(n);
  if (index >= s.dim()) throw OracleError("basis index out of range");
  s.amp_[0] = 0;
  s.amp_[index] = 1;
  return s;
}

QubitState QubitState::random(int n, Rng& rng) {
  QubitState s(n);
  for (auto& a : s.amp_) {
    const double re = rng.normal();
    const double im = rng.normal();
    a = {re, im};
  }
  s.normalize();
  return s;
}

double QubitState::norm() const {
  double acc = 0;
  for (const auto& a : amp_) acc += std::norm(a);
  return std::sqrt(acc);
}

void QubitState::normalize() {
  const double nrm = norm();
  if (nrm == 0) throw OracleError("cannot normalize the zero vector");
  for (auto& a : amp_) a /= nrm;
}

void apply_1q(QubitState& s, const Mat2& u, int q) {
  check_qubit(s, q);
  kernels::active().apply_1q(s.amplitudes().data(), s.dim(), q, u);
}

void apply_cz(QubitState& s, int a, int b) {
  check_qubit(s, a);
  check_qubit(s, b);
  if (a == b) throw OracleError("CZ needs two distinct qubits");
  const std::size_t mask = (std::size_t{1} << a) | (std::size_t{1} << b);
  for (std::size_t i = 0; i < s.dim(); ++i)
    if ((i & mask) == mask) s.amplitudes()[i] = -s.amplitudes()[i];
}

void apply_controlled(QubitState& s, int control, int target, const Mat2& u) {
  check_qubit(s, control);
  check_qubit(s, target);
  if (control == target) throw OracleError("control equals target");
  const std::size_t c = std::size_t{1} << control, t = std::size_t{1} << target;
  auto& amp = s.amplitudes();
  for (std::size_t i = 0; i < s.dim(); ++i) {
    if (!(i & c) || (i & t)) continue;
    const cplx a0 = amp[i], a1 = amp[i | t];
    amp[i] = u.m[0] * a0 + u.m[1] * a1;
    amp[i | t] = u.m[2] * a0 + u.m[3] * a1;
  }
}

cplx inner(const QubitState& a, const QubitState& b) {
  if (a.qubits() != b.qubits()) throw OracleError("state size mismatch");
  return kernels::active().inner(a.amplitudes().data(), b.amplitudes().data(), a.dim());
}

double fidelity_up_to_global_phase(const QubitState& a, const QubitState& b) {
  const double f = std::norm(inner(a, b)) / (std::norm(a.norm()) * std::norm(b.norm()));
  return std::min(1.0, f);
}

std::pair<double, QubitState> project_z(const QubitState& s, int q, bool outcome) {
  check_qubit(s, q);
  const std::size_t bit = std::size_t{1} << q;
  QubitState out = s;
  double p = 0;
  for (std::size_t i = 0; i < s.dim(); ++i) {
    if (((i & bit) != 0) == outcome)
      p += std::norm(s[i]);
    else
      out.amplitudes()[i] = 0;
  }
  if (p > 0)
    for (auto& a : out.amplitudes()) a /= std::sqrt(p);
  return {p, out};
}

std::vector<cplx> reduced_density(const QubitState& s, std::span<const int> keep) {
  std::size_t keep_mask = 0;
  for (int q : keep) {
    check_qubit(s, q);
    if (keep_mask & (std::size_t{1} << q)) throw OracleError("duplicate qubit in reduced set");
    keep_mask |= std::size_t{1} << q;
  }
  const std::size_t k = std::size_t{1} << keep.size();
  std::vector<cplx> rho(k * k, cplx{0});
  auto sub_index = [&](std::size_t i) {
    std::size_t r = 0;
    for (std::size_t j = 0; j < keep.size(); ++j)
      if (i & (std::size_t{1} << keep[j])) r |= std::size_t{1} << j;
    return r;
  };
  for (std::size_t i = 0; i < s.dim(); ++i) {
    if (s[i] == cplx{0}) continue;
    for (std::size_t j = 0; j < s.dim(); ++j) {
      if ((i & ~keep_mask) != (j & ~keep_mask)) continue;
      rho[sub_index(i) * k + sub_index(j)] += s[i] * std::conj(s[j]);
    }
  }
  return rho;
}

double trace_distance(const std::vector<cplx>& rho, const std::vector<cplx>& sigma) {
  if (rho.size() != sigma.size()) throw OracleError("density matrix size mismatch");
  const auto k = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(rho.size()))));
  if (static_cast<std::size_t>(k * k) != rho.size()) throw OracleError("density matrix not square");
  Eigen::MatrixXcd d(k, k);
  for (Eigen::Index r = 0; r < k; ++r)
    for (Eigen::Index c = 0; c < k; ++c) d(r, c) = rho[r * k + c] - sigma[r * k + c];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(d, Eigen::EigenvaluesOnly);
  return 0.5 * eig.eigenvalues().cwiseAbs().sum();
}

}  // namespace globalq::oracle
