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

// Dense n-qubit state vector. Deliberately knows nothing about atoms, levels or
// pulses; it is the reference the compiled programs are checked against.

#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "globalq/mat2.hpp"
#include "globalq/rng.hpp"

namespace globalq::oracle {

inline constexpr int kMaxQubits = 12;

class QubitState {
 public:
  explicit QubitState(int n);  ///< |0...0>
  QubitState(int n, std::vector<cplx> amplitudes);

  static QubitState basis(int n, std::size_t index);
  /// Normalized complex Gaussian vector.
  static QubitState random(int n, Rng& rng);

  int qubits() const { return n_; }
  std::size_t dim() const { return amp_.size(); }
  const std::vector<cplx>& amplitudes() const { return amp_; }
  std::vector<cplx>& amplitudes() { return amp_; }
  cplx operator[](std::size_t i) const { return amp_[i]; }
  double norm() const;
  void normalize();

 private:
  int n_;
  std::vector<cplx> amp_;
};

/// Raised for bad qubit indices or size mismatches.
class OracleError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

void apply_1q(QubitState& s, const Mat2& u, int q);
inline void apply_h(QubitState& s, int q) { apply_1q(s, Mat2::h(), q); }
inline void apply_x(QubitState& s, int q) { apply_1q(s, Mat2::x(), q); }
inline void apply_z(QubitState& s, int q) { apply_1q(s, Mat2::z(), q); }
void apply_cz(QubitState& s, int a, int b);
/// U on target when control is |1>.
void apply_controlled(QubitState& s, int control, int target, const Mat2& u);

cplx inner(const QubitState& a, const QubitState& b);
double fidelity_up_to_global_phase(const QubitState& a, const QubitState& b);

/// Projective Z measurement of qubit q: probability of `outcome` and the
/// renormalized post-state (unchanged amplitudes when the probability is 0).
std::pair<double, QubitState> project_z(const QubitState& s, int q, bool outcome);

/// Reduced density matrix on `keep` (row-major, dimension 2^|keep|); bit i of
/// the row index is keep[i].
std::vector<cplx> reduced_density(const QubitState& s, std::span<const int> keep);
/// Trace distance between two density matrices of equal dimension.
double trace_distance(const std::vector<cplx>& rho, const std::vector<cplx>& sigma);

}  // namespace globalq::oracle
