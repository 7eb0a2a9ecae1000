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

#include <Eigen/Dense>
#include <map>

#include "globalq/lattice.hpp"

namespace globalq {

PointerFactor factor_pointer(const QuantumState& state, double tol) {
  using Kind = LatticeError::Kind;
  const int n = state.register_count();
  const std::size_t dim = std::size_t{1} << n;

  std::map<Atom, int> pointer_index;
  std::vector<Atom> pointer_atoms;
  if (state.has_pointer()) {
    for (const auto& [cfg, amp] : state.amplitudes()) {
      const Atom& p = cfg.atoms[n];
      if (pointer_index.emplace(p, static_cast<int>(pointer_atoms.size())).second)
        pointer_atoms.push_back(p);
    }
  }
  const int k = state.has_pointer() ? static_cast<int>(pointer_atoms.size()) : 1;

  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), k);
  for (const auto& [cfg, amp] : state.amplitudes()) {
    std::size_t idx = 0;
    for (int q = 0; q < n; ++q) {
      const Atom& a = cfg.atoms[q];
      if (a.state != InternalState::S0 && a.state != InternalState::S1)
        throw LatticeError(Kind::ResidualPopulation,
                           "register atom " + std::to_string(q) + " left in " +
                               std::string(to_string(a.state)));
      if (a.position != state.home_site(q))
        throw LatticeError(Kind::DisplacedAtom,
                           "register atom " + std::to_string(q) + " away from its home site");
      if (a.state == InternalState::S1) idx |= std::size_t{1} << q;
    }
    const int col = state.has_pointer() ? pointer_index.at(cfg.atoms[n]) : 0;
    m(static_cast<Eigen::Index>(idx), col) += amp;
  }

  // Reduced pointer density matrix rho[i][j] = sum_r m[r][i] conj(m[r][j]).
  const Eigen::MatrixXcd rho = (m.adjoint() * m).transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(rho);
  const Eigen::Index top = k - 1;
  const double trace = rho.trace().real();
  const double weight = trace > 0 ? eig.eigenvalues()(top) / trace : 0.0;
  if (weight < 1.0 - tol)
    throw LatticeError(Kind::PointerEntangled,
                       "pointer entangled with register (Schmidt weight " +
                           std::to_string(weight) + ")");

  Eigen::VectorXcd v = eig.eigenvectors().col(top);
  Eigen::Index lead = 0;
  v.cwiseAbs().maxCoeff(&lead);
  v *= std::abs(v(lead)) / v(lead);

  PointerFactor out;
  out.schmidt_weight = weight;
  Eigen::VectorXcd reg = m * v.conjugate();
  reg /= reg.norm();
  out.register_state.assign(reg.data(), reg.data() + reg.size());
  if (state.has_pointer())
    for (int i = 0; i < k; ++i)
      if (std::abs(v(i)) > state.prune_eps()) out.pointer.push_back({pointer_atoms[i], v(i)});
  return out;
}

}  // namespace globalq
