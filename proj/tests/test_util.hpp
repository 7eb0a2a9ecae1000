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

// Shared fixtures for the unit and acceptance tests.

#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <vector>

#include "globalq/lattice.hpp"
#include "globalq/mat2.hpp"
#include "globalq/oracle.hpp"
#include "globalq/pulse.hpp"
#include "globalq/rng.hpp"

namespace globalq::testing {

/// Haar SU(2) from a normalized real 4-vector.
inline Mat2 random_su2(Rng& rng) {
  double q[4];
  double n = 0;
  for (double& x : q) {
    x = rng.normal();
    n += x * x;
  }
  n = std::sqrt(n);
  for (double& x : q) x /= n;
  const cplx a{q[0], q[1]}, b{q[2], q[3]};
  return {{a, -std::conj(b), b, std::conj(a)}};
}

inline Mat2 random_u2(Rng& rng) {
  return std::polar(1.0, 2 * kPi * rng.uniform()) * random_su2(rng);
}

/// Random normalized state over every config with register atoms in {S0,S1}
/// at home and, if requested, the pointer in {P,Pp} on any site.
inline QuantumState random_state(const LatticeSpec& spec, bool pointer, Rng& rng) {
  const int n = spec.site_count();
  QuantumState::AmplitudeMap amps;
  std::vector<Position> sites;
  for (int i = 0; i < n; ++i) sites.push_back(spec.position_of(i));
  const std::size_t pointer_options = pointer ? 2 * sites.size() : 1;
  double norm = 0;
  for (std::size_t bits = 0; bits < (std::size_t{1} << n); ++bits) {
    for (std::size_t p = 0; p < pointer_options; ++p) {
      BasisConfig c;
      for (int i = 0; i < n; ++i)
        c.atoms.push_back({sites[i], (bits >> i) & 1 ? InternalState::S1 : InternalState::S0});
      if (pointer)
        c.atoms.push_back({sites[p / 2], p % 2 ? InternalState::Pp : InternalState::P});
      const cplx a{rng.normal(), rng.normal()};
      norm += std::norm(a);
      amps[c] = a;
    }
  }
  for (auto& [c, a] : amps) a /= std::sqrt(norm);
  return QuantumState(spec, n, pointer, std::move(amps));
}

inline double state_distance(const QuantumState& a, const QuantumState& b) {
  double d = 0;
  for (const auto& [c, x] : a.amplitudes()) d += std::norm(x - b.amplitude(c));
  for (const auto& [c, y] : b.amplitudes())
    if (a.amplitudes().count(c) == 0) d += std::norm(y);
  return std::sqrt(d);
}

inline oracle::QubitState register_of(std::vector<cplx> amps) {
  int n = 0;
  while ((std::size_t{1} << n) < amps.size()) ++n;
  return oracle::QubitState(n, std::move(amps));
}

/// Embeds `in`, executes, and factors the pointer back out.
inline oracle::QubitState run_register(const PulseProgram& p, const LatticeSpec& spec,
                                       std::optional<Position> pointer,
                                       const oracle::QubitState& in, Rng& rng,
                                       const ExecuteOptions& opt = {},
                                       std::vector<Outcome>* outcomes = nullptr,
                                       double* schmidt = nullptr) {
  const auto init = embed_register(spec, in.amplitudes(), pointer);
  const auto trace = execute(p, init, rng, opt);
  if (outcomes) *outcomes = trace.outcomes;
  const auto f = factor_pointer(trace.final_state);
  if (schmidt) *schmidt = f.schmidt_weight;
  return register_of(f.register_state);
}

inline void apply_corrections(oracle::QubitState& s, const std::vector<LocalCorrection>& cs,
                              const LatticeSpec& spec) {
  for (const auto& c : cs) oracle::apply_1q(s, c.gate, spec.linear_index(c.site));
}

inline oracle::QubitState product(const std::vector<std::vector<cplx>>& qubits) {
  std::vector<cplx> v{1};
  for (const auto& q : qubits) {
    std::vector<cplx> w(v.size() * 2);
    for (std::size_t i = 0; i < v.size(); ++i) {
      w[i] = v[i] * q[0];
      w[i + v.size()] = v[i] * q[1];
    }
    v = w;
  }
  return register_of(v);
}

}  // namespace globalq::testing
