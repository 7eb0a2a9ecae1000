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

// Joint state of the trapped atoms and the global control primitives that act
// on it. Every operation is a pure state-to-state transform.

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "globalq/mat2.hpp"
#include "globalq/rng.hpp"

namespace globalq {

/// Internal levels, ordered S0 < S1 < P < Pp. S0/S1 are pinned by the lattice,
/// P/Pp are carried by the state-selective lattice.
enum class InternalState : std::uint8_t { S0 = 0, S1 = 1, P = 2, Pp = 3 };

constexpr bool is_mobile(InternalState s) {
  return s == InternalState::P || s == InternalState::Pp;
}

std::string_view to_string(InternalState s);
InternalState parse_internal_state(std::string_view token);

struct Position {
  std::array<int, 3> coord{0, 0, 0};

  constexpr int operator[](int d) const { return coord[d]; }
  constexpr int& operator[](int d) { return coord[d]; }
  auto operator<=>(const Position&) const = default;

  friend Position operator+(Position a, const std::array<int, 3>& delta) {
    for (int d = 0; d < 3; ++d) a.coord[d] += delta[d];
    return a;
  }
};

/// Hard-walled lattice of 1-3 dimensions. mobile_margin widens the region that
/// mobile (P/Pp) atoms may enter by that many sites on both sides of every
/// active dimension; pinned atoms must stay inside the core extent.
struct LatticeSpec {
  int dims = 1;
  std::array<int, 3> extent{1, 1, 1};
  int mobile_margin = 0;

  static LatticeSpec make(std::initializer_list<int> extents, int mobile_margin = 0);

  int site_count() const { return extent[0] * extent[1] * extent[2]; }
  bool contains(const Position& p) const;
  bool contains_mobile(const Position& p) const;
  int linear_index(const Position& p) const;
  Position position_of(int index) const;
  std::string position_string(const Position& p, char sep = ',') const;
  void validate() const;

  bool operator==(const LatticeSpec&) const = default;
};

/// Parses "1,2" (or "1:2"; any of ",:" as separator) into a Position of spec.dims
/// coordinates. Throws std::invalid_argument.
Position parse_position(std::string_view text, int dims);

/// Site token: a row-major linear index ("4") or coordinates ("1:2", "1,2").
/// Throws std::invalid_argument when malformed or outside the lattice.
Position parse_site(std::string_view token, const LatticeSpec& spec);

struct Atom {
  Position position;
  InternalState state = InternalState::S0;
  auto operator<=>(const Atom&) const = default;
};

/// One classical configuration; atoms ordered by AtomId (index).
struct BasisConfig {
  std::vector<Atom> atoms;
  auto operator<=>(const BasisConfig&) const = default;
};

/// Integrated collisional phases (radians) for co-located unordered pairs.
struct CollisionPhaseTable {
  double phase_0P = 0;
  double phase_1P = kPi;
  double phase_0Pp = 0;
  double phase_1Pp = 0;
  double phase_PP = 0;
  double phase_PPp = 0;
  double phase_PpPp = 0;

  static CollisionPhaseTable zeros() { return {0, 0, 0, 0, 0, 0, 0}; }

  /// Phase for an unordered pair; pinned-pinned pairs never occur and yield 0.
  double pair_phase(InternalState a, InternalState b) const;
  CollisionPhaseTable negated() const;
  bool all_multiples_of_pi(double tol = 1e-12) const;
  bool operator==(const CollisionPhaseTable&) const = default;
};

class LatticeError : public std::runtime_error {
 public:
  enum class Kind {
    OutOfBounds,
    DisallowedPair,
    Occupancy,
    NonDefiniteReset,
    RosterMismatch,
    ResidualPopulation,
    PointerEntangled,
    DisplacedAtom,
    Parse,
  };
  LatticeError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Sparse amplitude map over BasisConfigs. Atoms 0..register_count-1 are the
/// register (atom i lives at site i in row-major order); an optional extra atom
/// is the pointer.
class QuantumState {
 public:
  using AmplitudeMap = std::map<BasisConfig, cplx>;
  static constexpr double kDefaultPruneEps = 1e-12;

  QuantumState(LatticeSpec spec, int register_count, bool has_pointer, AmplitudeMap amplitudes,
               double prune_eps = kDefaultPruneEps);

  const LatticeSpec& spec() const { return spec_; }
  int register_count() const { return register_count_; }
  bool has_pointer() const { return has_pointer_; }
  int atom_count() const { return register_count_ + (has_pointer_ ? 1 : 0); }
  double prune_eps() const { return prune_eps_; }
  const AmplitudeMap& amplitudes() const { return amps_; }
  std::size_t size() const { return amps_.size(); }
  double norm_squared() const;
  cplx amplitude(const BasisConfig& c) const;
  Position home_site(int atom) const { return spec_.position_of(atom); }

  /// Same roster and lattice, new amplitudes (pruned + validated).
  QuantumState with_amplitudes(AmplitudeMap amplitudes) const;

  /// Line-oriented snapshot: `re im ; (x,y,S) (x,y,S) ...` one config per line.
  std::string to_text() const;
  static QuantumState from_text(const LatticeSpec& spec, std::string_view text);

 private:
  void prune_and_validate();

  LatticeSpec spec_;
  int register_count_;
  bool has_pointer_;
  double prune_eps_;
  AmplitudeMap amps_;
};

enum class RamanPair { S0S1, S1P, S1Pp, PPp };

std::string_view to_string(RamanPair p);
RamanPair parse_raman_pair(std::string_view token);
std::pair<InternalState, InternalState> levels(RamanPair p);
/// Canonicalizes an unordered pair; throws DisallowedPair for couplings the
/// level scheme does not provide (e.g. S0-P).
RamanPair raman_pair(InternalState a, InternalState b);

QuantumState init_register(const LatticeSpec& spec, std::optional<Position> pointer_site = {});

/// Product state of a plain n-qubit register (bit q of the index = atom q) with
/// the pointer, if given, in P at pointer_site.
QuantumState embed_register(const LatticeSpec& spec, std::span<const cplx> qubits,
                            std::optional<Position> pointer_site = {});

QuantumState global_raman(const QuantumState& state, RamanPair pair, double theta, double phi);
QuantumState global_raman(const QuantumState& state, InternalState a, InternalState b,
                          double theta, double phi);
QuantumState shift_pointer_lattice(const QuantumState& state, const std::array<int, 3>& delta);
QuantumState collision_wait(const QuantumState& state, const CollisionPhaseTable& table);
QuantumState molecular_pulse(const QuantumState& state);
QuantumState local_phase_z1Pp(const QuantumState& state);

/// Probability that some atom is in Pp.
double pprime_probability(const QuantumState& state);
/// Projects onto the given outcome branch and renormalizes. Returns the branch
/// probability alongside the state; throws std::domain_error for a zero branch.
std::pair<double, QuantumState> project_pprime(const QuantumState& state, bool outcome);
std::pair<bool, QuantumState> measure_pprime(const QuantumState& state, Rng& rng);
QuantumState reset_pprime(const QuantumState& state);

cplx overlap(const QuantumState& a, const QuantumState& b);

struct PointerComponent {
  Atom atom;
  cplx amplitude;
};

struct PointerFactor {
  std::vector<cplx> register_state;  ///< 2^n amplitudes, bit q = atom q
  std::vector<PointerComponent> pointer;
  double schmidt_weight = 1.0;
};

/// Splits a state into register qubits and pointer. Throws ResidualPopulation,
/// DisplacedAtom or PointerEntangled (largest Schmidt weight < 1 - tol).
PointerFactor factor_pointer(const QuantumState& state, double tol = 1e-10);

}  // namespace globalq
