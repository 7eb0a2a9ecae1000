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

// Lowering of circuit operations and state-preparation recipes to pulse
// programs. Register qubit q is the atom at site q (row-major); a pulse on
// (S0,S1) with matrix M acts as M on every qubit.

#pragma once

#include <array>
#include <filesystem>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "globalq/graph.hpp"
#include "globalq/lattice.hpp"
#include "globalq/mat2.hpp"
#include "globalq/pulse.hpp"

namespace globalq {

class CompileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PointerPlan {
  LatticeSpec lattice;
  Position rest_site;
};

struct CompileOptions {
  /// Append the recorded correction frame as physical pulses. Needs a pointer.
  bool materialize_frames = false;
};

// ---------------------------------------------------------------------------
// Building blocks

/// U = phase * F[k-1] ... F[0] with F[i] = axes[i].sigma, k <= 2.
struct PauliFactoring {
  cplx phase{1};
  std::vector<std::array<double, 3>> axes;  ///< application order
};

/// Throws CompileError when U is not unitary (1e-12) or the residual of the
/// reconstruction exceeds 1e-9.
PauliFactoring factor_unitary(const Mat2& u);

/// Composite Hadamard on a pair: R(pi/2, pi/2) then R(pi, 0); matrix -iH.
std::vector<Instruction> hadamard_pulses(RamanPair pair);
/// Its inverse: R(-pi, 0) then R(-pi/2, pi/2); matrix iH.
std::vector<Instruction> inverse_hadamard_pulses(RamanPair pair);
/// Unit ShiftP moves from `from` to `to`, axis 0 first.
std::vector<Instruction> pointer_path(const LatticeSpec& lattice, const Position& from,
                                      const Position& to);
/// Pulses (S0,S1) realizing V with V^dagger Z V = axis.sigma; empty when the axis is z.
std::vector<Instruction> axis_pulses(const std::array<double, 3>& axis, bool inverse);

// ---------------------------------------------------------------------------
// Operations. All programs start and end with the pointer at rest in P.

PulseProgram compile_local_phase(const Position& site, const PointerPlan& plan);
PulseProgram compile_local_1q(const Position& site, const Mat2& u, const PointerPlan& plan);
PulseProgram compile_measure_z(const Position& site, const std::string& tag,
                               const PointerPlan& plan);

/// Pieces of the controlled-U program; the full program is
/// entangle + body + reverse_unitary(entangle) + phase_fix.
struct ControlledUParts {
  PulseProgram entangle;  ///< steps 1-5 plus the branch fix
  PulseProgram body;      ///< targets, each visited once from rest
  PulseProgram disentangle;
  PulseProgram phase_fix;  ///< local phase on the control, may be empty
};

ControlledUParts compile_controlled_u_parts(const Position& control,
                                            const std::vector<Position>& targets, const Mat2& u,
                                            const PointerPlan& plan);
PulseProgram compile_controlled_u(const Position& control, const std::vector<Position>& targets,
                                  const Mat2& u, const PointerPlan& plan);

/// GHZ on `sites`, the last one acting as control.
PulseProgram compile_ghz(const std::vector<Position>& sites, const PointerPlan& plan);
PulseProgram compile_graph_state(const GraphSpec& g, const PointerPlan& plan,
                                 const CompileOptions& options = {});

/// Register lattice with the margin the cluster shifts need.
LatticeSpec cluster_lattice(const LatticeSpec& spec);
/// Pointer-free program; corrections (Z on atoms with an odd number of +1
/// neighbours) are recorded in metadata.
PulseProgram compile_cluster_init(const LatticeSpec& spec);
/// The recorded corrections, undone physically.
PulseProgram compile_frame_corrections(const std::vector<LocalCorrection>& frame,
                                       const PointerPlan& plan);

// ---------------------------------------------------------------------------
// One-way single-qubit rotation

/// Euler angles with H*U proportional to Rz(a) Rx(b) Rz(c).
std::array<double, 3> zxz_angles_of_hu(const Mat2& u);

/// Maps |+theta> -> |0>, |-theta> -> |1> up to phase: a pi rotation about the
/// bisector of (cos theta, sin theta, 0) and z.
Mat2 equatorial_basis_rotation(double theta);

struct OneWayStep {
  Position site;
  double theta = 0;            ///< unadapted measurement angle
  PulseProgram positive;       ///< measurement at +theta
  PulseProgram negative;       ///< measurement at -theta
  std::string tag;
};

struct OneWayPattern {
  std::vector<OneWayStep> steps;  ///< five
  Position output;
  Mat2 rotation;
  /// Steps with every adaptive choice at +theta; used for audits.
  PulseProgram static_program() const;
};

/// Pauli frame on the output: logical state = X^x Z^z U |psi>.
struct PauliFrame {
  bool x = false;
  bool z = false;
  bool operator==(const PauliFrame&) const = default;
};

/// Initial frame (0,0); measuring step k with outcome s updates (x,z) <- (z^s, x)
/// and picks the negative variant when x is set.
PauliFrame advance_frame(PauliFrame f, bool outcome);

OneWayPattern compile_one_way_pattern(const Mat2& rotation, const std::vector<Position>& chain,
                                      const Position& output, const PointerPlan& plan);
/// Static form required by the operation signature: the +theta variants.
PulseProgram compile_one_way_1q(const Mat2& rotation, const std::vector<Position>& chain,
                                const Position& output, const PointerPlan& plan);

struct OneWayRun {
  QuantumState final_state;
  std::vector<bool> outcomes;
  PauliFrame frame;
  PulseProgram executed;  ///< concatenation of the variants actually run
};

/// Runs the pattern adaptively. With forced outcomes of length 5 every branch
/// can be enumerated.
OneWayRun run_one_way(const OneWayPattern& pattern, const QuantumState& initial, Rng& rng,
                      const std::vector<bool>& forced = {});

// ---------------------------------------------------------------------------
// Circuits

struct Local1Q {
  Position site;
  Mat2 u;
};
struct MeasureZ {
  Position site;
  std::string tag;
};
struct ControlledU {
  Position control;
  std::vector<Position> targets;
  Mat2 u;
};
struct PrepGHZ {
  std::vector<Position> sites;
};
struct PrepGraph {
  GraphSpec graph;
};
struct PrepCluster {};

using CircuitOp = std::variant<Local1Q, MeasureZ, ControlledU, PrepGHZ, PrepGraph, PrepCluster>;

std::string op_name(const CircuitOp& op);
/// Sites the op may act on.
std::vector<Position> op_support(const CircuitOp& op, const LatticeSpec& lattice);
/// Checks sites, distinctness and unitarity; throws CompileError.
void validate_op(const CircuitOp& op, const LatticeSpec& lattice);

PulseProgram compile_op(const CircuitOp& op, const PointerPlan& plan,
                        const CompileOptions& options = {});
/// Concatenation of every op. PrepCluster cannot share a program with pointer ops.
PulseProgram compile_circuit(const std::vector<CircuitOp>& ops, const PointerPlan& plan,
                             const CompileOptions& options = {});

class CircuitParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Reads the circuit text. GRAPH paths are resolved through `read_file`
/// (relative to `base_dir`).
std::vector<CircuitOp> parse_circuit(
    std::string_view text, const LatticeSpec& lattice, const std::filesystem::path& base_dir = {},
    const std::function<std::string(const std::filesystem::path&)>& read_file = {});

}  // namespace globalq
