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

// Global-control instruction set, program container and executor.

#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "globalq/lattice.hpp"
#include "globalq/mat2.hpp"
#include "globalq/rng.hpp"

namespace globalq {

struct Raman {
  RamanPair pair = RamanPair::S0S1;
  double theta = 0;
  double phi = 0;
  bool operator==(const Raman&) const = default;
};

struct ShiftP {
  std::array<int, 3> delta{0, 0, 0};
  int dims = 1;  ///< number of components written in text form
  bool operator==(const ShiftP& o) const { return delta == o.delta; }
};

struct Collide {
  std::string table;
  bool operator==(const Collide&) const = default;
};

struct MolecularPulse {
  bool operator==(const MolecularPulse&) const = default;
};

struct LocalPhaseZ1Pp {
  bool operator==(const LocalPhaseZ1Pp&) const = default;
};

struct MeasurePprime {
  std::string tag;
  bool operator==(const MeasurePprime&) const = default;
};

struct ResetPprime {
  bool operator==(const ResetPprime&) const = default;
};

/// Expands to `count` MeasurePprime whose outcomes must all be false.
struct ZenoGuard {
  int count = 1;
  bool operator==(const ZenoGuard&) const = default;
};

using Instruction = std::variant<Raman, ShiftP, Collide, MolecularPulse, LocalPhaseZ1Pp,
                                 MeasurePprime, ResetPprime, ZenoGuard>;

/// Text mnemonic of the instruction kind ("RAMAN", "SHIFTP", ...).
std::string_view kind_name(const Instruction& ins);

/// A local unitary the compiled output carries relative to the ideal target:
/// executed = (product of corrections) * ideal.
struct LocalCorrection {
  Position site;
  Mat2 gate;
  std::string label;
};

struct ProgramMetadata {
  std::string description;
  std::vector<LocalCorrection> corrections;
};

struct PulseProgram {
  std::vector<Instruction> instructions;
  std::map<std::string, CollisionPhaseTable> tables;
  ProgramMetadata metadata;

  bool empty() const { return instructions.empty(); }
  std::size_t size() const { return instructions.size(); }
  PulseProgram& append(Instruction ins) {
    instructions.push_back(std::move(ins));
    return *this;
  }
  /// Throws std::invalid_argument when a Collide id is undeclared or a ZenoGuard
  /// count is < 1.
  void validate() const;
  /// Instruction-kind counts with ZenoGuard expanded into MEASPP.
  std::map<std::string, std::size_t> histogram() const;
};

class ProgramError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Error raised while executing an instruction; index is the 0-based position
/// in the program.
class ExecutionError : public std::runtime_error {
 public:
  ExecutionError(std::size_t index, const std::string& what)
      : std::runtime_error("instruction " + std::to_string(index) + ": " + what), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

struct Outcome {
  std::string tag;
  bool value = false;
  bool operator==(const Outcome&) const = default;
};

struct ExecutionTrace {
  std::vector<Outcome> outcomes;
  QuantumState final_state;
  std::map<std::string, std::size_t> instruction_count_histogram;
};

struct ExecuteOptions {
  /// When non-empty, the i-th non-Zeno MeasurePprime takes forced_outcomes[i] by
  /// projection instead of sampling (branch enumeration). A zero-probability
  /// forced branch is an ExecutionError.
  std::vector<bool> forced_outcomes;
};

ExecutionTrace execute(const PulseProgram& program, const QuantumState& initial, Rng& rng,
                       const ExecuteOptions& options = {});

PulseProgram concat(const PulseProgram& a, const PulseProgram& b);

/// Reversed program with every instruction inverted. Throws ProgramError when a
/// measurement, reset or Zeno guard is present.
PulseProgram reverse_unitary(const PulseProgram& p);

/// Text serialization (see README for the grammar).
std::string to_text(const PulseProgram& p);
PulseProgram parse_program(std::string_view text);

}  // namespace globalq
