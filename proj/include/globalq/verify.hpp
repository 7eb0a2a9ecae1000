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

// Compiled program versus dense oracle on random inputs.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "globalq/compiler.hpp"
#include "globalq/oracle.hpp"
#include "globalq/pulse.hpp"

namespace globalq {

inline constexpr int kMaxVerifyQubits = 8;

struct VerifyOptions {
  int trials = 100;
  std::uint64_t seed = 0;
  /// Drop this instruction from the compiled program (mutation testing).
  std::optional<std::size_t> skip_instruction;
  double fidelity_threshold = 1e-9;
  CompileOptions compile;
};

struct VerifyReport {
  std::string op;
  int trials = 0;
  double min_fidelity = 1.0;
  double min_nonsupport = 1.0;   ///< 1 - trace distance on the complement
  double min_schmidt = 1.0;
  bool pointer_ok = true;
  std::optional<std::uint64_t> failing_seed;
  std::string failure;           ///< first error message, if any
  bool passed() const { return !failing_seed.has_value(); }
  /// "OP <name> TRIALS <k> MIN_FID <x> POINTER_OK <bool>" plus a FAIL line.
  std::string to_text() const;
};

/// Ideal register action of `op` on `input` (qubit q = site q), followed by the
/// recorded corrections. For MeasureZ the observed outcome picks the branch.
oracle::QubitState ideal_action(const CircuitOp& op, const LatticeSpec& lattice,
                                const oracle::QubitState& input,
                                const std::vector<LocalCorrection>& corrections,
                                std::optional<bool> outcome = {});

struct TrialResult {
  double fidelity = 0;
  double nonsupport = 0;
  double schmidt = 0;
  bool pointer_ok = false;
  std::string error;
  std::vector<Outcome> outcomes;
  oracle::QubitState output{0};
};

/// Executes `program` on `input` embedded with the pointer at rest (none for
/// PrepCluster) and compares against the ideal action.
TrialResult run_trial(const CircuitOp& op, const PulseProgram& program, const PointerPlan& plan,
                      const oracle::QubitState& input, Rng& rng);

VerifyReport verify_program(const CircuitOp& op, const PointerPlan& plan,
                            const VerifyOptions& options = {});

}  // namespace globalq
