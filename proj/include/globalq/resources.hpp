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

// Closed-form resource counts and program audits.

#pragma once

#include <cstdint>
#include <string>

#include "globalq/pulse.hpp"

namespace globalq {

struct CostReport {
  std::uint64_t rows_moved = 0;
  std::uint64_t columns_moved = 0;
  std::uint64_t single_qubit_rotations = 0;
  std::uint64_t measurements = 0;
  std::uint64_t entangling_passes = 0;

  CostReport& operator+=(const CostReport& o);
  friend CostReport operator+(CostReport a, const CostReport& b) { return a += b; }
  bool operator==(const CostReport&) const = default;
};

/// ceil(2 sqrt(m)), exact in integers. Throws std::invalid_argument for m = 0.
std::uint64_t network_move_rows(std::uint64_t m);
/// rows 4m, columns 6, rotations + measurements = 15m (rotations take the odd one).
CostReport cluster_gate_cost(std::uint64_t m);
/// Five rotations, five measurements.
CostReport one_way_1q_cost();

struct AuditResult {
  CostReport cost;
  bool malformed = false;  ///< an entangling bracket left open
  std::string problem;
};

/// Counts from the instruction stream:
///  rows / columns    unit ShiftP steps on axis 0 / axes 1-2
///  measurements      MEASPP (Zeno guards excluded)
///  entangling passes a MOLPULSE while the pointer frame is a P/P' superposition
///                    opens or closes a bracket; a pass is a closed pair
///  rotations         MOLPULSE outside brackets
AuditResult audit(const PulseProgram& program);

/// "m,rows,cols,rotations,measurements,passes"
std::string csv_header();
std::string csv_row(std::uint64_t m, const CostReport& r);

}  // namespace globalq
