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

#include "globalq/resources.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace globalq {

CostReport& CostReport::operator+=(const CostReport& o) {
  rows_moved += o.rows_moved;
  columns_moved += o.columns_moved;
  single_qubit_rotations += o.single_qubit_rotations;
  measurements += o.measurements;
  entangling_passes += o.entangling_passes;
  return *this;
}

std::uint64_t network_move_rows(std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("m must be >= 1");
  if (m > (std::uint64_t{1} << 60)) throw std::invalid_argument("m too large");
  // smallest r with r^2 >= 4m
  auto r = static_cast<std::uint64_t>(std::sqrt(4.0 * static_cast<double>(m)));
  while (r * r < 4 * m) ++r;
  while (r > 0 && (r - 1) * (r - 1) >= 4 * m) --r;
  return r;
}

CostReport cluster_gate_cost(std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("m must be >= 1");
  CostReport c;
  c.rows_moved = 4 * m;
  c.columns_moved = 6;
  const std::uint64_t ops = 15 * m;
  c.measurements = ops / 2;
  c.single_qubit_rotations = ops - c.measurements;
  return c;
}

CostReport one_way_1q_cost() {
  CostReport c;
  c.single_qubit_rotations = 5;
  c.measurements = 5;
  return c;
}

AuditResult audit(const PulseProgram& program) {
  AuditResult out;
  CostReport& c = out.cost;
  // Pointer frame: cumulative (P,P') Raman product applied to |P>.
  cplx ptr_p{1}, ptr_pp{0};
  bool open = false;
  for (const auto& ins : program.instructions) {
    if (const auto* r = std::get_if<Raman>(&ins)) {
      if (r->pair == RamanPair::PPp) {
        const Mat2 m = Mat2::raman(r->theta, r->phi);
        const cplx a = m(0, 0) * ptr_p + m(0, 1) * ptr_pp;
        const cplx b = m(1, 0) * ptr_p + m(1, 1) * ptr_pp;
        ptr_p = a;
        ptr_pp = b;
      }
    } else if (const auto* s = std::get_if<ShiftP>(&ins)) {
      c.rows_moved += static_cast<std::uint64_t>(std::abs(s->delta[0]));
      c.columns_moved += static_cast<std::uint64_t>(std::abs(s->delta[1]) + std::abs(s->delta[2]));
    } else if (std::holds_alternative<MolecularPulse>(ins)) {
      const bool superposed = std::abs(ptr_p) > 1e-9 && std::abs(ptr_pp) > 1e-9;
      if (superposed) {
        if (open) ++c.entangling_passes;
        open = !open;
      } else if (!open) {
        ++c.single_qubit_rotations;
      }
    } else if (std::holds_alternative<MeasurePprime>(ins)) {
      ++c.measurements;
    }
  }
  if (open) {
    out.malformed = true;
    out.problem = "entangling bracket opened but never closed";
  }
  return out;
}

std::string csv_header() { return "m,rows,cols,rotations,measurements,passes"; }

std::string csv_row(std::uint64_t m, const CostReport& r) {
  return std::to_string(m) + "," + std::to_string(r.rows_moved) + "," +
         std::to_string(r.columns_moved) + "," + std::to_string(r.single_qubit_rotations) + "," +
         std::to_string(r.measurements) + "," + std::to_string(r.entangling_passes);
}

}  // namespace globalq
