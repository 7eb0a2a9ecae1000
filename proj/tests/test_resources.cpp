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

#include <gtest/gtest.h>

#include <cmath>

#include "globalq/compiler.hpp"
#include "globalq/resources.hpp"
#include "test_util.hpp"

namespace globalq {
namespace {

Position site(const LatticeSpec& l, int i) { return l.position_of(i); }

TEST(Formulas, NetworkRows) {
  EXPECT_EQ(network_move_rows(1), 2u);
  EXPECT_EQ(network_move_rows(4), 4u);
  EXPECT_EQ(network_move_rows(10), 7u);
  for (std::uint64_t m = 1; m <= 2000; ++m)
    ASSERT_EQ(network_move_rows(m), static_cast<std::uint64_t>(std::ceil(2 * std::sqrt(double(m))))) << m;
  EXPECT_THROW(network_move_rows(0), std::invalid_argument);
}

TEST(Formulas, ClusterGate) {
  const auto one = cluster_gate_cost(1);
  EXPECT_EQ(one.rows_moved, 4u);
  EXPECT_EQ(one.columns_moved, 6u);
  EXPECT_EQ(one.single_qubit_rotations + one.measurements, 15u);
  const auto three = cluster_gate_cost(3);
  EXPECT_EQ(three.rows_moved, 12u);
  EXPECT_EQ(three.single_qubit_rotations + three.measurements, 45u);
  EXPECT_THROW(cluster_gate_cost(0), std::invalid_argument);
  const auto w = one_way_1q_cost();
  EXPECT_EQ(w.single_qubit_rotations, 5u);
  EXPECT_EQ(w.measurements, 5u);
}

TEST(Audit, EmptyGhzAndMalformed) {
  EXPECT_EQ(audit(PulseProgram{}).cost, CostReport{});
  EXPECT_FALSE(audit(PulseProgram{}).malformed);
  const LatticeSpec l = LatticeSpec::make({1, 5});
  const PointerPlan plan{l, site(l, 0)};
  std::vector<Position> all;
  for (int i = 0; i < 5; ++i) all.push_back(site(l, i));
  const auto ghz = audit(compile_ghz(all, plan));
  EXPECT_EQ(ghz.cost.entangling_passes, 1u);
  EXPECT_FALSE(ghz.malformed);

  const auto parts = compile_controlled_u_parts(site(l, 0), {site(l, 1)}, Mat2::z(), plan);
  const auto half = audit(concat(parts.entangle, parts.body));
  EXPECT_TRUE(half.malformed);
  EXPECT_FALSE(half.problem.empty());
}

TEST(Audit, CountsMovesAndMeasurements) {
  const LatticeSpec l = LatticeSpec::make({3, 2});
  const PointerPlan plan{l, site(l, 0)};
  const auto m = audit(compile_measure_z(site(l, 5), "m", plan));
  EXPECT_EQ(m.cost.measurements, 1u);
  EXPECT_EQ(m.cost.rows_moved, 4u);
  EXPECT_EQ(m.cost.columns_moved, 2u);
  EXPECT_EQ(m.cost.single_qubit_rotations, 0u);
  PulseProgram z;
  z.append(ZenoGuard{4});
  EXPECT_EQ(audit(z).cost.measurements, 0u);
  EXPECT_EQ(audit(compile_local_1q(site(l, 1), Mat2::z(), plan)).cost.single_qubit_rotations, 1u);
}

TEST(Audit, AdditiveOverConcat) {
  const LatticeSpec l = LatticeSpec::make({2, 3});
  const PointerPlan plan{l, site(l, 0)};
  Rng rng(3);
  std::vector<PulseProgram> progs = {
      compile_local_1q(site(l, 4), testing::random_u2(rng), plan),
      compile_measure_z(site(l, 2), "a", plan),
      compile_controlled_u(site(l, 1), {site(l, 3), site(l, 5)}, Mat2::z(), plan),
      compile_ghz({site(l, 0), site(l, 2), site(l, 5)}, plan),
      PulseProgram{},
  };
  for (const auto& a : progs)
    for (const auto& b : progs)
      EXPECT_EQ(audit(concat(a, b)).cost, audit(a).cost + audit(b).cost);
}

TEST(Audit, GraphPassesEqualStars) {
  const LatticeSpec l = LatticeSpec::make({2, 3});
  const PointerPlan plan{l, site(l, 0)};
  Rng rng(8);
  for (int t = 0; t < 20; ++t) {
    std::vector<Position> v;
    for (int i = 0; i < 6; ++i) v.push_back(site(l, i));
    GraphSpec g = GraphSpec::make(v);
    for (int a = 0; a < 6; ++a)
      for (int b = a + 1; b < 6; ++b)
        if (rng.uniform() < 0.4) g.add_edge(a, b);
    EXPECT_EQ(audit(compile_graph_state(g, plan)).cost.entangling_passes, star_decomposition(g).size());
  }
}

TEST(Csv, Format) {
  EXPECT_EQ(csv_header(), "m,rows,cols,rotations,measurements,passes");
  EXPECT_EQ(csv_row(2, cluster_gate_cost(2)), "2,8,6,15,15,0");
}

}  // namespace
}  // namespace globalq
