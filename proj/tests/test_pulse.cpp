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

#include "globalq/compiler.hpp"
#include "globalq/pulse.hpp"
#include "test_util.hpp"

namespace globalq {
namespace {

using testing::random_state;
using testing::state_distance;

const LatticeSpec k1x2 = LatticeSpec::make({2});

PulseProgram sample_program() {
  PulseProgram p;
  auto t = CollisionPhaseTable::zeros();
  t.phase_0P = 0.25;
  t.phase_PpPp = -1.5;
  p.tables["wait"] = t;
  p.metadata.description = "sample";
  p.metadata.corrections.push_back({Position{{1}}, Mat2::z(), "z-fix"});
  p.append(Raman{RamanPair::S0S1, 0.1, -0.2})
      .append(ShiftP{{1, 0, 0}, 1})
      .append(Collide{"wait"})
      .append(MolecularPulse{})
      .append(LocalPhaseZ1Pp{})
      .append(ShiftP{{-1, 0, 0}, 1})
      .append(MeasurePprime{"m0"})
      .append(ResetPprime{})
      .append(ZenoGuard{3});
  return p;
}

TEST(Execute, EmptyAndIdentity) {
  Rng rng(1);
  const auto s = random_state(k1x2, true, rng);
  const auto tr = execute(PulseProgram{}, s, rng);
  EXPECT_TRUE(tr.outcomes.empty());
  EXPECT_EQ(state_distance(tr.final_state, s), 0.0);

  PulseProgram p;
  p.append(Raman{RamanPair::S0S1, kPi, 0}).append(Raman{RamanPair::S0S1, -kPi, 0});
  EXPECT_LT(state_distance(execute(p, s, rng).final_state, s), 1e-12);
}

TEST(Execute, ZenoOnCleanRegister) {
  Rng rng(1);
  const auto s = init_register(k1x2, Position{{0}});
  PulseProgram p;
  p.append(ZenoGuard{5});
  const auto tr = execute(p, s, rng);
  ASSERT_EQ(tr.outcomes.size(), 5u);
  for (const auto& o : tr.outcomes) EXPECT_FALSE(o.value);
  EXPECT_EQ(state_distance(tr.final_state, s), 0.0);
  EXPECT_EQ(tr.instruction_count_histogram.at("MEASPP"), 5u);
}

TEST(Execute, ZenoLeakageIsAnError) {
  Rng rng(1);
  PulseProgram p;
  p.append(Raman{RamanPair::PPp, kPi, 0}).append(ZenoGuard{1});
  try {
    execute(p, init_register(k1x2, Position{{0}}), rng);
    FAIL() << "expected ExecutionError";
  } catch (const ExecutionError& e) {
    EXPECT_EQ(e.index(), 1u);
  }
}

TEST(Execute, ErrorsCarryTheIndex) {
  Rng rng(1);
  PulseProgram p;
  p.append(MolecularPulse{}).append(ShiftP{{5, 0, 0}, 1});
  try {
    execute(p, init_register(k1x2, Position{{0}}), rng);
    FAIL() << "expected ExecutionError";
  } catch (const ExecutionError& e) {
    EXPECT_EQ(e.index(), 1u);
  }
  PulseProgram q;
  q.append(Collide{"missing"});
  EXPECT_THROW(q.validate(), std::invalid_argument);
}

TEST(Execute, ReplayDeterminism) {
  Rng r0(3);
  const auto s = random_state(k1x2, true, r0);
  PulseProgram p;
  p.append(Raman{RamanPair::PPp, 1.0, 0.3}).append(MeasurePprime{"a"}).append(ResetPprime{});
  std::vector<bool> a, b;
  for (int i = 0; i < 20; ++i) {
    Rng x(i), y(i);
    try {
      const auto t1 = execute(p, s, x);
      const auto t2 = execute(p, s, y);
      EXPECT_EQ(t1.outcomes, t2.outcomes);
      EXPECT_EQ(t1.final_state.to_text(), t2.final_state.to_text());
    } catch (const ExecutionError&) {
      // reset on a non-definite branch is allowed to fail; both runs must agree
      Rng z(i);
      EXPECT_THROW(execute(p, s, z), ExecutionError);
    }
  }
}

TEST(Execute, ForcedOutcomes) {
  const auto spec = LatticeSpec::make({1});
  PulseProgram p;
  p.append(Raman{RamanPair::PPp, kPi / 2, 0}).append(MeasurePprime{"m"});
  Rng rng(0);
  ExecuteOptions opt;
  opt.forced_outcomes = {true};
  const auto tr = execute(p, init_register(spec, Position{}), rng, opt);
  ASSERT_EQ(tr.outcomes.size(), 1u);
  EXPECT_TRUE(tr.outcomes[0].value);
  EXPECT_EQ(tr.outcomes[0].tag, "m");
  PulseProgram q;
  q.append(MeasurePprime{"m"});
  EXPECT_THROW(execute(q, init_register(spec, Position{}), rng, opt), ExecutionError);
}

TEST(Histogram, ExpandsZeno) {
  const auto h = sample_program().histogram();
  EXPECT_EQ(h.at("MEASPP"), 4u);
  EXPECT_EQ(h.at("SHIFTP"), 2u);
  EXPECT_EQ(h.count("ZENO"), 0u);
  std::size_t total = 0;
  for (const auto& [k, v] : h) total += v;
  EXPECT_EQ(total, 11u);
}

TEST(Concat, TablesAndAssociativity) {
  PulseProgram a, b, c;
  a.append(Raman{RamanPair::S0S1, 1, 0});
  b.tables["t"] = CollisionPhaseTable::zeros();
  b.append(Collide{"t"});
  c.append(MolecularPulse{});
  EXPECT_EQ(to_text(concat(PulseProgram{}, a)), to_text(a));
  EXPECT_EQ(to_text(concat(concat(a, b), c)), to_text(concat(a, concat(b, c))));
  PulseProgram d;
  auto t = CollisionPhaseTable::zeros();
  t.phase_PP = 1;
  d.tables["t"] = t;
  EXPECT_THROW(concat(b, d), ProgramError);
  EXPECT_NO_THROW(concat(b, b));
}

TEST(Concat, MatchesSequentialExecution) {
  Rng r0(2);
  const auto s = random_state(k1x2, true, r0);
  PulseProgram a, b;
  a.append(Raman{RamanPair::PPp, 0.7, 0.1}).append(MeasurePprime{"x"});
  b.append(Raman{RamanPair::S0S1, 0.4, 0}).append(Raman{RamanPair::PPp, 0.5, 1}).append(MeasurePprime{"y"});
  Rng r1(9), r2(9);
  const auto whole = execute(concat(a, b), s, r1);
  const auto first = execute(a, s, r2);
  const auto second = execute(b, first.final_state, r2);
  EXPECT_EQ(whole.final_state.to_text(), second.final_state.to_text());
}

TEST(Reverse, Examples) {
  PulseProgram p;
  p.append(ShiftP{{1, 0, 0}, 1});
  const auto r = reverse_unitary(p);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(std::get<ShiftP>(r.instructions[0]).delta, (std::array<int, 3>{-1, 0, 0}));
  PulseProgram m;
  m.append(MolecularPulse{});
  EXPECT_TRUE(std::holds_alternative<MolecularPulse>(reverse_unitary(m).instructions[0]));
  PulseProgram bad;
  bad.append(MeasurePprime{"x"});
  EXPECT_THROW(reverse_unitary(bad), ProgramError);
}

TEST(Reverse, UndoesProgramsAndIsInvolution) {
  Rng rng(4);
  const auto spec = LatticeSpec::make({3}, 1);
  PulseProgram p;
  auto t = CollisionPhaseTable::zeros();
  t.phase_0P = 0.3;
  t.phase_1Pp = kPi;
  p.tables["w"] = t;
  auto pi_table = CollisionPhaseTable::zeros();
  pi_table.phase_1P = kPi;
  p.tables["pi"] = pi_table;
  p.append(Raman{RamanPair::PPp, 0.9, 0.2})
      .append(ShiftP{{1, 0, 0}, 1})
      .append(Collide{"w"})
      .append(Collide{"pi"})
      .append(Raman{RamanPair::S0S1, 0.3, 1.0})
      .append(MolecularPulse{})
      .append(LocalPhaseZ1Pp{})
      .append(ShiftP{{-1, 0, 0}, 1});
  for (int i = 0; i < 10; ++i) {
    const auto s0 = random_state(LatticeSpec::make({3}), true, rng);
    const QuantumState s(spec, 3, true, s0.amplitudes());
    const auto out = execute(concat(p, reverse_unitary(p)), s, rng).final_state;
    EXPECT_LT(state_distance(out, s), 1e-10);
  }
  EXPECT_EQ(to_text(reverse_unitary(reverse_unitary(p))), to_text(p));
}

TEST(Reverse, EntangleStepsReturnPointer) {
  // steps 1-6 of the two-qubit procedure then their reverse
  const LatticeSpec spec = LatticeSpec::make({2});
  const PointerPlan plan{spec, Position{{0}}};
  const auto parts = compile_controlled_u_parts(Position{{0}}, {Position{{1}}}, Mat2::z(), plan);
  Rng rng(6);
  const auto s0 = random_state(spec, false, rng);
  std::vector<cplx> reg(4);
  for (const auto& [c, a] : s0.amplitudes()) {
    std::size_t idx = 0;
    for (int i = 0; i < 2; ++i) idx |= std::size_t(c.atoms[i].state == InternalState::S1) << i;
    reg[idx] = a;
  }
  const auto s = embed_register(spec, reg, Position{{0}});
  const auto out = execute(concat(parts.entangle, reverse_unitary(parts.entangle)), s, rng).final_state;
  EXPECT_LT(state_distance(out, s), 1e-10);
  EXPECT_NO_THROW(factor_pointer(out));
}

TEST(Text, RoundTrip) {
  const auto p = sample_program();
  const auto text = to_text(p);
  const auto q = parse_program(text);
  EXPECT_EQ(to_text(q), text);
  EXPECT_EQ(q.tables.at("wait"), p.tables.at("wait"));
  ASSERT_EQ(q.metadata.corrections.size(), 1u);
  EXPECT_EQ(q.metadata.corrections[0].label, "z-fix");
  EXPECT_EQ(q.metadata.description, "sample");
}

TEST(Text, ExactParsing) {
  EXPECT_NO_THROW(parse_program("# comment\nRAMAN S0S1 1 0\nSHIFTP 0,1\nMOLPULSE\n"));
  EXPECT_THROW(parse_program("RAMAN S0S1 1\n"), ProgramError);
  EXPECT_THROW(parse_program("RAMAN S0P 1 0\n"), ProgramError);
  EXPECT_THROW(parse_program("FLASH\n"), ProgramError);
  EXPECT_THROW(parse_program("MOLPULSE extra\n"), ProgramError);
  EXPECT_THROW(parse_program("ZENO 0\n"), ProgramError);
  EXPECT_THROW(parse_program("COLLIDE nowhere\n"), ProgramError);
  EXPECT_THROW(parse_program("TABLE t 0P=1 0P=2\n"), ProgramError);
  EXPECT_THROW(parse_program("TABLE t 9P=1\n"), ProgramError);
  EXPECT_THROW(parse_program("MOLPULSE\nTABLE t 0P=1\n"), ProgramError);
  const auto p = parse_program("TABLE t 1P=3\nCOLLIDE t\n");
  EXPECT_EQ(p.tables.at("t").phase_1P, 3.0);
  EXPECT_EQ(p.tables.at("t").phase_0P, 0.0);
}

}  // namespace
}  // namespace globalq
