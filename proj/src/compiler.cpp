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

#include "globalq/compiler.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace globalq {

namespace {

constexpr double kResidualTol = 1e-9;
constexpr double kUnitaryTol = 1e-12;

using Vec3 = std::array<double, 3>;

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double norm3(const Vec3& a) { return std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]); }

Vec3 normalized(Vec3 a) {
  const double n = norm3(a);
  for (auto& x : a) x /= n;
  return a;
}

PulseProgram from(std::vector<Instruction> ins, std::string description = {}) {
  PulseProgram p;
  p.instructions = std::move(ins);
  p.metadata.description = std::move(description);
  return p;
}

void append_all(PulseProgram& p, const std::vector<Instruction>& ins) {
  p.instructions.insert(p.instructions.end(), ins.begin(), ins.end());
}

void require_site(const LatticeSpec& lattice, const Position& p, const char* what) {
  if (!lattice.contains(p))
    throw CompileError(std::string(what) + " " + lattice.position_string(p, ':') +
                       " unreachable: outside the lattice");
}

void require_unitary(const Mat2& u) {
  if (!is_unitary(u, kUnitaryTol)) throw CompileError("gate is not unitary to 1e-12");
}

// Net action of the factors on the site, in application order.
Mat2 factor_product(const PauliFactoring& f) {
  Mat2 acc = Mat2::identity();
  for (const auto& a : f.axes) acc = Mat2::pauli_dot(a) * acc;
  return acc;
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

PauliFactoring factor_unitary(const Mat2& u) {
  require_unitary(u);
  const cplx root = std::sqrt(u.det());
  const Mat2 w = (1.0 / root) * u;
  const double w0 = (w.trace() / 2.0).real();
  Vec3 k{};
  const Mat2 sig[3] = {Mat2::x(), Mat2::y(), Mat2::z()};
  for (int j = 0; j < 3; ++j) k[j] = (cplx{0, 1} * (sig[j] * w).trace() / 2.0).real();
  const double s = norm3(k);

  PauliFactoring f;
  if (s < 1e-14) {
    // proportional to the identity
  } else if (std::abs(w0) < 1e-12) {
    f.axes.push_back(normalized(k));
  } else {
    const Vec3 kh = normalized(k);
    const double half = std::atan2(s, w0);  // alpha / 2
    Vec3 e{1, 0, 0};
    if (std::abs(kh[0]) > 0.6) e = {0, 1, 0};
    const Vec3 uperp = normalized(cross(kh, e));
    const Vec3 kxu = cross(kh, uperp);
    Vec3 n{};
    for (int j = 0; j < 3; ++j) n[j] = std::cos(half) * uperp[j] + std::sin(half) * kxu[j];
    f.axes.push_back(uperp);
    f.axes.push_back(normalized(n));
  }
  const Mat2 prod = factor_product(f);
  cplx ip{0};
  for (int i = 0; i < 4; ++i) ip += std::conj(prod.m[i]) * u.m[i];
  f.phase = ip / 2.0;
  f.phase /= std::abs(f.phase);
  if (distance(f.phase * prod, u) > kResidualTol)
    throw CompileError("decomposition residual exceeds 1e-9");
  return f;
}

std::vector<Instruction> hadamard_pulses(RamanPair pair) {
  return {Raman{pair, kPi / 2, kPi / 2}, Raman{pair, kPi, 0}};
}

std::vector<Instruction> inverse_hadamard_pulses(RamanPair pair) {
  return {Raman{pair, -kPi, 0}, Raman{pair, -kPi / 2, kPi / 2}};
}

std::vector<Instruction> pointer_path(const LatticeSpec& lattice, const Position& from,
                                      const Position& to) {
  std::vector<Instruction> out;
  for (int d = 0; d < 3; ++d) {
    const int diff = to[d] - from[d];
    const int step = diff > 0 ? 1 : -1;
    for (int i = 0; i < std::abs(diff); ++i) {
      ShiftP s;
      s.delta[d] = step;
      s.dims = lattice.dims;
      out.push_back(s);
    }
  }
  return out;
}

std::vector<Instruction> axis_pulses(const Vec3& axis, bool inverse) {
  const double beta = std::acos(std::clamp(axis[2], -1.0, 1.0));
  if (beta < 1e-12) return {};
  const double phi = std::atan2(axis[1], axis[0]) - kPi / 2;
  return {Raman{RamanPair::S0S1, inverse ? -beta : beta, phi}};
}

PulseProgram compile_local_phase(const Position& site, const PointerPlan& plan) {
  require_site(plan.lattice, site, "site");
  require_site(plan.lattice, plan.rest_site, "rest site");
  PulseProgram p = from(pointer_path(plan.lattice, plan.rest_site, site), "local phase");
  p.append(MolecularPulse{});
  append_all(p, pointer_path(plan.lattice, site, plan.rest_site));
  return p;
}

PulseProgram compile_local_1q(const Position& site, const Mat2& u, const PointerPlan& plan) {
  require_site(plan.lattice, site, "site");
  require_site(plan.lattice, plan.rest_site, "rest site");
  const PauliFactoring f = factor_unitary(u);
  PulseProgram p;
  p.metadata.description = "local 1q";
  if (f.axes.empty()) return p;
  append_all(p, pointer_path(plan.lattice, plan.rest_site, site));
  for (const auto& axis : f.axes) {
    append_all(p, axis_pulses(axis, false));
    p.append(MolecularPulse{});
    append_all(p, axis_pulses(axis, true));
  }
  append_all(p, pointer_path(plan.lattice, site, plan.rest_site));
  return p;
}

PulseProgram compile_measure_z(const Position& site, const std::string& tag,
                               const PointerPlan& plan) {
  require_site(plan.lattice, site, "site");
  require_site(plan.lattice, plan.rest_site, "rest site");
  if (tag.empty() || tag.find_first_of(" \t\r\n#") != std::string::npos)
    throw CompileError("measurement tag must be a single non-empty word");
  PulseProgram p = from(pointer_path(plan.lattice, plan.rest_site, site), "measure z");
  append_all(p, hadamard_pulses(RamanPair::S1Pp));
  p.append(LocalPhaseZ1Pp{});
  append_all(p, inverse_hadamard_pulses(RamanPair::S1Pp));
  p.append(MeasurePprime{tag});
  p.append(ResetPprime{});
  append_all(p, pointer_path(plan.lattice, site, plan.rest_site));
  return p;
}

ControlledUParts compile_controlled_u_parts(const Position& control,
                                            const std::vector<Position>& targets, const Mat2& u,
                                            const PointerPlan& plan) {
  require_site(plan.lattice, control, "control");
  require_site(plan.lattice, plan.rest_site, "rest site");
  if (targets.empty()) throw CompileError("controlled gate needs at least one target");
  std::set<Position> seen;
  for (const auto& t : targets) {
    require_site(plan.lattice, t, "target");
    if (t == control) throw CompileError("control is among the targets");
    if (!seen.insert(t).second) throw CompileError("repeated target");
  }
  const PauliFactoring f = factor_unitary(u);

  ControlledUParts parts;
  PulseProgram& e = parts.entangle;
  e.metadata.description = "entangle pointer";
  append_all(e, hadamard_pulses(RamanPair::PPp));
  append_all(e, pointer_path(plan.lattice, plan.rest_site, control));
  e.append(MolecularPulse{});
  append_all(e, pointer_path(plan.lattice, control, plan.rest_site));
  append_all(e, hadamard_pulses(RamanPair::PPp));
  // Leaves the pointer in P exactly when the control is |1>.
  e.append(Raman{RamanPair::PPp, kPi, 0});

  PulseProgram& b = parts.body;
  b.metadata.description = "controlled body";
  for (const auto& t : targets) {
    append_all(b, pointer_path(plan.lattice, plan.rest_site, t));
    for (const auto& axis : f.axes) {
      append_all(b, axis_pulses(axis, false));
      b.append(MolecularPulse{});
      append_all(b, axis_pulses(axis, true));
    }
    append_all(b, pointer_path(plan.lattice, t, plan.rest_site));
  }

  parts.disentangle = reverse_unitary(e);
  parts.disentangle.metadata.description = "disentangle pointer";

  // The body fires the factor product; the missing phase becomes a local
  // phase on the control, once per target.
  const cplx total = std::pow(f.phase, static_cast<double>(targets.size()));
  if (std::abs(total - cplx{1}) > 1e-13) {
    parts.phase_fix = compile_local_1q(control, Mat2::diag(1, total), plan);
    parts.phase_fix.metadata.description = "control phase";
  }
  return parts;
}

PulseProgram compile_controlled_u(const Position& control, const std::vector<Position>& targets,
                                  const Mat2& u, const PointerPlan& plan) {
  const auto parts = compile_controlled_u_parts(control, targets, u, plan);
  PulseProgram p = concat(concat(parts.entangle, parts.body), parts.disentangle);
  p = concat(p, parts.phase_fix);
  p.metadata.description = "controlled-U";
  return p;
}

PulseProgram compile_ghz(const std::vector<Position>& sites, const PointerPlan& plan) {
  if (sites.empty()) throw CompileError("GHZ needs at least one site");
  std::set<Position> seen;
  for (const auto& s : sites) {
    require_site(plan.lattice, s, "site");
    if (!seen.insert(s).second) throw CompileError("repeated GHZ site");
  }
  PulseProgram p = from(hadamard_pulses(RamanPair::S0S1));
  if (sites.size() >= 2) {
    std::vector<Position> targets(sites.begin(), sites.end() - 1);
    p = concat(p, compile_controlled_u(sites.back(), targets, Mat2::z(), plan));
  }
  append_all(p, inverse_hadamard_pulses(RamanPair::S0S1));
  p = concat(p, compile_local_1q(sites.back(), Mat2::h(), plan));
  p.metadata.description = "GHZ";
  return p;
}

PulseProgram compile_graph_state(const GraphSpec& g, const PointerPlan& plan,
                                 const CompileOptions& /*options*/) {
  try {
    g.validate();
  } catch (const std::invalid_argument& e) {
    throw CompileError(e.what());
  }
  for (const auto& v : g.vertices) require_site(plan.lattice, v, "vertex");
  require_site(plan.lattice, plan.rest_site, "rest site");
  PulseProgram p;
  if (g.size() == plan.lattice.site_count()) {
    append_all(p, hadamard_pulses(RamanPair::S0S1));
  } else {
    for (const auto& v : g.vertices) p = concat(p, compile_local_1q(v, Mat2::h(), plan));
  }
  for (const auto& star : star_decomposition(g)) {
    std::vector<Position> leaves;
    for (int l : star.leaves) leaves.push_back(g.vertices[l]);
    p = concat(p, compile_controlled_u(g.vertices[star.center], leaves, Mat2::z(), plan));
  }
  p.metadata.description = "graph state";
  return p;
}

LatticeSpec cluster_lattice(const LatticeSpec& spec) {
  LatticeSpec out = spec;
  out.mobile_margin = std::max(out.mobile_margin, 1);
  return out;
}

PulseProgram compile_cluster_init(const LatticeSpec& spec) {
  spec.validate();
  auto table = CollisionPhaseTable::zeros();
  table.phase_0P = kPi;
  PulseProgram p = from(hadamard_pulses(RamanPair::S0S1), "cluster init");
  p.append(Raman{RamanPair::S1P, kPi, 0});
  for (int d = 0; d < spec.dims; ++d) {
    if (spec.extent[d] < 2) continue;
    p.tables.emplace("cluster", table);
    ShiftP fwd;
    fwd.delta[d] = 1;
    fwd.dims = spec.dims;
    ShiftP back = fwd;
    back.delta[d] = -1;
    p.append(fwd);
    p.append(Collide{"cluster"});
    p.append(back);
  }
  p.append(Raman{RamanPair::S1P, -kPi, 0});

  // Each collision phase is pi * x_i (1 - x_j) = CZ_ij times Z_i.
  for (int i = 0; i < spec.site_count(); ++i) {
    const Position site = spec.position_of(i);
    int forward_neighbours = 0;
    for (int d = 0; d < spec.dims; ++d) {
      Position nb = site;
      nb[d] += 1;
      if (spec.contains(nb)) ++forward_neighbours;
    }
    if (forward_neighbours % 2)
      p.metadata.corrections.push_back({site, Mat2::z(), "cluster-parity"});
  }
  return p;
}

PulseProgram compile_frame_corrections(const std::vector<LocalCorrection>& frame,
                                       const PointerPlan& plan) {
  PulseProgram p;
  for (const auto& c : frame) p = concat(p, compile_local_1q(c.site, c.gate.adjoint(), plan));
  p.metadata.description = "frame corrections";
  return p;
}

// ---------------------------------------------------------------------------
// One-way rotation

std::array<double, 3> zxz_angles_of_hu(const Mat2& u) {
  require_unitary(u);
  Mat2 m = Mat2::h() * u;
  m = (1.0 / std::sqrt(m.det())) * m;
  const double c00 = std::abs(m(0, 0)), c01 = std::abs(m(0, 1));
  const double b = 2 * std::atan2(c01, c00);
  double a = 0, c = 0;
  if (c00 < 1e-12) {
    a = -2 * (std::arg(m(0, 1)) + kPi / 2);
  } else if (c01 < 1e-12) {
    a = -2 * std::arg(m(0, 0));
  } else {
    const double sum = -2 * std::arg(m(0, 0));
    const double dif = -2 * (std::arg(m(0, 1)) + kPi / 2);
    a = (sum + dif) / 2;
    c = (sum - dif) / 2;
  }
  auto rz = [](double t) { return Mat2::diag(std::polar(1.0, -t / 2), std::polar(1.0, t / 2)); };
  const Mat2 check = rz(a) * Mat2::raman(b, 0) * rz(c);
  if (distance_up_to_phase(check, Mat2::h() * u) > kResidualTol)
    throw CompileError("Euler decomposition residual exceeds 1e-9");
  return {a, b, c};
}

Mat2 equatorial_basis_rotation(double theta) {
  return Mat2::pauli_dot(normalized({std::cos(theta), std::sin(theta), 1.0}));
}

PauliFrame advance_frame(PauliFrame f, bool outcome) { return {f.z != outcome, f.x}; }

PulseProgram OneWayPattern::static_program() const {
  PulseProgram p;
  for (const auto& s : steps) p = concat(p, s.positive);
  p.metadata.description = "one-way rotation";
  return p;
}

OneWayPattern compile_one_way_pattern(const Mat2& rotation, const std::vector<Position>& chain,
                                      const Position& output, const PointerPlan& plan) {
  if (chain.size() != 5) throw CompileError("one-way rotation needs a chain of 5 sites");
  std::set<Position> seen(chain.begin(), chain.end());
  seen.insert(output);
  if (seen.size() != 6) throw CompileError("chain and output sites must be distinct");
  require_site(plan.lattice, output, "output");
  const auto [a, b, c] = zxz_angles_of_hu(rotation);
  const std::array<double, 5> theta{0, 0, -c, -b, -a};

  OneWayPattern pat;
  pat.output = output;
  pat.rotation = rotation;
  for (int k = 0; k < 5; ++k) {
    OneWayStep s;
    s.site = chain[k];
    s.theta = theta[k];
    s.tag = "ow" + std::to_string(k);
    s.positive = concat(compile_local_1q(s.site, equatorial_basis_rotation(theta[k]), plan),
                        compile_measure_z(s.site, s.tag, plan));
    s.negative = concat(compile_local_1q(s.site, equatorial_basis_rotation(-theta[k]), plan),
                        compile_measure_z(s.site, s.tag, plan));
    pat.steps.push_back(std::move(s));
  }
  return pat;
}

PulseProgram compile_one_way_1q(const Mat2& rotation, const std::vector<Position>& chain,
                                const Position& output, const PointerPlan& plan) {
  return compile_one_way_pattern(rotation, chain, output, plan).static_program();
}

OneWayRun run_one_way(const OneWayPattern& pattern, const QuantumState& initial, Rng& rng,
                      const std::vector<bool>& forced) {
  if (!forced.empty() && forced.size() != pattern.steps.size())
    throw std::invalid_argument("forced outcomes must cover every step");
  OneWayRun run{initial, {}, {}, {}};
  for (std::size_t k = 0; k < pattern.steps.size(); ++k) {
    const auto& step = pattern.steps[k];
    const PulseProgram& prog = run.frame.x ? step.negative : step.positive;
    ExecuteOptions opt;
    if (!forced.empty()) opt.forced_outcomes = {forced[k]};
    auto trace = execute(prog, run.final_state, rng, opt);
    const bool s = trace.outcomes.at(0).value;
    run.outcomes.push_back(s);
    run.frame = advance_frame(run.frame, s);
    run.final_state = std::move(trace.final_state);
    run.executed = concat(run.executed, prog);
  }
  return run;
}

// ---------------------------------------------------------------------------
// Circuits

std::string op_name(const CircuitOp& op) {
  return std::visit(overloaded{
                        [](const Local1Q&) { return std::string("LOCAL1Q"); },
                        [](const MeasureZ&) { return std::string("MEASZ"); },
                        [](const ControlledU&) { return std::string("CU"); },
                        [](const PrepGHZ&) { return std::string("GHZ"); },
                        [](const PrepGraph&) { return std::string("GRAPH"); },
                        [](const PrepCluster&) { return std::string("CLUSTER"); },
                    },
                    op);
}

std::vector<Position> op_support(const CircuitOp& op, const LatticeSpec& lattice) {
  return std::visit(overloaded{
                        [](const Local1Q& o) { return std::vector<Position>{o.site}; },
                        [](const MeasureZ& o) { return std::vector<Position>{o.site}; },
                        [](const ControlledU& o) {
                          std::vector<Position> s{o.control};
                          s.insert(s.end(), o.targets.begin(), o.targets.end());
                          return s;
                        },
                        [](const PrepGHZ& o) { return o.sites; },
                        [](const PrepGraph& o) { return o.graph.vertices; },
                        [&](const PrepCluster&) {
                          std::vector<Position> s;
                          for (int i = 0; i < lattice.site_count(); ++i)
                            s.push_back(lattice.position_of(i));
                          return s;
                        },
                    },
                    op);
}

void validate_op(const CircuitOp& op, const LatticeSpec& lattice) {
  std::visit(overloaded{
                 [&](const Local1Q& o) {
                   require_site(lattice, o.site, "site");
                   require_unitary(o.u);
                 },
                 [&](const MeasureZ& o) {
                   require_site(lattice, o.site, "site");
                   if (o.tag.empty()) throw CompileError("empty measurement tag");
                 },
                 [&](const ControlledU& o) {
                   require_site(lattice, o.control, "control");
                   std::set<Position> seen;
                   for (const auto& t : o.targets) {
                     require_site(lattice, t, "target");
                     if (t == o.control) throw CompileError("control is among the targets");
                     if (!seen.insert(t).second) throw CompileError("repeated target");
                   }
                   if (o.targets.empty()) throw CompileError("controlled gate needs a target");
                   require_unitary(o.u);
                 },
                 [&](const PrepGHZ& o) {
                   if (o.sites.empty()) throw CompileError("GHZ needs at least one site");
                   std::set<Position> seen;
                   for (const auto& s : o.sites) {
                     require_site(lattice, s, "site");
                     if (!seen.insert(s).second) throw CompileError("repeated GHZ site");
                   }
                 },
                 [&](const PrepGraph& o) {
                   try {
                     o.graph.validate();
                   } catch (const std::invalid_argument& e) {
                     throw CompileError(e.what());
                   }
                   for (const auto& v : o.graph.vertices) require_site(lattice, v, "vertex");
                 },
                 [&](const PrepCluster&) {},
             },
             op);
}

PulseProgram compile_op(const CircuitOp& op, const PointerPlan& plan,
                        const CompileOptions& options) {
  validate_op(op, plan.lattice);
  PulseProgram p = std::visit(
      overloaded{
          [&](const Local1Q& o) { return compile_local_1q(o.site, o.u, plan); },
          [&](const MeasureZ& o) { return compile_measure_z(o.site, o.tag, plan); },
          [&](const ControlledU& o) {
            return compile_controlled_u(o.control, o.targets, o.u, plan);
          },
          [&](const PrepGHZ& o) { return compile_ghz(o.sites, plan); },
          [&](const PrepGraph& o) { return compile_graph_state(o.graph, plan, options); },
          [&](const PrepCluster&) {
            if (options.materialize_frames)
              throw CompileError("cluster frame materialization needs a pointer program");
            return compile_cluster_init(plan.lattice);
          },
      },
      op);
  if (options.materialize_frames && !p.metadata.corrections.empty()) {
    auto frame = p.metadata.corrections;
    p = concat(p, compile_frame_corrections(frame, plan));
    p.metadata.corrections.clear();
  }
  return p;
}

PulseProgram compile_circuit(const std::vector<CircuitOp>& ops, const PointerPlan& plan,
                             const CompileOptions& options) {
  const bool has_cluster = std::any_of(ops.begin(), ops.end(), [](const CircuitOp& o) {
    return std::holds_alternative<PrepCluster>(o);
  });
  if (has_cluster && ops.size() > 1)
    throw CompileError("CLUSTER moves the register atoms and cannot share a program with pointer ops");
  PulseProgram p;
  std::string desc;
  for (const auto& op : ops) {
    const auto q = compile_op(op, plan, options);
    desc += (desc.empty() ? "" : ", ") + op_name(op);
    p = concat(p, q);
  }
  p.metadata.description = desc;
  return p;
}

}  // namespace globalq
