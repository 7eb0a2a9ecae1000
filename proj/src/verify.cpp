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

#include "globalq/verify.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "text_util.hpp"

namespace globalq {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

std::string VerifyReport::to_text() const {
  std::ostringstream os;
  os << "OP " << op << " TRIALS " << trials << " MIN_FID " << detail::format_double(min_fidelity)
     << " POINTER_OK " << (pointer_ok ? "true" : "false") << '\n';
  if (failing_seed) {
    os << "FAIL SEED " << *failing_seed;
    if (!failure.empty()) os << " # " << failure;
    os << '\n';
  }
  return os.str();
}

oracle::QubitState ideal_action(const CircuitOp& op, const LatticeSpec& lattice,
                                const oracle::QubitState& input,
                                const std::vector<LocalCorrection>& corrections,
                                std::optional<bool> outcome) {
  oracle::QubitState s = input;
  auto q = [&](const Position& p) { return lattice.linear_index(p); };
  std::visit(overloaded{
                 [&](const Local1Q& o) { oracle::apply_1q(s, o.u, q(o.site)); },
                 [&](const MeasureZ& o) {
                   if (!outcome) throw std::invalid_argument("measurement needs an outcome");
                   s = oracle::project_z(s, q(o.site), *outcome).second;
                 },
                 [&](const ControlledU& o) {
                   for (const auto& t : o.targets) oracle::apply_controlled(s, q(o.control), q(t), o.u);
                 },
                 [&](const PrepGHZ& o) {
                   const int c = q(o.sites.back());
                   for (const auto& p : o.sites) oracle::apply_h(s, q(p));
                   for (std::size_t i = 0; i + 1 < o.sites.size(); ++i) oracle::apply_cz(s, c, q(o.sites[i]));
                   for (const auto& p : o.sites) oracle::apply_h(s, q(p));
                   oracle::apply_h(s, c);
                 },
                 [&](const PrepGraph& o) {
                   for (const auto& v : o.graph.vertices) oracle::apply_h(s, q(v));
                   for (const auto& [a, b] : o.graph.edges)
                     oracle::apply_cz(s, q(o.graph.vertices[a]), q(o.graph.vertices[b]));
                 },
                 [&](const PrepCluster&) {
                   for (int i = 0; i < lattice.site_count(); ++i) oracle::apply_h(s, i);
                   for (int i = 0; i < lattice.site_count(); ++i) {
                     const Position p = lattice.position_of(i);
                     for (int d = 0; d < lattice.dims; ++d) {
                       Position nb = p;
                       nb[d] += 1;
                       if (lattice.contains(nb)) oracle::apply_cz(s, i, q(nb));
                     }
                   }
                 },
             },
             op);
  for (const auto& c : corrections) oracle::apply_1q(s, c.gate, q(c.site));
  return s;
}

TrialResult run_trial(const CircuitOp& op, const PulseProgram& program, const PointerPlan& plan,
                      const oracle::QubitState& input, Rng& rng) {
  TrialResult r;
  const bool cluster = std::holds_alternative<PrepCluster>(op);
  const LatticeSpec lattice = cluster ? cluster_lattice(plan.lattice) : plan.lattice;
  const int n = lattice.site_count();
  if (input.qubits() != n) throw std::invalid_argument("input size does not match the lattice");

  std::optional<Position> pointer;
  if (!cluster) pointer = plan.rest_site;
  ExecutionTrace trace{{}, embed_register(lattice, input.amplitudes(), pointer), {}};
  try {
    trace = execute(program, trace.final_state, rng);
  } catch (const std::exception& e) {
    r.error = e.what();
    return r;
  }
  r.outcomes = trace.outcomes;

  PointerFactor pf;
  try {
    pf = factor_pointer(trace.final_state);
  } catch (const LatticeError& e) {
    r.error = e.what();
    return r;
  }
  r.schmidt = pf.schmidt_weight;
  r.pointer_ok = true;
  if (pointer) {
    r.pointer_ok = pf.pointer.size() == 1 && pf.pointer[0].atom.position == plan.rest_site &&
                   pf.pointer[0].atom.state == InternalState::P;
    if (!r.pointer_ok) r.error = "pointer not back at rest in P";
  }
  r.output = oracle::QubitState(n, pf.register_state);

  std::optional<bool> outcome;
  if (std::holds_alternative<MeasureZ>(op)) {
    const auto& tag = std::get<MeasureZ>(op).tag;
    const auto it = std::find_if(r.outcomes.begin(), r.outcomes.end(),
                                 [&](const Outcome& o) { return o.tag == tag; });
    if (it == r.outcomes.end()) {
      r.error = "measurement outcome missing";
      return r;
    }
    outcome = it->value;
    const double p = oracle::project_z(input, lattice.linear_index(std::get<MeasureZ>(op).site),
                                       *outcome).first;
    if (p <= 0) {
      r.error = "zero-probability outcome observed";
      return r;
    }
  }
  const auto ideal = ideal_action(op, lattice, input, program.metadata.corrections, outcome);
  r.fidelity = oracle::fidelity_up_to_global_phase(ideal, r.output);

  std::set<int> support;
  for (const auto& p : op_support(op, lattice)) support.insert(lattice.linear_index(p));
  std::vector<int> rest;
  for (int i = 0; i < n; ++i)
    if (!support.contains(i)) rest.push_back(i);
  if (rest.empty()) {
    r.nonsupport = 1.0;
  } else {
    // A measurement legitimately updates entangled partners; compare with the
    // ideal post-state there, with the input otherwise.
    const auto& reference = outcome ? ideal : input;
    r.nonsupport = 1.0 - oracle::trace_distance(oracle::reduced_density(reference, rest),
                                                oracle::reduced_density(r.output, rest));
  }
  return r;
}

VerifyReport verify_program(const CircuitOp& op, const PointerPlan& plan,
                            const VerifyOptions& options) {
  if (options.trials < 1) throw std::invalid_argument("trials must be >= 1");
  const bool cluster = std::holds_alternative<PrepCluster>(op);
  const LatticeSpec lattice = cluster ? cluster_lattice(plan.lattice) : plan.lattice;
  const int n = lattice.site_count();
  if (n > kMaxVerifyQubits)
    throw std::invalid_argument("verification supports at most " +
                                std::to_string(kMaxVerifyQubits) + " register qubits");

  PulseProgram program = compile_op(op, plan, options.compile);
  if (options.skip_instruction) {
    if (*options.skip_instruction >= program.size())
      throw std::invalid_argument("skip index beyond the program");
    program.instructions.erase(program.instructions.begin() +
                               static_cast<std::ptrdiff_t>(*options.skip_instruction));
  }

  VerifyReport rep;
  rep.op = op_name(op);
  rep.trials = options.trials;
  for (int t = 0; t < options.trials; ++t) {
    const std::uint64_t seed = derive_seed(options.seed, static_cast<std::uint64_t>(t));
    Rng rng(seed);
    const auto input = oracle::QubitState::random(n, rng);
    const TrialResult r = run_trial(op, program, plan, input, rng);
    rep.min_fidelity = std::min(rep.min_fidelity, r.fidelity);
    rep.min_nonsupport = std::min(rep.min_nonsupport, r.nonsupport);
    rep.min_schmidt = std::min(rep.min_schmidt, r.schmidt);
    rep.pointer_ok = rep.pointer_ok && r.pointer_ok;
    const bool bad = !r.error.empty() || r.fidelity < 1.0 - options.fidelity_threshold ||
                     r.nonsupport < 1.0 - options.fidelity_threshold;
    if (bad && !rep.failing_seed) {
      rep.failing_seed = seed;
      rep.failure = r.error.empty() ? "fidelity below threshold" : r.error;
    }
  }
  return rep;
}

}  // namespace globalq
