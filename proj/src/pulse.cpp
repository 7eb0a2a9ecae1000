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

#include "globalq/pulse.hpp"

#include <algorithm>

namespace globalq {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr std::string_view kNegSuffix = "~neg";

std::string toggled_negation_id(const std::string& id) {
  if (id.size() >= kNegSuffix.size() &&
      std::string_view(id).substr(id.size() - kNegSuffix.size()) == kNegSuffix)
    return id.substr(0, id.size() - kNegSuffix.size());
  return id + std::string(kNegSuffix);
}

}  // namespace

std::string_view kind_name(const Instruction& ins) {
  return std::visit(overloaded{
                        [](const Raman&) { return std::string_view("RAMAN"); },
                        [](const ShiftP&) { return std::string_view("SHIFTP"); },
                        [](const Collide&) { return std::string_view("COLLIDE"); },
                        [](const MolecularPulse&) { return std::string_view("MOLPULSE"); },
                        [](const LocalPhaseZ1Pp&) { return std::string_view("LPZ1PP"); },
                        [](const MeasurePprime&) { return std::string_view("MEASPP"); },
                        [](const ResetPprime&) { return std::string_view("RESETPP"); },
                        [](const ZenoGuard&) { return std::string_view("ZENO"); },
                    },
                    ins);
}

void PulseProgram::validate() const {
  for (std::size_t i = 0; i < instructions.size(); ++i) {
    if (const auto* c = std::get_if<Collide>(&instructions[i]); c && !tables.contains(c->table))
      throw std::invalid_argument("instruction " + std::to_string(i) +
                                  ": undeclared collision table '" + c->table + "'");
    if (const auto* z = std::get_if<ZenoGuard>(&instructions[i]); z && z->count < 1)
      throw std::invalid_argument("instruction " + std::to_string(i) +
                                  ": ZENO count must be >= 1");
  }
}

std::map<std::string, std::size_t> PulseProgram::histogram() const {
  std::map<std::string, std::size_t> h;
  for (const auto& ins : instructions) {
    if (const auto* z = std::get_if<ZenoGuard>(&ins))
      h["MEASPP"] += static_cast<std::size_t>(z->count);
    else
      h[std::string(kind_name(ins))] += 1;
  }
  return h;
}

ExecutionTrace execute(const PulseProgram& program, const QuantumState& initial, Rng& rng,
                       const ExecuteOptions& options) {
  program.validate();
  ExecutionTrace trace{{}, initial, {}};
  QuantumState& state = trace.final_state;
  std::size_t forced_used = 0;

  for (std::size_t i = 0; i < program.instructions.size(); ++i) {
    const Instruction& ins = program.instructions[i];
    try {
      std::visit(
          overloaded{
              [&](const Raman& r) { state = global_raman(state, r.pair, r.theta, r.phi); },
              [&](const ShiftP& s) { state = shift_pointer_lattice(state, s.delta); },
              [&](const Collide& c) { state = collision_wait(state, program.tables.at(c.table)); },
              [&](const MolecularPulse&) { state = molecular_pulse(state); },
              [&](const LocalPhaseZ1Pp&) { state = local_phase_z1Pp(state); },
              [&](const MeasurePprime& m) {
                bool value;
                if (!options.forced_outcomes.empty()) {
                  if (forced_used >= options.forced_outcomes.size())
                    throw std::domain_error("more measurements than forced outcomes");
                  value = options.forced_outcomes[forced_used++];
                  state = project_pprime(state, value).second;
                } else {
                  auto [v, post] = measure_pprime(state, rng);
                  value = v;
                  state = std::move(post);
                }
                trace.outcomes.push_back({m.tag, value});
              },
              [&](const ResetPprime&) { state = reset_pprime(state); },
              [&](const ZenoGuard& z) {
                for (int k = 0; k < z.count; ++k) {
                  auto [v, post] = measure_pprime(state, rng);
                  trace.outcomes.push_back({"zeno", v});
                  if (v) throw std::domain_error("Zeno guard observed |P'> population (leakage)");
                  state = std::move(post);
                }
              },
          },
          ins);
    } catch (const LatticeError& e) {
      throw ExecutionError(i, e.what());
    } catch (const std::domain_error& e) {
      throw ExecutionError(i, e.what());
    } catch (const std::out_of_range& e) {
      throw ExecutionError(i, e.what());
    }
  }
  trace.instruction_count_histogram = program.histogram();
  return trace;
}

PulseProgram concat(const PulseProgram& a, const PulseProgram& b) {
  PulseProgram out = a;
  for (const auto& [id, table] : b.tables) {
    const auto [it, inserted] = out.tables.emplace(id, table);
    if (!inserted && !(it->second == table))
      throw ProgramError("conflicting collision table '" + id + "'");
  }
  out.instructions.insert(out.instructions.end(), b.instructions.begin(), b.instructions.end());
  if (out.metadata.description.empty())
    out.metadata.description = b.metadata.description;
  else if (!b.metadata.description.empty())
    out.metadata.description += "; " + b.metadata.description;
  out.metadata.corrections.insert(out.metadata.corrections.end(), b.metadata.corrections.begin(),
                                  b.metadata.corrections.end());
  return out;
}

PulseProgram reverse_unitary(const PulseProgram& p) {
  PulseProgram out;
  out.metadata.description = p.metadata.description.empty() ? "" : "reverse of " + p.metadata.description;
  for (auto it = p.instructions.rbegin(); it != p.instructions.rend(); ++it) {
    const auto index = static_cast<std::size_t>(p.instructions.rend() - it - 1);
    std::visit(overloaded{
                   [&](const Raman& r) { out.append(Raman{r.pair, -r.theta, r.phi}); },
                   [&](const ShiftP& s) {
                     ShiftP inv = s;
                     for (auto& d : inv.delta) d = -d;
                     out.append(inv);
                   },
                   [&](const Collide& c) {
                     const auto found = p.tables.find(c.table);
                     if (found == p.tables.end())
                       throw ProgramError("undeclared collision table '" + c.table + "'");
                     if (found->second.all_multiples_of_pi()) {
                       out.tables.emplace(c.table, found->second);
                       out.append(c);
                     } else {
                       const std::string id = toggled_negation_id(c.table);
                       const auto neg = found->second.negated();
                       const auto [slot, inserted] = out.tables.emplace(id, neg);
                       if (!inserted && !(slot->second == neg))
                         throw ProgramError("collision table id '" + id + "' already in use");
                       out.append(Collide{id});
                     }
                   },
                   [&](const MolecularPulse& m) { out.append(m); },
                   [&](const LocalPhaseZ1Pp& l) { out.append(l); },
                   [&](const auto& other) {
                     throw ProgramError("instruction " + std::to_string(index) + " (" +
                                        std::string(kind_name(Instruction{other})) +
                                        ") is not unitary");
                   },
               },
               *it);
  }
  return out;
}

}  // namespace globalq
