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

#include "globalq/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "text_util.hpp"

namespace globalq {

namespace {

using Kind = LatticeError::Kind;

std::string describe(const Position& p) {
  return "(" + std::to_string(p[0]) + "," + std::to_string(p[1]) + "," + std::to_string(p[2]) +
         ")";
}

}  // namespace

std::string_view to_string(InternalState s) {
  switch (s) {
    case InternalState::S0: return "S0";
    case InternalState::S1: return "S1";
    case InternalState::P: return "P";
    case InternalState::Pp: return "Pp";
  }
  return "?";
}

InternalState parse_internal_state(std::string_view token) {
  if (token == "S0") return InternalState::S0;
  if (token == "S1") return InternalState::S1;
  if (token == "P") return InternalState::P;
  if (token == "Pp") return InternalState::Pp;
  throw LatticeError(Kind::Parse, "unknown internal state '" + std::string(token) + "'");
}

LatticeSpec LatticeSpec::make(std::initializer_list<int> extents, int mobile_margin) {
  LatticeSpec s;
  s.dims = static_cast<int>(extents.size());
  int d = 0;
  for (int e : extents) {
    if (d < 3) s.extent[d] = e;
    ++d;
  }
  s.mobile_margin = mobile_margin;
  s.validate();
  return s;
}

void LatticeSpec::validate() const {
  if (dims < 1 || dims > 3) throw std::invalid_argument("lattice dims must be 1..3");
  for (int d = 0; d < 3; ++d) {
    if (d < dims && extent[d] < 1) throw std::invalid_argument("lattice extent must be >= 1");
    if (d >= dims && extent[d] != 1)
      throw std::invalid_argument("inactive lattice dimension must have extent 1");
  }
  if (mobile_margin < 0) throw std::invalid_argument("mobile margin must be >= 0");
}

bool LatticeSpec::contains(const Position& p) const {
  for (int d = 0; d < 3; ++d)
    if (p[d] < 0 || p[d] >= extent[d]) return false;
  return true;
}

bool LatticeSpec::contains_mobile(const Position& p) const {
  for (int d = 0; d < 3; ++d) {
    const int m = d < dims ? mobile_margin : 0;
    if (p[d] < -m || p[d] >= extent[d] + m) return false;
  }
  return true;
}

int LatticeSpec::linear_index(const Position& p) const {
  if (!contains(p)) throw LatticeError(Kind::OutOfBounds, "site " + describe(p) + " outside lattice");
  return (p[0] * extent[1] + p[1]) * extent[2] + p[2];
}

Position LatticeSpec::position_of(int index) const {
  Position p;
  p[2] = index % extent[2];
  index /= extent[2];
  p[1] = index % extent[1];
  p[0] = index / extent[1];
  return p;
}

std::string LatticeSpec::position_string(const Position& p, char sep) const {
  std::string out;
  for (int d = 0; d < dims; ++d) {
    if (d) out += sep;
    out += std::to_string(p[d]);
  }
  return out;
}

Position parse_position(std::string_view text, int dims) {
  const auto parts = detail::split(detail::trim(text), ",:");
  if (static_cast<int>(parts.size()) != dims)
    throw std::invalid_argument("position '" + std::string(text) + "' needs " +
                                std::to_string(dims) + " coordinates");
  Position p;
  for (int d = 0; d < dims; ++d) p[d] = detail::parse_int<int>(detail::trim(parts[d]));
  return p;
}

Position parse_site(std::string_view token, const LatticeSpec& spec) {
  token = detail::trim(token);
  Position p;
  if (token.find_first_of(",:") == std::string_view::npos) {
    const int idx = detail::parse_int<int>(token);
    if (idx < 0 || idx >= spec.site_count())
      throw std::invalid_argument("site index " + std::string(token) + " outside the lattice");
    p = spec.position_of(idx);
  } else {
    p = parse_position(token, spec.dims);
  }
  if (!spec.contains(p)) throw std::invalid_argument("site " + std::string(token) + " outside the lattice");
  return p;
}

double CollisionPhaseTable::pair_phase(InternalState a, InternalState b) const {
  if (a > b) std::swap(a, b);
  using S = InternalState;
  if (b == S::P) {
    if (a == S::S0) return phase_0P;
    if (a == S::S1) return phase_1P;
    return phase_PP;
  }
  if (b == S::Pp) {
    if (a == S::S0) return phase_0Pp;
    if (a == S::S1) return phase_1Pp;
    if (a == S::P) return phase_PPp;
    return phase_PpPp;
  }
  return 0;
}

CollisionPhaseTable CollisionPhaseTable::negated() const {
  return {-phase_0P, -phase_1P, -phase_0Pp, -phase_1Pp, -phase_PP, -phase_PPp, -phase_PpPp};
}

bool CollisionPhaseTable::all_multiples_of_pi(double tol) const {
  for (double v : {phase_0P, phase_1P, phase_0Pp, phase_1Pp, phase_PP, phase_PPp, phase_PpPp}) {
    const double k = v / kPi;
    if (std::abs(k - std::round(k)) > tol) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// QuantumState

QuantumState::QuantumState(LatticeSpec spec, int register_count, bool has_pointer,
                           AmplitudeMap amplitudes, double prune_eps)
    : spec_(spec),
      register_count_(register_count),
      has_pointer_(has_pointer),
      prune_eps_(prune_eps),
      amps_(std::move(amplitudes)) {
  spec_.validate();
  if (register_count_ != spec_.site_count())
    throw LatticeError(Kind::RosterMismatch, "register must hold one atom per lattice site");
  prune_and_validate();
}

QuantumState QuantumState::with_amplitudes(AmplitudeMap amplitudes) const {
  return QuantumState(spec_, register_count_, has_pointer_, std::move(amplitudes), prune_eps_);
}

double QuantumState::norm_squared() const {
  double acc = 0;
  for (const auto& [c, a] : amps_) acc += std::norm(a);
  return acc;
}

cplx QuantumState::amplitude(const BasisConfig& c) const {
  const auto it = amps_.find(c);
  return it == amps_.end() ? cplx{0} : it->second;
}

void QuantumState::prune_and_validate() {
  std::erase_if(amps_, [&](const auto& kv) { return std::abs(kv.second) < prune_eps_; });
  const auto n = static_cast<std::size_t>(atom_count());
  std::vector<std::pair<Position, bool>> occupied;
  for (const auto& [cfg, amp] : amps_) {
    if (cfg.atoms.size() != n)
      throw LatticeError(Kind::RosterMismatch, "configuration has wrong atom count");
    occupied.clear();
    for (const auto& atom : cfg.atoms) {
      const bool mobile = is_mobile(atom.state);
      if (mobile ? !spec_.contains_mobile(atom.position) : !spec_.contains(atom.position))
        throw LatticeError(Kind::OutOfBounds, std::string(mobile ? "mobile" : "pinned") +
                                                  " atom at " + describe(atom.position) +
                                                  " outside lattice");
      occupied.emplace_back(atom.position, mobile);
    }
    std::sort(occupied.begin(), occupied.end());
    for (std::size_t i = 0; i < occupied.size();) {
      std::size_t j = i;
      bool any_mobile = false;
      while (j < occupied.size() && occupied[j].first == occupied[i].first)
        any_mobile |= occupied[j++].second;
      const auto count = j - i;
      if (count > 2)
        throw LatticeError(Kind::Occupancy,
                           "three or more atoms at site " + describe(occupied[i].first));
      if (count == 2 && !any_mobile)
        throw LatticeError(Kind::Occupancy,
                           "two pinned atoms share site " + describe(occupied[i].first));
      i = j;
    }
  }
}

std::string QuantumState::to_text() const {
  std::string out;
  for (const auto& [cfg, amp] : amps_) {
    out += detail::format_double(amp.real());
    out += ' ';
    out += detail::format_double(amp.imag());
    out += " ;";
    for (const auto& atom : cfg.atoms) {
      out += " (";
      out += spec_.position_string(atom.position);
      out += ',';
      out += to_string(atom.state);
      out += ')';
    }
    out += '\n';
  }
  return out;
}

QuantumState QuantumState::from_text(const LatticeSpec& spec, std::string_view text) {
  AmplitudeMap amps;
  std::optional<std::size_t> atoms_per_config;
  for (auto raw : detail::lines(text)) {
    const auto line = detail::trim(raw);
    if (line.empty()) continue;
    const auto semi = line.find(';');
    if (semi == std::string_view::npos)
      throw LatticeError(Kind::Parse, "snapshot line missing ';'");
    const auto nums = detail::tokens(line.substr(0, semi));
    if (nums.size() != 2) throw LatticeError(Kind::Parse, "snapshot line needs re im");
    cplx amp;
    BasisConfig cfg;
    try {
      amp = {detail::parse_double(nums[0]), detail::parse_double(nums[1])};
      for (auto tok : detail::tokens(line.substr(semi + 1))) {
        if (tok.size() < 3 || tok.front() != '(' || tok.back() != ')')
          throw LatticeError(Kind::Parse, "bad atom token '" + std::string(tok) + "'");
        const auto inner = tok.substr(1, tok.size() - 2);
        const auto comma = inner.rfind(',');
        if (comma == std::string_view::npos)
          throw LatticeError(Kind::Parse, "bad atom token '" + std::string(tok) + "'");
        cfg.atoms.push_back(
            {parse_position(inner.substr(0, comma), spec.dims),
             parse_internal_state(inner.substr(comma + 1))});
      }
    } catch (const std::invalid_argument& e) {
      throw LatticeError(Kind::Parse, e.what());
    }
    if (atoms_per_config && *atoms_per_config != cfg.atoms.size())
      throw LatticeError(Kind::RosterMismatch, "snapshot configs differ in atom count");
    atoms_per_config = cfg.atoms.size();
    amps[std::move(cfg)] += amp;
  }
  const auto sites = static_cast<std::size_t>(spec.site_count());
  const std::size_t atoms = atoms_per_config.value_or(sites);
  if (atoms != sites && atoms != sites + 1)
    throw LatticeError(Kind::RosterMismatch, "snapshot atom count does not match lattice");
  return QuantumState(spec, spec.site_count(), atoms == sites + 1, std::move(amps));
}

// ---------------------------------------------------------------------------
// Raman pairs

std::string_view to_string(RamanPair p) {
  switch (p) {
    case RamanPair::S0S1: return "S0S1";
    case RamanPair::S1P: return "S1P";
    case RamanPair::S1Pp: return "S1Pp";
    case RamanPair::PPp: return "PPp";
  }
  return "?";
}

RamanPair parse_raman_pair(std::string_view token) {
  for (auto p : {RamanPair::S0S1, RamanPair::S1P, RamanPair::S1Pp, RamanPair::PPp})
    if (token == to_string(p)) return p;
  throw LatticeError(Kind::Parse, "unknown Raman pair '" + std::string(token) + "'");
}

std::pair<InternalState, InternalState> levels(RamanPair p) {
  using S = InternalState;
  switch (p) {
    case RamanPair::S0S1: return {S::S0, S::S1};
    case RamanPair::S1P: return {S::S1, S::P};
    case RamanPair::S1Pp: return {S::S1, S::Pp};
    case RamanPair::PPp: return {S::P, S::Pp};
  }
  return {S::S0, S::S1};
}

RamanPair raman_pair(InternalState a, InternalState b) {
  if (a > b) std::swap(a, b);
  for (auto p : {RamanPair::S0S1, RamanPair::S1P, RamanPair::S1Pp, RamanPair::PPp})
    if (levels(p) == std::pair{a, b}) return p;
  throw LatticeError(Kind::DisallowedPair, "no Raman coupling between " +
                                               std::string(to_string(a)) + " and " +
                                               std::string(to_string(b)));
}

// ---------------------------------------------------------------------------
// Primitives

QuantumState init_register(const LatticeSpec& spec, std::optional<Position> pointer_site) {
  spec.validate();
  if (pointer_site && !spec.contains(*pointer_site))
    throw LatticeError(Kind::OutOfBounds, "pointer site " + describe(*pointer_site) +
                                              " outside lattice");
  BasisConfig cfg;
  for (int i = 0; i < spec.site_count(); ++i)
    cfg.atoms.push_back({spec.position_of(i), InternalState::S0});
  if (pointer_site) cfg.atoms.push_back({*pointer_site, InternalState::P});
  QuantumState::AmplitudeMap amps;
  amps.emplace(std::move(cfg), cplx{1});
  return QuantumState(spec, spec.site_count(), pointer_site.has_value(), std::move(amps));
}

QuantumState embed_register(const LatticeSpec& spec, std::span<const cplx> qubits,
                            std::optional<Position> pointer_site) {
  spec.validate();
  const int n = spec.site_count();
  if (qubits.size() != (std::size_t{1} << n))
    throw LatticeError(Kind::RosterMismatch, "register vector must have 2^sites entries");
  if (pointer_site && !spec.contains(*pointer_site))
    throw LatticeError(Kind::OutOfBounds, "pointer site outside lattice");
  QuantumState::AmplitudeMap amps;
  for (std::size_t idx = 0; idx < qubits.size(); ++idx) {
    if (qubits[idx] == cplx{0}) continue;
    BasisConfig cfg;
    for (int q = 0; q < n; ++q)
      cfg.atoms.push_back(
          {spec.position_of(q), ((idx >> q) & 1) ? InternalState::S1 : InternalState::S0});
    if (pointer_site) cfg.atoms.push_back({*pointer_site, InternalState::P});
    amps.emplace(std::move(cfg), qubits[idx]);
  }
  return QuantumState(spec, n, pointer_site.has_value(), std::move(amps));
}

QuantumState global_raman(const QuantumState& state, RamanPair pair, double theta, double phi) {
  const auto [la, lb] = levels(pair);
  const Mat2 u = Mat2::raman(theta, phi);
  const double eps = state.prune_eps();
  QuantumState::AmplitudeMap cur = state.amplitudes();
  for (int k = 0; k < state.atom_count(); ++k) {
    QuantumState::AmplitudeMap next;
    for (const auto& [cfg, amp] : cur) {
      const InternalState s = cfg.atoms[k].state;
      if (s != la && s != lb) {
        next[cfg] += amp;
        continue;
      }
      const int col = s == la ? 0 : 1;
      BasisConfig to_a = cfg, to_b = cfg;
      to_a.atoms[k].state = la;
      to_b.atoms[k].state = lb;
      next[std::move(to_a)] += u(0, col) * amp;
      next[std::move(to_b)] += u(1, col) * amp;
    }
    std::erase_if(next, [&](const auto& kv) { return std::abs(kv.second) < eps; });
    cur = std::move(next);
  }
  return state.with_amplitudes(std::move(cur));
}

QuantumState global_raman(const QuantumState& state, InternalState a, InternalState b,
                          double theta, double phi) {
  return global_raman(state, raman_pair(a, b), theta, phi);
}

QuantumState shift_pointer_lattice(const QuantumState& state, const std::array<int, 3>& delta) {
  QuantumState::AmplitudeMap next;
  for (const auto& [cfg, amp] : state.amplitudes()) {
    BasisConfig moved = cfg;
    for (auto& atom : moved.atoms) {
      if (!is_mobile(atom.state)) continue;
      atom.position = atom.position + delta;
      if (!state.spec().contains_mobile(atom.position))
        throw LatticeError(Kind::OutOfBounds, "shift moves a mobile atom to " +
                                                  describe(atom.position) +
                                                  ", outside the hard wall");
    }
    next.emplace(std::move(moved), amp);
  }
  return state.with_amplitudes(std::move(next));
}

namespace {

template <class PhaseFn>
QuantumState apply_diagonal(const QuantumState& state, PhaseFn&& phase_of) {
  QuantumState::AmplitudeMap next = state.amplitudes();
  for (auto& [cfg, amp] : next) amp *= phase_of(cfg);
  return state.with_amplitudes(std::move(next));
}

int sites_with_s1_p_pair(const BasisConfig& cfg) {
  int k = 0;
  const auto& atoms = cfg.atoms;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (atoms[i].state != InternalState::S1) continue;
    for (std::size_t j = 0; j < atoms.size(); ++j)
      if (atoms[j].state == InternalState::P && atoms[j].position == atoms[i].position) {
        ++k;
        break;
      }
  }
  return k;
}

}  // namespace

QuantumState collision_wait(const QuantumState& state, const CollisionPhaseTable& table) {
  return apply_diagonal(state, [&](const BasisConfig& cfg) {
    double phi = 0;
    const auto& atoms = cfg.atoms;
    for (std::size_t i = 0; i < atoms.size(); ++i)
      for (std::size_t j = i + 1; j < atoms.size(); ++j)
        if (atoms[i].position == atoms[j].position)
          phi += table.pair_phase(atoms[i].state, atoms[j].state);
    return phi == 0 ? cplx{1} : std::polar(1.0, phi);
  });
}

QuantumState molecular_pulse(const QuantumState& state) {
  return apply_diagonal(state, [](const BasisConfig& cfg) {
    return sites_with_s1_p_pair(cfg) % 2 ? cplx{-1} : cplx{1};
  });
}

QuantumState local_phase_z1Pp(const QuantumState& state) { return molecular_pulse(state); }

namespace {

bool has_pprime(const BasisConfig& cfg) {
  return std::any_of(cfg.atoms.begin(), cfg.atoms.end(),
                     [](const Atom& a) { return a.state == InternalState::Pp; });
}

}  // namespace

double pprime_probability(const QuantumState& state) {
  double p = 0, total = 0;
  for (const auto& [cfg, amp] : state.amplitudes()) {
    total += std::norm(amp);
    if (has_pprime(cfg)) p += std::norm(amp);
  }
  return total > 0 ? p / total : 0;
}

std::pair<double, QuantumState> project_pprime(const QuantumState& state, bool outcome) {
  double total = 0, kept = 0;
  QuantumState::AmplitudeMap next;
  for (const auto& [cfg, amp] : state.amplitudes()) {
    total += std::norm(amp);
    if (has_pprime(cfg) == outcome) {
      kept += std::norm(amp);
      next.emplace(cfg, amp);
    }
  }
  if (kept == 0) throw std::domain_error("projection onto a zero-probability branch");
  if (next.size() == state.size()) return {1.0, state};
  const double scale = 1.0 / std::sqrt(kept);
  for (auto& [cfg, amp] : next) amp *= scale;
  return {kept / total, state.with_amplitudes(std::move(next))};
}

std::pair<bool, QuantumState> measure_pprime(const QuantumState& state, Rng& rng) {
  const double p = pprime_probability(state);
  bool outcome;
  if (p <= 0) {
    outcome = false;
  } else if (p >= 1) {
    outcome = true;
  } else {
    outcome = rng.uniform() < p;
  }
  auto [prob, post] = project_pprime(state, outcome);
  return {outcome, std::move(post)};
}

QuantumState reset_pprime(const QuantumState& state) {
  std::optional<std::vector<int>> pattern;
  QuantumState::AmplitudeMap next;
  for (const auto& [cfg, amp] : state.amplitudes()) {
    std::vector<int> here;
    BasisConfig reset = cfg;
    for (std::size_t i = 0; i < reset.atoms.size(); ++i)
      if (reset.atoms[i].state == InternalState::Pp) {
        here.push_back(static_cast<int>(i));
        reset.atoms[i].state = InternalState::S1;
      }
    if (pattern && *pattern != here)
      throw LatticeError(Kind::NonDefiniteReset,
                         "Pp occupancy differs across configurations; reset is not unitary");
    pattern = std::move(here);
    next[std::move(reset)] += amp;
  }
  return state.with_amplitudes(std::move(next));
}

cplx overlap(const QuantumState& a, const QuantumState& b) {
  if (!(a.spec() == b.spec()) || a.register_count() != b.register_count() ||
      a.has_pointer() != b.has_pointer())
    throw LatticeError(Kind::RosterMismatch, "overlap of states with different rosters");
  const auto& small = a.size() <= b.size() ? a.amplitudes() : b.amplitudes();
  const auto& large = a.size() <= b.size() ? b.amplitudes() : a.amplitudes();
  const bool swapped = a.size() > b.size();
  cplx acc{0};
  for (const auto& [cfg, amp] : small) {
    const auto it = large.find(cfg);
    if (it == large.end()) continue;
    acc += swapped ? std::conj(it->second) * amp : std::conj(amp) * it->second;
  }
  return acc;
}

}  // namespace globalq
