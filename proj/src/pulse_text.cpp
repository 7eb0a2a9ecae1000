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

#include <sstream>

#include "globalq/pulse.hpp"
#include "text_util.hpp"

namespace globalq {

namespace {

using detail::format_double;
using detail::parse_double;
using detail::parse_int;

struct TableKey {
  std::string_view key;
  double CollisionPhaseTable::*field;
};

constexpr TableKey kTableKeys[] = {
    {"0P", &CollisionPhaseTable::phase_0P},     {"1P", &CollisionPhaseTable::phase_1P},
    {"0Pp", &CollisionPhaseTable::phase_0Pp},   {"1Pp", &CollisionPhaseTable::phase_1Pp},
    {"PP", &CollisionPhaseTable::phase_PP},     {"PPp", &CollisionPhaseTable::phase_PPp},
    {"PpPp", &CollisionPhaseTable::phase_PpPp},
};

bool valid_word(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c == '#' || c == ' ' || c == '\t' || c == '\r' || c == '\n') return false;
  return true;
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw ProgramError("line " + std::to_string(line) + ": " + what);
}

}  // namespace

std::string to_text(const PulseProgram& p) {
  std::ostringstream os;
  if (!p.metadata.description.empty()) {
    std::istringstream desc(p.metadata.description);
    for (std::string line; std::getline(desc, line);) os << "# meta: description " << line << '\n';
  }
  for (const auto& c : p.metadata.corrections) {
    os << "# meta: correction " << c.site[0] << ',' << c.site[1] << ',' << c.site[2];
    for (const auto& z : c.gate.m) os << ' ' << format_double(z.real()) << ' ' << format_double(z.imag());
    os << ' ' << (c.label.empty() ? "-" : c.label) << '\n';
  }
  for (const auto& [id, t] : p.tables) {
    os << "TABLE " << id;
    for (const auto& k : kTableKeys) os << ' ' << k.key << '=' << format_double(t.*k.field);
    os << '\n';
  }
  for (const auto& ins : p.instructions) {
    if (const auto* r = std::get_if<Raman>(&ins)) {
      os << "RAMAN " << to_string(r->pair) << ' ' << format_double(r->theta) << ' '
         << format_double(r->phi);
    } else if (const auto* s = std::get_if<ShiftP>(&ins)) {
      int n = std::max(1, std::min(3, s->dims));
      for (int d = 2; d >= n; --d)
        if (s->delta[d] != 0) n = d + 1;
      os << "SHIFTP ";
      for (int d = 0; d < n; ++d) os << (d ? "," : "") << s->delta[d];
    } else if (const auto* c = std::get_if<Collide>(&ins)) {
      os << "COLLIDE " << c->table;
    } else if (const auto* m = std::get_if<MeasurePprime>(&ins)) {
      os << "MEASPP " << m->tag;
    } else if (const auto* z = std::get_if<ZenoGuard>(&ins)) {
      os << "ZENO " << z->count;
    } else {
      os << kind_name(ins);
    }
    os << '\n';
  }
  return os.str();
}

PulseProgram parse_program(std::string_view text) {
  PulseProgram p;
  bool body_started = false;
  std::size_t line_no = 0;
  for (auto raw : detail::lines(text)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      const auto comment = detail::trim(line.substr(hash + 1));
      line = line.substr(0, hash);
      if (detail::trim(line).empty() && comment.starts_with("meta:")) {
        const auto meta = detail::trim(comment.substr(5));
        if (meta.starts_with("description")) {
          const auto d = detail::trim(meta.substr(11));
          if (!p.metadata.description.empty()) p.metadata.description += '\n';
          p.metadata.description += std::string(d);
        } else if (meta.starts_with("correction")) {
          const auto tk = detail::tokens(meta.substr(10));
          if (tk.size() != 10) fail(line_no, "malformed correction metadata");
          LocalCorrection c;
          try {
            const auto coords = detail::split(tk[0], ",");
            if (coords.size() != 3) fail(line_no, "correction site needs 3 coordinates");
            for (int d = 0; d < 3; ++d) c.site[d] = parse_int<int>(coords[d]);
            for (int i = 0; i < 4; ++i)
              c.gate.m[i] = cplx{parse_double(tk[1 + 2 * i]), parse_double(tk[2 + 2 * i])};
          } catch (const std::invalid_argument& e) {
            fail(line_no, e.what());
          }
          c.label = tk[9] == "-" ? "" : std::string(tk[9]);
          p.metadata.corrections.push_back(std::move(c));
        }
      }
    }
    const auto tk = detail::tokens(line);
    if (tk.empty()) continue;
    const auto op = tk[0];
    auto want = [&](std::size_t n) {
      if (tk.size() != n)
        fail(line_no, std::string(op) + " expects " + std::to_string(n - 1) + " operand(s)");
    };
    try {
      if (op == "TABLE") {
        if (body_started) fail(line_no, "TABLE after the first instruction");
        if (tk.size() < 2 || !valid_word(tk[1])) fail(line_no, "TABLE needs an id");
        auto t = CollisionPhaseTable::zeros();
        std::vector<std::string_view> seen;
        for (std::size_t i = 2; i < tk.size(); ++i) {
          const auto eq = tk[i].find('=');
          if (eq == std::string_view::npos) fail(line_no, "expected key=value: " + std::string(tk[i]));
          const auto key = tk[i].substr(0, eq);
          const TableKey* match = nullptr;
          for (const auto& k : kTableKeys)
            if (k.key == key) match = &k;
          if (!match) fail(line_no, "unknown table key '" + std::string(key) + "'");
          for (auto s : seen)
            if (s == key) fail(line_no, "duplicate table key '" + std::string(key) + "'");
          seen.push_back(key);
          t.*(match->field) = parse_double(tk[i].substr(eq + 1));
        }
        if (!p.tables.emplace(std::string(tk[1]), t).second)
          fail(line_no, "duplicate table id '" + std::string(tk[1]) + "'");
        continue;
      }
      body_started = true;
      if (op == "RAMAN") {
        want(4);
        p.append(Raman{parse_raman_pair(tk[1]), parse_double(tk[2]), parse_double(tk[3])});
      } else if (op == "SHIFTP") {
        want(2);
        const auto parts = detail::split(tk[1], ",");
        if (parts.size() > 3) fail(line_no, "SHIFTP takes at most 3 components");
        ShiftP s;
        s.dims = static_cast<int>(parts.size());
        for (std::size_t d = 0; d < parts.size(); ++d) s.delta[d] = parse_int<int>(parts[d]);
        p.append(s);
      } else if (op == "COLLIDE") {
        want(2);
        p.append(Collide{std::string(tk[1])});
      } else if (op == "MOLPULSE") {
        want(1);
        p.append(MolecularPulse{});
      } else if (op == "LPZ1PP") {
        want(1);
        p.append(LocalPhaseZ1Pp{});
      } else if (op == "MEASPP") {
        want(2);
        p.append(MeasurePprime{std::string(tk[1])});
      } else if (op == "RESETPP") {
        want(1);
        p.append(ResetPprime{});
      } else if (op == "ZENO") {
        want(2);
        const int n = parse_int<int>(tk[1]);
        if (n < 1) fail(line_no, "ZENO count must be >= 1");
        p.append(ZenoGuard{n});
      } else {
        fail(line_no, "unknown instruction '" + std::string(op) + "'");
      }
    } catch (const std::invalid_argument& e) {
      fail(line_no, e.what());
    } catch (const LatticeError& e) {
      fail(line_no, e.what());
    }
  }
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw ProgramError(e.what());
  }
  return p;
}

}  // namespace globalq
