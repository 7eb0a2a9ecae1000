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

#include <fstream>
#include <sstream>

#include "globalq/compiler.hpp"
#include "text_util.hpp"

namespace globalq {

namespace {

std::string read_whole_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw CircuitParseError("cannot open '" + p.string() + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Named gates, or eight reals u00re u00im u01re u01im u10re u10im u11re u11im.
Mat2 parse_gate(const std::vector<std::string_view>& tk, std::size_t& i) {
  if (i >= tk.size()) throw CircuitParseError("missing gate");
  const auto name = tk[i];
  const double r = 1.0 / std::sqrt(2.0);
  if (name == "I") return ++i, Mat2::identity();
  if (name == "X") return ++i, Mat2::x();
  if (name == "Y") return ++i, Mat2::y();
  if (name == "Z") return ++i, Mat2::z();
  if (name == "H") return ++i, Mat2::h();
  if (name == "S") return ++i, Mat2::diag(1, cplx{0, 1});
  if (name == "T") return ++i, Mat2::diag(1, cplx{r, r});
  if (i + 8 > tk.size()) throw CircuitParseError("gate needs 8 real numbers or a name");
  Mat2 u;
  for (int k = 0; k < 4; ++k) {
    u.m[k] = {detail::parse_double(tk[i]), detail::parse_double(tk[i + 1])};
    i += 2;
  }
  return u;
}

// Syntax only; bounds are the compiler's business.
Position parse_site_token(std::string_view token, const LatticeSpec& lattice) {
  token = detail::trim(token);
  if (token.find(':') == std::string_view::npos) {
    const int idx = detail::parse_int<int>(token);
    if (idx < 0) throw CircuitParseError("negative site index");
    return lattice.position_of(idx);
  }
  return parse_position(token, lattice.dims);
}

std::vector<Position> parse_sites(std::string_view token, const LatticeSpec& lattice) {
  std::vector<Position> out;
  for (auto part : detail::split(token, ",")) out.push_back(parse_site_token(part, lattice));
  return out;
}

}  // namespace

std::vector<CircuitOp> parse_circuit(
    std::string_view text, const LatticeSpec& lattice, const std::filesystem::path& base_dir,
    const std::function<std::string(const std::filesystem::path&)>& read_file) {
  std::vector<CircuitOp> ops;
  std::size_t line_no = 0;
  for (auto raw : detail::lines(text)) {
    ++line_no;
    const auto line = raw.substr(0, raw.find('#'));
    for (auto stmt : detail::split(line, ";")) {
      const auto tk = detail::tokens(stmt);
      if (tk.empty()) continue;
      try {
        const auto op = tk[0];
        std::size_t i = 1;
        auto need = [&](std::size_t n) {
          if (tk.size() < n) throw CircuitParseError(std::string(op) + ": missing operands");
        };
        if (op == "LOCAL1Q") {
          need(3);
          Local1Q o{parse_site_token(tk[i++], lattice), {}};
          o.u = parse_gate(tk, i);
          if (i != tk.size()) throw CircuitParseError("trailing tokens");
          ops.push_back(o);
        } else if (op == "MEASZ") {
          if (tk.size() != 3) throw CircuitParseError("MEASZ <site> <tag>");
          ops.push_back(MeasureZ{parse_site_token(tk[1], lattice), std::string(tk[2])});
        } else if (op == "CU") {
          need(4);
          ControlledU o{parse_site_token(tk[1], lattice), parse_sites(tk[2], lattice), {}};
          i = 3;
          o.u = parse_gate(tk, i);
          if (i != tk.size()) throw CircuitParseError("trailing tokens");
          ops.push_back(o);
        } else if (op == "GHZ") {
          if (tk.size() != 2) throw CircuitParseError("GHZ <sites>");
          ops.push_back(PrepGHZ{parse_sites(tk[1], lattice)});
        } else if (op == "GRAPH") {
          if (tk.size() != 2) throw CircuitParseError("GRAPH <edge-list-file>");
          std::filesystem::path path{std::string(tk[1])};
          if (path.is_relative() && !base_dir.empty()) path = base_dir / path;
          const std::string content = read_file ? read_file(path) : read_whole_file(path);
          ops.push_back(PrepGraph{parse_edge_list(content, lattice)});
        } else if (op == "CLUSTER") {
          if (tk.size() != 1) throw CircuitParseError("CLUSTER takes no operands");
          ops.push_back(PrepCluster{});
        } else {
          throw CircuitParseError("unknown operation '" + std::string(op) + "'");
        }
      } catch (const CircuitParseError& e) {
        throw CircuitParseError("circuit line " + std::to_string(line_no) + ": " + e.what());
      } catch (const std::invalid_argument& e) {
        throw CircuitParseError("circuit line " + std::to_string(line_no) + ": " + e.what());
      }
    }
  }
  return ops;
}

}  // namespace globalq
