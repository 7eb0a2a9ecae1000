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

#include "globalq/graph.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "text_util.hpp"

namespace globalq {

namespace {

Edge ordered(int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; }

void check_vertex(const GraphSpec& g, int v) {
  if (v < 0 || v >= g.size())
    throw std::invalid_argument("vertex " + std::to_string(v) + " not in graph");
}

// Upper-triangle bit layout for n <= 11 (55 pairs).
int pair_bit(int a, int b, int n) {
  if (a > b) std::swap(a, b);
  return a * n - a * (a + 1) / 2 + (b - a - 1);
}

std::uint64_t encode(const GraphSpec& g) {
  std::uint64_t key = 0;
  for (const auto& [a, b] : g.edges) key |= std::uint64_t{1} << pair_bit(a, b, g.size());
  return key;
}

std::uint64_t lc_key(std::uint64_t key, int n, int v) {
  std::vector<int> nb;
  for (int w = 0; w < n; ++w)
    if (w != v && (key >> pair_bit(v, w, n) & 1)) nb.push_back(w);
  for (std::size_t i = 0; i < nb.size(); ++i)
    for (std::size_t j = i + 1; j < nb.size(); ++j) key ^= std::uint64_t{1} << pair_bit(nb[i], nb[j], n);
  return key;
}

std::vector<Edge> decode(std::uint64_t key, int n) {
  std::vector<Edge> out;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (key >> pair_bit(a, b, n) & 1) out.push_back({a, b});
  return out;
}

}  // namespace

GraphSpec GraphSpec::make(std::vector<Position> vertices, std::initializer_list<Edge> edges) {
  GraphSpec g;
  g.vertices = std::move(vertices);
  for (const auto& [a, b] : edges) g.add_edge(a, b);
  g.validate();
  return g;
}

GraphSpec GraphSpec::on_line(int n, std::initializer_list<Edge> edges) {
  std::vector<Position> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[i][0] = i;
  return make(std::move(v), edges);
}

GraphSpec GraphSpec::complete(int n) {
  GraphSpec g = on_line(n);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) g.add_edge(a, b);
  return g;
}

GraphSpec GraphSpec::star(int leaves) {
  GraphSpec g = on_line(leaves + 1);
  for (int l = 1; l <= leaves; ++l) g.add_edge(0, l);
  return g;
}

bool GraphSpec::has_edge(int a, int b) const { return edges.contains(ordered(a, b)); }

void GraphSpec::add_edge(int a, int b) {
  check_vertex(*this, a);
  check_vertex(*this, b);
  if (a == b) throw std::invalid_argument("self loop on vertex " + std::to_string(a));
  edges.insert(ordered(a, b));
}

void GraphSpec::toggle_edge(int a, int b) {
  const Edge e = ordered(a, b);
  if (!edges.erase(e)) add_edge(a, b);
}

std::vector<int> GraphSpec::neighbors(int v) const {
  check_vertex(*this, v);
  std::vector<int> out;
  for (const auto& [a, b] : edges) {
    if (a == v) out.push_back(b);
    if (b == v) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

int GraphSpec::index_of(const Position& p) const {
  const auto it = std::find(vertices.begin(), vertices.end(), p);
  return it == vertices.end() ? -1 : static_cast<int>(it - vertices.begin());
}

void GraphSpec::validate() const {
  std::set<Position> seen(vertices.begin(), vertices.end());
  if (seen.size() != vertices.size()) throw std::invalid_argument("repeated graph vertex");
  for (const auto& [a, b] : edges) {
    if (a >= b) throw std::invalid_argument("edge not in canonical order");
    check_vertex(*this, a);
    check_vertex(*this, b);
  }
}

GraphSpec local_complement(const GraphSpec& g, int v) {
  const auto nb = g.neighbors(v);
  GraphSpec out = g;
  for (std::size_t i = 0; i < nb.size(); ++i)
    for (std::size_t j = i + 1; j < nb.size(); ++j) out.toggle_edge(nb[i], nb[j]);
  return out;
}

OrbitResult lu_orbit_min_edges(const GraphSpec& g, std::size_t budget) {
  const int n = g.size();
  if (n > 10) throw std::invalid_argument("orbit search supports at most 10 vertices");
  if (budget < 1) throw std::invalid_argument("orbit budget must be >= 1");

  const std::uint64_t start = encode(g);
  std::unordered_set<std::uint64_t> seen{start};
  std::deque<std::uint64_t> frontier{start};
  std::uint64_t best = start;
  int best_edges = std::popcount(start);
  std::vector<Edge> best_list = decode(start, n);
  bool exhaustive = true;

  while (!frontier.empty()) {
    const std::uint64_t cur = frontier.front();
    frontier.pop_front();
    const int e = std::popcount(cur);
    if (e < best_edges || (e == best_edges && best != start)) {
      auto list = decode(cur, n);
      if (e < best_edges || list < best_list) {
        best = cur;
        best_edges = e;
        best_list = std::move(list);
      }
    }
    for (int v = 0; v < n && exhaustive; ++v) {
      const std::uint64_t next = lc_key(cur, n, v);
      if (seen.contains(next)) continue;
      if (seen.size() >= budget) {
        exhaustive = false;
        break;
      }
      seen.insert(next);
      frontier.push_back(next);
    }
  }

  OrbitResult r;
  r.graph.vertices = g.vertices;
  for (const auto& e : best_list) r.graph.edges.insert(e);
  r.exhaustive = exhaustive;
  r.explored = seen.size();
  return r;
}

std::vector<Star> star_decomposition(const GraphSpec& g) {
  std::set<Edge> residual = g.edges;
  std::vector<Star> out;
  while (!residual.empty()) {
    std::vector<int> degree(static_cast<std::size_t>(g.size()), 0);
    for (const auto& [a, b] : residual) {
      ++degree[a];
      ++degree[b];
    }
    const int center =
        static_cast<int>(std::max_element(degree.begin(), degree.end()) - degree.begin());
    Star s{center, {}};
    for (auto it = residual.begin(); it != residual.end();) {
      if (it->first == center || it->second == center) {
        s.leaves.push_back(it->first == center ? it->second : it->first);
        it = residual.erase(it);
      } else {
        ++it;
      }
    }
    std::sort(s.leaves.begin(), s.leaves.end());
    out.push_back(std::move(s));
  }
  return out;
}

bool StabilizerTableau::is_valid() const {
  if (static_cast<int>(generators.size()) != n) return false;
  for (const auto& p : generators)
    if (static_cast<int>(p.ops.size()) != n || (p.sign != 1 && p.sign != -1)) return false;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      int anti = 0;
      for (int k = 0; k < n; ++k) {
        const char a = generators[i].ops[k], b = generators[j].ops[k];
        if (a != 'I' && b != 'I' && a != b) ++anti;
      }
      if (anti % 2) return false;
    }
  // GF(2) rank over (x|z) bit rows.
  std::vector<std::vector<std::uint8_t>> rows;
  for (const auto& p : generators) {
    std::vector<std::uint8_t> r(2 * static_cast<std::size_t>(n), 0);
    for (int k = 0; k < n; ++k) {
      const char c = p.ops[k];
      r[k] = (c == 'X' || c == 'Y');
      r[n + k] = (c == 'Z' || c == 'Y');
    }
    rows.push_back(std::move(r));
  }
  int rank = 0;
  for (int col = 0; col < 2 * n && rank < n; ++col) {
    int pivot = -1;
    for (int r = rank; r < n; ++r)
      if (rows[r][col]) pivot = r;
    if (pivot < 0) continue;
    std::swap(rows[rank], rows[pivot]);
    for (int r = 0; r < n; ++r)
      if (r != rank && rows[r][col])
        for (int c = 0; c < 2 * n; ++c) rows[r][c] ^= rows[rank][c];
    ++rank;
  }
  return rank == n;
}

StabilizerTableau graph_state_tableau(const GraphSpec& g) {
  StabilizerTableau t;
  t.n = g.size();
  for (int v = 0; v < t.n; ++v) {
    PauliString p{1, std::string(static_cast<std::size_t>(t.n), 'I')};
    p.ops[v] = 'X';
    for (int w : g.neighbors(v)) p.ops[w] = 'Z';
    t.generators.push_back(std::move(p));
  }
  return t;
}

oracle::QubitState graph_state(const GraphSpec& g) {
  oracle::QubitState s(g.size());
  for (int v = 0; v < g.size(); ++v) oracle::apply_h(s, v);
  for (const auto& [a, b] : g.edges) oracle::apply_cz(s, a, b);
  return s;
}

void apply_pauli(oracle::QubitState& s, const PauliString& p) {
  if (static_cast<int>(p.ops.size()) != s.qubits()) throw std::invalid_argument("Pauli length mismatch");
  std::size_t flip = 0;
  for (int k = 0; k < s.qubits(); ++k)
    if (p.ops[k] == 'X' || p.ops[k] == 'Y') flip |= std::size_t{1} << k;
  std::vector<cplx> out(s.dim());
  for (std::size_t i = 0; i < s.dim(); ++i) {
    cplx f{static_cast<double>(p.sign)};
    for (int k = 0; k < s.qubits(); ++k) {
      const bool bit = (i >> k) & 1;
      switch (p.ops[k]) {
        case 'Z': if (bit) f = -f; break;
        case 'Y': f *= bit ? cplx{0, -1} : cplx{0, 1}; break;
        case 'X': case 'I': break;
        default: throw std::invalid_argument("bad Pauli symbol");
      }
    }
    out[i ^ flip] = f * s[i];
  }
  s.amplitudes() = std::move(out);
}

double expectation(const oracle::QubitState& s, const PauliString& p) {
  oracle::QubitState ps = s;
  apply_pauli(ps, p);
  return oracle::inner(s, ps).real();
}

std::vector<std::pair<int, Mat2>> local_complement_unitaries(const GraphSpec& g, int v) {
  const double r = 1.0 / std::sqrt(2.0);
  std::vector<std::pair<int, Mat2>> out;
  out.emplace_back(v, Mat2{{cplx{r}, cplx{0, -r}, cplx{0, -r}, cplx{r}}});
  const Mat2 zq = Mat2::diag(std::polar(1.0, kPi / 4), std::polar(1.0, -kPi / 4));
  for (int w : g.neighbors(v)) out.emplace_back(w, zq);
  return out;
}

GraphSpec parse_edge_list(std::string_view text, const LatticeSpec& spec) {
  std::vector<std::pair<Position, Position>> pairs;
  std::set<Position> verts;
  std::size_t line_no = 0;
  for (auto raw : detail::lines(text)) {
    ++line_no;
    auto line = raw.substr(0, raw.find('#'));
    const auto tk = detail::tokens(line);
    if (tk.empty()) continue;
    try {
      if (tk.size() == 1) {
        verts.insert(parse_site(tk[0], spec));
      } else if (tk.size() == 2) {
        const Position a = parse_site(tk[0], spec), b = parse_site(tk[1], spec);
        if (a == b) throw std::invalid_argument("self loop");
        verts.insert(a);
        verts.insert(b);
        pairs.emplace_back(a, b);
      } else {
        throw std::invalid_argument("expected 'a b'");
      }
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("edge list line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  GraphSpec g;
  g.vertices.assign(verts.begin(), verts.end());
  for (const auto& [a, b] : pairs) {
    const Edge e = ordered(g.index_of(a), g.index_of(b));
    if (!g.edges.insert(e).second)
      throw std::invalid_argument("repeated edge " + spec.position_string(a, ':') + " " +
                                  spec.position_string(b, ':'));
  }
  return g;
}

std::string to_edge_list(const GraphSpec& g, const LatticeSpec& spec) {
  std::ostringstream os;
  std::set<int> used;
  for (const auto& [a, b] : g.edges) {
    used.insert(a);
    used.insert(b);
  }
  for (int v = 0; v < g.size(); ++v)
    if (!used.contains(v)) os << spec.position_string(g.vertices[v], ':') << '\n';
  for (const auto& [a, b] : g.edges)
    os << spec.position_string(g.vertices[a], ':') << ' ' << spec.position_string(g.vertices[b], ':')
       << '\n';
  return os.str();
}

}  // namespace globalq
