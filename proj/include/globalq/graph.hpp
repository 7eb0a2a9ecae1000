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

// Graph-state algebra on small simple graphs.

#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "globalq/lattice.hpp"
#include "globalq/mat2.hpp"
#include "globalq/oracle.hpp"

namespace globalq {

using Edge = std::pair<int, int>;  ///< vertex indices, first < second

/// Vertices are lattice sites; edges refer to them by index into `vertices`.
struct GraphSpec {
  std::vector<Position> vertices;
  std::set<Edge> edges;

  static GraphSpec make(std::vector<Position> vertices, std::initializer_list<Edge> edges = {});
  /// Vertices (0), (1), ... (n-1) on a 1D lattice.
  static GraphSpec on_line(int n, std::initializer_list<Edge> edges = {});
  static GraphSpec complete(int n);
  static GraphSpec star(int leaves);  ///< center is vertex 0

  int size() const { return static_cast<int>(vertices.size()); }
  std::size_t edge_count() const { return edges.size(); }
  bool has_edge(int a, int b) const;
  void add_edge(int a, int b);
  void toggle_edge(int a, int b);
  std::vector<int> neighbors(int v) const;
  int index_of(const Position& p) const;  ///< -1 when absent
  /// Throws std::invalid_argument on loops, out-of-range ends or repeated vertices.
  void validate() const;

  bool operator==(const GraphSpec&) const = default;
};

GraphSpec local_complement(const GraphSpec& g, int v);

struct OrbitResult {
  GraphSpec graph;
  bool exhaustive = true;
  std::size_t explored = 0;
};

/// Breadth-first search of the local-complementation orbit. Among graphs with
/// the fewest edges the input itself wins, then the lexicographically smallest
/// edge list. |vertices| <= 10.
OrbitResult lu_orbit_min_edges(const GraphSpec& g, std::size_t budget = 100000);

struct Star {
  int center = 0;
  std::vector<int> leaves;
  bool operator==(const Star&) const = default;
};

/// Greedy cover; each step takes the max residual degree vertex (lowest index
/// on ties) and all of its residual edges.
std::vector<Star> star_decomposition(const GraphSpec& g);

struct PauliString {
  int sign = 1;         ///< +1 or -1
  std::string ops;      ///< 'I', 'X', 'Y', 'Z' per vertex index
  bool operator==(const PauliString&) const = default;
};

struct StabilizerTableau {
  int n = 0;
  std::vector<PauliString> generators;
  /// Pairwise commutation and GF(2) independence.
  bool is_valid() const;
};

StabilizerTableau graph_state_tableau(const GraphSpec& g);

/// prod CZ |+>^n with qubit i = vertex i.
oracle::QubitState graph_state(const GraphSpec& g);
void apply_pauli(oracle::QubitState& s, const PauliString& p);
/// <s|P|s>, real for Hermitian P.
double expectation(const oracle::QubitState& s, const PauliString& p);

/// Local Cliffords mapping |g> to |local_complement(g, v)>:
/// exp(-i pi/4 X_v) prod_{w in N(v)} exp(i pi/4 Z_w). Pairs (vertex, gate).
std::vector<std::pair<int, Mat2>> local_complement_unitaries(const GraphSpec& g, int v);

/// Edge list: one "a b" per line, a single token declares an isolated vertex;
/// '#' starts a comment. Vertices sorted by site.
GraphSpec parse_edge_list(std::string_view text, const LatticeSpec& spec);
std::string to_edge_list(const GraphSpec& g, const LatticeSpec& spec);

}  // namespace globalq
