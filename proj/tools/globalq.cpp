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

// globalq: compile | run | verify | resources | photo
// Exit codes: 0 ok, 1 verification failure, 2 input error, 3 compile error.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "globalq/compiler.hpp"
#include "globalq/photophysics.hpp"
#include "globalq/pulse.hpp"
#include "globalq/resources.hpp"
#include "globalq/verify.hpp"

#ifndef GLOBALQ_DATA_DIR
#define GLOBALQ_DATA_DIR "data"
#endif

namespace {

using namespace globalq;

constexpr int kExitVerify = 1;
constexpr int kExitInput = 2;
constexpr int kExitCompile = 3;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path.string() + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

LatticeSpec parse_lattice_flag(const std::string& text) {
  std::vector<int> ext;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, 'x')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(part, &used);
      if (used != part.size()) throw std::invalid_argument("junk");
      ext.push_back(v);
    } catch (const std::exception&) {
      throw InputError("bad --lattice '" + text + "' (expected DxE[xF])");
    }
  }
  if (ext.size() < 2 || ext.size() > 3) throw InputError("bad --lattice '" + text + "' (expected DxE[xF])");
  LatticeSpec spec;
  for (std::size_t d = 0; d < ext.size(); ++d) spec.extent[d] = ext[d];
  spec.dims = static_cast<int>(ext.size());
  try {
    spec.validate();
  } catch (const std::exception& e) {
    throw InputError(std::string("bad --lattice: ") + e.what());
  }
  return spec;
}

PointerPlan make_plan(const LatticeSpec& lattice, const std::string& pointer) {
  PointerPlan plan{lattice, Position{}};
  if (!pointer.empty()) {
    try {
      plan.rest_site = parse_site(pointer, lattice);
    } catch (const std::exception& e) {
      throw InputError(std::string("bad --pointer: ") + e.what());
    }
  }
  return plan;
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw InputError("cannot write '" + out + "'");
  f << text;
}

std::vector<CircuitOp> load_circuit(const std::string& path, const LatticeSpec& lattice) {
  const std::string text = read_text(path);
  return parse_circuit(text, lattice, std::filesystem::path(path).parent_path(),
                       [](const std::filesystem::path& p) { return read_text(p); });
}

struct Common {
  std::string input;
  std::string lattice;
  std::string pointer;
  std::string out;
  std::uint64_t seed = 0;
};

void add_common(CLI::App* sub, Common& c, bool needs_lattice = true) {
  sub->add_option("input", c.input, "input file")->required();
  auto* l = sub->add_option("--lattice", c.lattice, "register lattice DxE[xF]");
  if (needs_lattice) l->required();
  sub->add_option("--pointer", c.pointer, "pointer rest site (index or R,C)");
  sub->add_option("--out", c.out, "output file (default stdout)");
  sub->add_option("--seed", c.seed, "RNG seed");
}

int cmd_compile(const Common& c, bool materialize) {
  const LatticeSpec lattice = parse_lattice_flag(c.lattice);
  const PointerPlan plan = make_plan(lattice, c.pointer);
  const auto ops = load_circuit(c.input, lattice);
  CompileOptions opt;
  opt.materialize_frames = materialize;
  emit(to_text(compile_circuit(ops, plan, opt)), c.out);
  return 0;
}

std::string format_amp(cplx a) {
  std::ostringstream os;
  os.precision(12);
  os << a.real() << (a.imag() < 0 ? "-" : "+") << std::abs(a.imag()) << "i";
  return os.str();
}

int cmd_run(const Common& c, bool is_program, bool no_pointer) {
  const LatticeSpec lattice = parse_lattice_flag(c.lattice);
  PulseProgram program;
  PointerPlan plan = make_plan(lattice, c.pointer);
  bool cluster = false;
  if (is_program) {
    program = parse_program(read_text(c.input));
  } else {
    const auto ops = load_circuit(c.input, lattice);
    for (const auto& op : ops) cluster = cluster || std::holds_alternative<PrepCluster>(op);
    program = compile_circuit(ops, plan);
  }
  const LatticeSpec exec_lattice = cluster ? cluster_lattice(lattice) : lattice;
  std::optional<Position> ptr;
  if (!cluster && !no_pointer) ptr = plan.rest_site;
  const QuantumState init = init_register(exec_lattice, ptr);
  Rng rng(c.seed);
  std::optional<ExecutionTrace> trace;
  try {
    trace = execute(program, init, rng);
  } catch (const ExecutionError& e) {
    std::cerr << "globalq: " << e.what() << "\n";
    return kExitCompile;
  }
  std::ostringstream os;
  for (const auto& o : trace->outcomes) os << "OUTCOME " << o.tag << " " << (o.value ? 1 : 0) << "\n";
  try {
    const PointerFactor f = factor_pointer(trace->final_state);
    for (std::size_t i = 0; i < f.register_state.size(); ++i) {
      if (std::abs(f.register_state[i]) < 1e-12) continue;
      os << "AMP " << i << " " << format_amp(f.register_state[i]) << "\n";
    }
    os << "POINTER_OK true\n";
  } catch (const std::exception& e) {
    os << "POINTER_OK false # " << e.what() << "\n";
  }
  emit(os.str(), c.out);
  return 0;
}

int cmd_verify(const Common& c, int trials, std::optional<long long> skip) {
  if (trials <= 0) throw InputError("--trials must be >= 1");
  const LatticeSpec lattice = parse_lattice_flag(c.lattice);
  const PointerPlan plan = make_plan(lattice, c.pointer);
  const auto ops = load_circuit(c.input, lattice);
  if (skip && *skip < 0) throw InputError("--inject-skip must be >= 0");
  std::ostringstream os;
  bool ok = true;
  std::size_t offset = 0;
  bool skip_used = false;
  for (const auto& op : ops) {
    validate_op(op, lattice);
    const std::size_t size = compile_op(op, plan).size();
    VerifyOptions vo;
    vo.trials = trials;
    vo.seed = c.seed;
    if (skip && !skip_used && static_cast<std::size_t>(*skip) < offset + size) {
      vo.skip_instruction = static_cast<std::size_t>(*skip) - offset;
      skip_used = true;
    }
    offset += size;
    const VerifyReport rep = verify_program(op, plan, vo);
    os << rep.to_text();
    ok = ok && rep.passed();
  }
  if (skip && !skip_used) throw InputError("--inject-skip beyond the compiled program");
  emit(os.str(), c.out);
  return ok ? 0 : kExitVerify;
}

std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& text) {
  const auto colon = text.find_first_of(":-");
  try {
    if (colon == std::string::npos) {
      const auto v = std::stoull(text);
      return {v, v};
    }
    return {std::stoull(text.substr(0, colon)), std::stoull(text.substr(colon + 1))};
  } catch (const std::exception&) {
    throw InputError("bad --m '" + text + "' (expected A or A:B)");
  }
}

int cmd_resources(const std::string& range, const std::string& model, const std::string& audit_file,
                  const std::string& out) {
  std::ostringstream os;
  os << csv_header() << "\n";
  if (!audit_file.empty()) {
    const AuditResult a = audit(parse_program(read_text(audit_file)));
    if (a.malformed) {
      std::cerr << "globalq: malformed program: " << a.problem << "\n";
      return kExitVerify;
    }
    os << csv_row(0, a.cost).replace(0, 1, "program") << "\n";
    emit(os.str(), out);
    return 0;
  }
  const auto [lo, hi] = parse_range(range);
  if (lo == 0 || hi < lo) throw InputError("m range must satisfy 1 <= A <= B");
  for (std::uint64_t m = lo; m <= hi; ++m) {
    CostReport r;
    if (model == "cluster") {
      r = cluster_gate_cost(m);
    } else if (model == "network") {
      r.rows_moved = network_move_rows(m);
      r.entangling_passes = 1;
    } else {
      throw InputError("--model must be cluster or network");
    }
    os << csv_row(m, r) << "\n";
  }
  emit(os.str(), out);
  return 0;
}

struct PhotoArgs {
  double from = 0, to = 0, step = 0.1;
  std::string state_class = "qubit";
  std::string pol = "sigma+";
  double nu = 1e6;
  double budget = 0.1;
  std::string data;
  std::string out;
};

int cmd_photo(const PhotoArgs& a) {
  if (!(a.to > a.from)) throw InputError("empty wavelength range");
  if (!(a.step > 0)) throw InputError("--step must be positive");
  if (!(a.nu > 0)) throw InputError("--nu must be positive");
  std::vector<photo::AtomicLine> lines;
  try {
    lines = photo::load_atomic_data(a.data);
  } catch (const photo::PhotophysicsError& e) {
    throw InputError(e.what());
  }
  photo::ScanRequest req;
  req.lo_nm = a.from;
  req.hi_nm = a.to;
  req.step_nm = a.step;
  try {
    req.channel = {photo::parse_polarization(a.pol), photo::parse_state_class(a.state_class)};
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  req.nu = a.nu;
  const auto rows = photo::scan(lines, req);
  std::ostringstream os;
  os << photo::scan_csv(rows);
  // zero crossings between neighbouring evaluated rows
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& p = rows[i - 1];
    const auto& q = rows[i];
    if (p.skipped || q.skipped) continue;
    if ((p.shift_hz > 0) == (q.shift_hz > 0)) continue;
    const double z = photo::find_zero_shift_wavelength(lines, req.channel, p.lambda_nm * 1e-9,
                                                       q.lambda_nm * 1e-9);
    os << "# ZERO_CROSSING_NM " << std::setprecision(7) << z * 1e9 << "\n";
  }
  double max_rate = -1, at = 0;
  bool untrappable = false;
  for (const auto& r : rows) {
    if (r.skipped) continue;
    if (!r.trappable) {
      untrappable = true;
      continue;
    }
    if (r.scatter > max_rate) {
      max_rate = r.scatter;
      at = r.lambda_nm;
    }
  }
  if (max_rate >= 0) {
    os << "# MAX_RATE_PER_S " << std::setprecision(6) << max_rate << " AT_NM " << at << " BUDGET "
       << a.budget << " " << (max_rate < a.budget ? "PASS" : "FAIL") << " TOL3 "
       << (max_rate < 3 * a.budget ? "PASS" : "FAIL") << (untrappable ? " UNTRAPPABLE_ROWS" : "")
       << "\n";
  }
  emit(os.str(), a.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"globalq: pulse-level compiler and simulator for globally controlled lattices"};
  app.require_subcommand(1);

  Common cc, rc, vc;
  bool materialize = false, run_program = false, no_pointer = false;
  int trials = 100;
  std::optional<long long> skip;
  auto* compile = app.add_subcommand("compile", "compile a circuit file to pulse-program text");
  add_common(compile, cc);
  compile->add_flag("--materialize", materialize, "append the correction frame as pulses");

  auto* run = app.add_subcommand("run", "execute a circuit (or --program file) from |0...0>");
  add_common(run, rc);
  run->add_flag("--program", run_program, "input is pulse-program text");
  run->add_flag("--no-pointer", no_pointer, "start without a pointer atom");

  auto* verify = app.add_subcommand("verify", "check a circuit against the dense oracle");
  add_common(verify, vc);
  verify->add_option("--trials", trials, "random inputs per op");
  verify->add_option("--inject-skip", skip, "drop instruction N of the compiled circuit");

  std::string range = "1:5", model = "cluster", audit_file, res_out;
  auto* res = app.add_subcommand("resources", "resource formulas or a program audit as CSV");
  res->add_option("--m", range, "m or A:B");
  res->add_option("--model", model, "cluster | network");
  res->add_option("--audit", audit_file, "audit a pulse-program file instead");
  res->add_option("--out", res_out, "output file");

  PhotoArgs pa;
  pa.data = std::string(GLOBALQ_DATA_DIR) + "/rb87_lines.dat";
  auto* ph = app.add_subcommand("photo", "light-shift / scattering scan as CSV");
  ph->add_option("--from", pa.from, "start wavelength, nm")->required();
  ph->add_option("--to", pa.to, "end wavelength, nm")->required();
  ph->add_option("--step", pa.step, "step, nm");
  ph->add_option("--class", pa.state_class, "qubit | pointer");
  ph->add_option("--pol", pa.pol, "sigma+ | sigma- | pi");
  ph->add_option("--nu", pa.nu, "trap frequency, Hz");
  ph->add_option("--budget", pa.budget, "scattering budget, s^-1");
  ph->add_option("--data", pa.data, "atomic data file");
  ph->add_option("--out", pa.out, "output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc_parse = app.exit(e);
    return rc_parse == 0 ? 0 : kExitInput;
  }

  try {
    if (*compile) return cmd_compile(cc, materialize);
    if (*run) return cmd_run(rc, run_program, no_pointer);
    if (*verify) return cmd_verify(vc, trials, skip);
    if (*res) return cmd_resources(range, model, audit_file, res_out);
    if (*ph) return cmd_photo(pa);
  } catch (const InputError& e) {
    std::cerr << "globalq: " << e.what() << "\n";
    return kExitInput;
  } catch (const CircuitParseError& e) {
    std::cerr << "globalq: parse error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ProgramError& e) {
    std::cerr << "globalq: program error: " << e.what() << "\n";
    return kExitInput;
  } catch (const photo::PhotophysicsError& e) {
    std::cerr << "globalq: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "globalq: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "globalq: compile error: " << e.what() << "\n";
    return kExitCompile;
  }
  return kExitInput;
}
