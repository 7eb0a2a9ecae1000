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

#include "globalq/photophysics.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "globalq/kernels.hpp"
#include "text_util.hpp"

namespace globalq::photo {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kUntrappableRatio = 1e-3;

double omega_of(double lambda) { return 2 * kPi * kSpeedOfLight / lambda; }

std::vector<kernels::DipoleTerm> terms_for(const std::vector<AtomicLine>& lines, Channel ch) {
  std::vector<kernels::DipoleTerm> out;
  const double c2 = kSpeedOfLight * kSpeedOfLight;
  for (const auto& l : lines) {
    const double s = l.strength(ch.polarization, ch.state_class);
    if (s == 0) continue;
    const double w3 = l.omega0 * l.omega0 * l.omega0;
    out.push_back({l.omega0, -3 * kPi * c2 * l.gamma * s / (2 * w3) / kPlanck,
                   3 * kPi * c2 * l.gamma * l.gamma * s / (2 * kHbar * w3)});
  }
  return out;
}

bool in_guard(const std::vector<AtomicLine>& lines, double omega, const ModelOptions& opt,
              std::string* which = nullptr) {
  for (const auto& l : lines) {
    if (std::abs(omega - l.omega0) / (2 * kPi) < opt.guard_band_hz) {
      if (which) *which = l.label;
      return true;
    }
  }
  return false;
}

void check_inputs(const std::vector<AtomicLine>& lines, double lambda, const ModelOptions& opt) {
  if (!(lambda > 0)) throw PhotophysicsError("wavelength must be positive");
  std::string which;
  if (in_guard(lines, omega_of(lambda), opt, &which))
    throw PhotophysicsError("wavelength within the guard band of line " + which);
}

struct PerIntensity {
  double shift_hz = 0;  // Hz per W/m^2
  double scatter = 0;   // s^-1 per W/m^2
  double magnitude = 0; // sum of |line shift|
};

PerIntensity evaluate(const std::vector<AtomicLine>& lines, double lambda, Channel ch,
                      const ModelOptions& opt) {
  check_inputs(lines, lambda, opt);
  const auto terms = terms_for(lines, ch);
  const double w = omega_of(lambda);
  PerIntensity r;
  kernels::active().dipole_sum(terms.data(), terms.size(), &w, 1, &r.shift_hz, &r.scatter);
  for (const auto& t : terms)
    r.magnitude += std::abs(t.shift_coef * (1 / (t.omega0 - w) + 1 / (t.omega0 + w)));
  return r;
}

}  // namespace

std::string_view to_string(Polarization p) {
  switch (p) {
    case Polarization::SigmaPlus: return "sigma+";
    case Polarization::SigmaMinus: return "sigma-";
    case Polarization::Pi: return "pi";
  }
  return "?";
}

std::string_view to_string(StateClass c) { return c == StateClass::Qubit ? "qubit" : "pointer"; }

Polarization parse_polarization(std::string_view s) {
  if (s == "sigma+") return Polarization::SigmaPlus;
  if (s == "sigma-") return Polarization::SigmaMinus;
  if (s == "pi") return Polarization::Pi;
  throw std::invalid_argument("unknown polarization '" + std::string(s) + "'");
}

StateClass parse_state_class(std::string_view s) {
  if (s == "qubit") return StateClass::Qubit;
  if (s == "pointer") return StateClass::Pointer;
  throw std::invalid_argument("unknown state class '" + std::string(s) + "'");
}

double AtomicLine::wavelength() const { return 2 * kPi * kSpeedOfLight / omega0; }

double AtomicLine::strength(Polarization p, StateClass c) const {
  if (c == StateClass::Qubit) return s_qubit;
  switch (p) {
    case Polarization::SigmaPlus: return s_sigma_plus;
    case Polarization::SigmaMinus: return s_sigma_minus;
    case Polarization::Pi: return s_pi;
  }
  return 0;
}

std::vector<AtomicLine> parse_atomic_data(std::string_view text) {
  std::vector<AtomicLine> out;
  std::size_t line_no = 0;
  for (auto raw : detail::lines(text)) {
    ++line_no;
    const auto tk = detail::tokens(raw.substr(0, raw.find('#')));
    if (tk.empty()) continue;
    try {
      if (tk[0] != "LINE" || tk.size() != 8) throw std::invalid_argument("expected LINE and 7 fields");
      AtomicLine l;
      l.label = std::string(tk[1]);
      const double wl = detail::parse_double(tk[2]) * 1e-9;
      const double g = detail::parse_double(tk[3]) * 1e6 * 2 * kPi;
      l.s_qubit = detail::parse_double(tk[4]);
      l.s_sigma_plus = detail::parse_double(tk[5]);
      l.s_sigma_minus = detail::parse_double(tk[6]);
      l.s_pi = detail::parse_double(tk[7]);
      if (!(wl > 0) || !(g > 0)) throw std::invalid_argument("wavelength and width must be positive");
      if (l.s_qubit < 0 || l.s_sigma_plus < 0 || l.s_sigma_minus < 0 || l.s_pi < 0)
        throw std::invalid_argument("strengths must be non-negative");
      l.omega0 = omega_of(wl);
      l.gamma = g;
      out.push_back(std::move(l));
    } catch (const std::invalid_argument& e) {
      throw PhotophysicsError("atomic data line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (out.empty()) throw PhotophysicsError("atomic data contains no lines");
  return out;
}

std::vector<AtomicLine> load_atomic_data(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw PhotophysicsError("cannot open atomic data '" + path.string() + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return parse_atomic_data(os.str());
}

std::vector<AtomicLine> select_lines(const std::vector<AtomicLine>& lines, std::string_view prefix) {
  std::vector<AtomicLine> out;
  for (const auto& l : lines)
    if (std::string_view(l.label).starts_with(prefix)) out.push_back(l);
  return out;
}

double light_shift(const std::vector<AtomicLine>& lines, double lambda, Channel ch,
                   double intensity, const ModelOptions& opt) {
  if (intensity < 0) throw PhotophysicsError("intensity must be non-negative");
  return evaluate(lines, lambda, ch, opt).shift_hz * intensity;
}

double scattering_rate(const std::vector<AtomicLine>& lines, double lambda, Channel ch,
                       double intensity, const ModelOptions& opt) {
  if (intensity < 0) throw PhotophysicsError("intensity must be non-negative");
  return evaluate(lines, lambda, ch, opt).scatter * intensity;
}

double TrapContext::ground_state_length() const {
  if (!(nu > 0) || !(mass > 0)) throw PhotophysicsError("trap frequency and mass must be positive");
  return std::sqrt(kHbar / (mass * 2 * kPi * nu));
}

double trap_depth_for_frequency(double nu, double mass, double lambda) {
  if (!(nu > 0) || !(mass > 0) || !(lambda > 0)) throw PhotophysicsError("inputs must be positive");
  return mass * nu * nu * lambda * lambda / 2;
}

double trap_frequency_for_depth(double depth, double mass, double lambda) {
  if (!(depth >= 0) || !(mass > 0) || !(lambda > 0)) throw PhotophysicsError("bad trap inputs");
  return (2 / lambda) * std::sqrt(depth / (2 * mass));
}

double intensity_for_trap_frequency(const std::vector<AtomicLine>& lines, double lambda, Channel ch,
                                    double nu, double mass, const ModelOptions& opt) {
  const auto r = evaluate(lines, lambda, ch, opt);
  if (std::abs(r.shift_hz) <= kUntrappableRatio * r.magnitude || r.shift_hz == 0)
    throw PhotophysicsError("net light shift vanishes at this wavelength (untrappable)");
  const double depth_hz = trap_depth_for_frequency(nu, mass, lambda) / kPlanck;
  return depth_hz / std::abs(r.shift_hz);
}

double blue_suppression_factor(const TrapContext& ctx) {
  if (!(ctx.lambda > 0)) throw PhotophysicsError("wavelength must be positive");
  const double x = 2 * kPi * ctx.ground_state_length() / ctx.lambda;
  return x * x;
}

double trapped_scattering_rate(const std::vector<AtomicLine>& lines, double lambda, Channel ch,
                               double nu, double mass, const ModelOptions& opt) {
  const auto r = evaluate(lines, lambda, ch, opt);
  const double intensity = intensity_for_trap_frequency(lines, lambda, ch, nu, mass, opt);
  double rate = r.scatter * intensity;
  if (r.shift_hz > 0) rate *= blue_suppression_factor({nu, mass, lambda});
  return rate;
}

FourStateRates four_state_rates(const std::vector<AtomicLine>& lines, double lambda_p, double nu,
                                double qubit_intensity_fraction, Polarization pol, double mass,
                                const ModelOptions& opt) {
  FourStateRates f;
  const Channel ptr{pol, StateClass::Pointer};
  f.intensity = intensity_for_trap_frequency(lines, lambda_p, ptr, nu, mass, opt);
  f.qubit_rate = scattering_rate(lines, lambda_p, {pol, StateClass::Qubit},
                                 f.intensity * qubit_intensity_fraction, opt);
  f.pointer_rate = scattering_rate(lines, lambda_p, ptr, f.intensity, opt);
  f.average = (2 * f.qubit_rate + 2 * f.pointer_rate) / 4;
  return f;
}

double move_emission_probability(const std::vector<AtomicLine>& lines, double lambda_p, double nu,
                                 double move_time, Polarization pol, double mass,
                                 const ModelOptions& opt) {
  if (move_time < 0) throw PhotophysicsError("move time must be non-negative");
  if (move_time == 0) return 0;
  return four_state_rates(lines, lambda_p, nu, 0.5, pol, mass, opt).average * move_time;
}

double find_zero_shift_wavelength(const std::vector<AtomicLine>& lines, Channel ch, double lo,
                                  double hi, const ModelOptions& opt) {
  if (!(lo > 0) || !(hi > lo)) throw PhotophysicsError("bracket must satisfy 0 < lo < hi");
  auto f = [&](double l) { return evaluate(lines, l, ch, opt).shift_hz; };
  double flo = f(lo), fhi = f(hi);
  if (flo == 0) return lo;
  if (fhi == 0) return hi;
  if ((flo > 0) == (fhi > 0)) throw PhotophysicsError("no sign change of the light shift in bracket");
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0) return mid;
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<ScanRow> scan(const std::vector<AtomicLine>& lines, const ScanRequest& req,
                          const ModelOptions& opt) {
  if (!(req.lo_nm > 0) || !(req.hi_nm > req.lo_nm)) throw PhotophysicsError("empty scan range");
  if (!(req.step_nm > 0)) throw PhotophysicsError("scan step must be positive");
  const auto count = static_cast<std::size_t>(std::floor((req.hi_nm - req.lo_nm) / req.step_nm + 1e-9)) + 1;
  std::vector<double> lambda(count), omega(count), shift(count), scatter(count);
  std::vector<double> grid_nm(count);
  for (std::size_t i = 0; i < count; ++i) {
    // snap to 1e-9 nm so grid points print cleanly
    grid_nm[i] = std::round((req.lo_nm + static_cast<double>(i) * req.step_nm) * 1e9) / 1e9;
    lambda[i] = grid_nm[i] * 1e-9;
    omega[i] = omega_of(lambda[i]);
  }
  const auto terms = terms_for(lines, req.channel);
  kernels::active().dipole_sum(terms.data(), terms.size(), omega.data(), count, shift.data(),
                               scatter.data());
  std::vector<ScanRow> rows(count);
  for (std::size_t i = 0; i < count; ++i) {
    ScanRow& r = rows[i];
    r.lambda_nm = grid_nm[i];
    if (in_guard(lines, omega[i], opt)) {
      r.skipped = true;
      continue;
    }
    r.shift_hz = shift[i] * req.reference_intensity;
    double magnitude = 0;
    for (const auto& t : terms)
      magnitude += std::abs(t.shift_coef * (1 / (t.omega0 - omega[i]) + 1 / (t.omega0 + omega[i])));
    if (std::abs(shift[i]) <= kUntrappableRatio * magnitude || shift[i] == 0) {
      r.trappable = false;
      continue;
    }
    const double depth_hz = trap_depth_for_frequency(req.nu, req.mass, lambda[i]) / kPlanck;
    double rate = scatter[i] * depth_hz / std::abs(shift[i]);
    if (shift[i] > 0) rate *= blue_suppression_factor({req.nu, req.mass, lambda[i]});
    r.scatter = rate;
  }
  return rows;
}

std::string scan_csv(const std::vector<ScanRow>& rows) {
  std::ostringstream os;
  os << "lambda_nm,shift_Hz,scatter_per_s\n";
  for (const auto& r : rows) {
    os << detail::format_double(r.lambda_nm) << ',';
    if (r.skipped) {
      os << "skipped,skipped\n";
      continue;
    }
    os << detail::format_double(r.shift_hz) << ',';
    if (r.trappable)
      os << detail::format_double(r.scatter) << '\n';
    else
      os << "untrappable\n";
  }
  return os.str();
}

}  // namespace globalq::photo
