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

// Two-level sum model (with counter-rotating terms) for light shifts and
// photon scattering of the qubit and pointer state classes. SI units unless a
// name says otherwise.

#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace globalq::photo {

inline constexpr double kSpeedOfLight = 299792458.0;
inline constexpr double kHbar = 1.054571817e-34;
inline constexpr double kPlanck = 6.62607015e-34;
inline constexpr double kAtomicMassUnit = 1.66053906660e-27;
inline constexpr double kMassRb87 = 86.909180527 * kAtomicMassUnit;

enum class Polarization { SigmaPlus, SigmaMinus, Pi };
enum class StateClass { Qubit, Pointer };

std::string_view to_string(Polarization p);
std::string_view to_string(StateClass c);
Polarization parse_polarization(std::string_view s);  ///< "sigma+", "sigma-", "pi"
StateClass parse_state_class(std::string_view s);     ///< "qubit", "pointer"

struct AtomicLine {
  std::string label;
  double omega0 = 0;  ///< rad/s
  double gamma = 0;   ///< rad/s
  double s_qubit = 0;
  double s_sigma_plus = 0;
  double s_sigma_minus = 0;
  double s_pi = 0;

  double wavelength() const;  ///< m
  /// Qubit strengths ignore the polarization.
  double strength(Polarization p, StateClass c) const;
};

class PhotophysicsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// `LINE <label> <wavelength_nm> <gamma_MHz> <s_qubit> <s_ptr_sigma+> <s_ptr_sigma-> <s_pi>`;
/// gamma_MHz is Gamma/2pi. '#' comments.
std::vector<AtomicLine> parse_atomic_data(std::string_view text);
std::vector<AtomicLine> load_atomic_data(const std::filesystem::path& path);
/// Lines whose label starts with `prefix` ("5p", "6p").
std::vector<AtomicLine> select_lines(const std::vector<AtomicLine>& lines, std::string_view prefix);

struct ModelOptions {
  double guard_band_hz = 1e9;
};

struct Channel {
  Polarization polarization = Polarization::SigmaPlus;
  StateClass state_class = StateClass::Qubit;
};

/// Light shift in Hz (energy / h; negative = attractive).
double light_shift(const std::vector<AtomicLine>& lines, double lambda, Channel ch,
                   double intensity, const ModelOptions& opt = {});
/// Photon scattering rate, s^-1: sum over lines of Gamma |U_line| / (hbar |w0 - w|).
double scattering_rate(const std::vector<AtomicLine>& lines, double lambda, Channel ch,
                       double intensity, const ModelOptions& opt = {});

struct TrapContext {
  double nu = 1e6;         ///< Hz
  double mass = kMassRb87; ///< kg
  double lambda = 0;       ///< m
  double ground_state_length() const;  ///< a0 = sqrt(hbar / (m 2 pi nu))
};

/// Standing-wave well depth (J) giving trap frequency nu: nu = (2/lambda) sqrt(U0/(2m)).
double trap_depth_for_frequency(double nu, double mass, double lambda);
/// Inverse relation, Hz.
double trap_frequency_for_depth(double depth, double mass, double lambda);

/// W/m^2 such that |light shift| equals the depth for nu. Throws when the net
/// shift is below 1e-3 of the summed line magnitudes.
double intensity_for_trap_frequency(const std::vector<AtomicLine>& lines, double lambda, Channel ch,
                                    double nu, double mass = kMassRb87,
                                    const ModelOptions& opt = {});

double blue_suppression_factor(const TrapContext& ctx);

/// Scattering of the class trapped by its own lattice at nu; the blue factor
/// applies when the net shift is repulsive (atoms sit at intensity minima).
double trapped_scattering_rate(const std::vector<AtomicLine>& lines, double lambda, Channel ch,
                               double nu, double mass = kMassRb87, const ModelOptions& opt = {});

struct FourStateRates {
  double intensity = 0;     ///< pointer lattice peak, W/m^2
  double qubit_rate = 0;    ///< at qubit_intensity_fraction of the peak
  double pointer_rate = 0;  ///< at the peak
  double average = 0;       ///< (2 qubit + 2 pointer) / 4
};

/// Rates under the pointer lattice at lambda_p trapping the pointer
/// (polarization `pol`) at nu.
FourStateRates four_state_rates(const std::vector<AtomicLine>& lines, double lambda_p, double nu,
                                double qubit_intensity_fraction = 1.0,
                                Polarization pol = Polarization::SigmaPlus,
                                double mass = kMassRb87, const ModelOptions& opt = {});

/// Probability of one emission during a move: four-state average with the
/// qubits at half the peak intensity, times move_time.
double move_emission_probability(const std::vector<AtomicLine>& lines, double lambda_p, double nu,
                                 double move_time, Polarization pol = Polarization::SigmaPlus,
                                 double mass = kMassRb87, const ModelOptions& opt = {});

/// Bisection root of the light shift to 1e-4 nm. Throws without a sign change.
double find_zero_shift_wavelength(const std::vector<AtomicLine>& lines, Channel ch, double lo,
                                  double hi, const ModelOptions& opt = {});

struct ScanRow {
  double lambda_nm = 0;
  bool skipped = false;  ///< inside a guard band
  double shift_hz = 0;   ///< at the reference intensity
  double scatter = 0;    ///< at the trap intensity for nu, blue factor when repulsive
  bool trappable = true;
};

struct ScanRequest {
  double lo_nm = 0;
  double hi_nm = 0;
  double step_nm = 0;
  Channel channel;
  double nu = 1e6;
  double mass = kMassRb87;
  double reference_intensity = 1e8;  ///< W/m^2 for the shift column
};

/// Batched through the dispatched dipole kernel.
std::vector<ScanRow> scan(const std::vector<AtomicLine>& lines, const ScanRequest& req,
                          const ModelOptions& opt = {});
std::string scan_csv(const std::vector<ScanRow>& rows);

}  // namespace globalq::photo
