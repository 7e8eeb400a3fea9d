// Copyright 2026 The diracsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "diracsim/dirac.h"
#include "diracsim/evolution.h"
#include "diracsim/linalg.h"

namespace diracsim {

// Two capacitively coupled transmons truncated at three levels each.
struct CircuitParams {
  double omega0_ghz = 5.0;    // bare 0-1 transition
  double kappa_mhz = -300.0;  // anharmonicity, < 0
  double g_mhz = 100.0;       // qubit-qubit coupling

  void validate() const;
  // |kappa| <= g: the two-excitation manifold no longer isolates |3>.
  bool weakly_anharmonic() const { return std::abs(kappa_mhz) <= g_mhz; }
};

inline constexpr std::size_t kTransmonLevels = 3;
inline constexpr std::size_t kCircuitDim = kTransmonLevels * kTransmonLevels;

// Bare product state |na nb> sits at index 3 na + nb.
inline constexpr std::size_t bare_index(std::size_t na, std::size_t nb) { return kTransmonLevels * na + nb; }
inline constexpr std::size_t excitations(std::size_t bare) {
  return bare / kTransmonLevels + bare % kTransmonLevels;
}

ComplexMatrix lowering_a();
ComplexMatrix lowering_b();
// a^dagger a + b^dagger b.
ComplexMatrix total_number();

// H0 = w0 (a'a + b'b) + k/2 (a'a'aa + b'b'bb) + g (a'b + b'a), angular MHz.
HermitianOperator build_bare_hamiltonian(const CircuitParams& params);

// Transitions of the diamond in a fixed order: 0-1, 0-2, 1-3, 2-3.
inline constexpr std::array<std::array<std::size_t, 2>, 4> kDiamondTransitions{{{0, 1}, {0, 2}, {1, 3}, {2, 3}}};

struct DressedBasis {
  std::vector<StateVector> diamond_states;     // |0>..|3>
  std::vector<StateVector> spectator_states;   // remaining five
  std::array<double, 4> diamond_energies_mhz{};
  std::vector<double> spectator_energies_mhz;
  std::vector<std::size_t> spectator_excitations;
  // f01, f02, f13, f23 in MHz, ordered as kDiamondTransitions.
  std::array<double, 4> transition_frequencies_mhz{};

  // All nine dressed energies, ascending.
  std::vector<double> all_energies_mhz() const;
  double min_transition_separation_mhz() const;
};

// Diagonalizes H0 block by block in excitation number. Dressed vectors
// carry their largest bare component real positive. Throws
// DegenerateSpectrum when the diamond labels are ambiguous.
DressedBasis dressed_basis(const CircuitParams& params);

enum class DriveMode { kNaive, kCalibrated };

const char* to_string(DriveMode mode);

struct Tone {
  Complex amplitude_mhz;
  Complex slope_mhz_per_us{0.0, 0.0};
  double frequency_mhz = 0.0;

  Complex amplitude_at(double t_us) const { return amplitude_mhz + slope_mhz_per_us * t_us; }
};

// Four-tone field Omega(t) = sum_k V_k(t) exp(-i 2pi f_k t), one tone per
// diamond transition in kDiamondTransitions order.
struct DriveProgram {
  std::array<Tone, 4> tones{};

  void validate() const;
  Complex field_mhz(double t_us) const;
};

// Omega a^dagger + Omega^* a on the first oscillator, angular MHz.
HermitianOperator build_drive_hamiltonian(const DriveProgram& program, double t_us);

// R H R^dagger - w_f N with R = exp(i w_f t N). No rotating-wave
// approximation is made.
HermitianOperator to_rotating_frame(const HermitianOperator& h_lab, double frame_mhz, double t_us);
StateVector lab_to_rotating(const StateVector& psi_lab, double frame_mhz, double t_us);
StateVector rotating_to_lab(const StateVector& psi_rot, double frame_mhz, double t_us);

// Lower-triangle couplings <j|H|i> of the Dirac Hamiltonian for each
// diamond transition, in MHz.
std::array<Complex, 4> dirac_couplings(const DiracParams& params);

// <j| a^dagger |i> for each diamond transition.
std::array<Complex, 4> drive_matrix_elements(const DressedBasis& basis);

// Tone amplitudes that reproduce the Dirac couplings. Calibrated mode
// divides each coupling by its own matrix element; naive mode uses one
// common scale, the 0-1 matrix element modulus. An optional chirp ramps
// the amplitudes linearly.
DriveProgram dirac_drive_mapping(const DiracParams& params, const DressedBasis& basis, DriveMode mode,
                                 const std::optional<ChirpSchedule>& chirp = std::nullopt);

enum class Frame { kLab, kRotating };

inline PropagationOptions magnus4_options() {
  PropagationOptions o;
  o.stepper = Stepper::kMagnus4;
  return o;
}

struct CircuitSimulationOptions {
  Frame frame = Frame::kRotating;
  // Rotating-frame frequency; omega0 when <= 0.
  double frame_mhz = 0.0;
  PropagationOptions propagation = magnus4_options();
};

// Integrates H0 + H_drive(t). psi0 and the returned states are lab-frame.
Trajectory simulate_circuit(const CircuitParams& params, const DriveProgram& program, const StateVector& psi0,
                            const TimeGrid& grid, const CircuitSimulationOptions& options = {},
                            PropagationReport* report = nullptr);

struct DiamondProjection {
  std::vector<double> times;
  std::vector<std::array<double, 4>> populations;  // P0..P3 per sample
  std::vector<double> leakage;                     // 1 - sum P

  double max_leakage() const;
};

DiamondProjection project_to_diamond(const Trajectory& traj, const DressedBasis& basis);

struct DeviationSummary {
  double max_abs = 0.0;
  double rms = 0.0;
};

// Compares per-level populations sample by sample against a 4-level
// trajectory in internal ordering.
DeviationSummary compare_to_ideal(const DiamondProjection& circuit, const Trajectory& ideal);

}  // namespace diracsim
