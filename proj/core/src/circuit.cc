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

#include "diracsim/circuit.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "diracsim/errors.h"

namespace diracsim {
namespace {

// Energies closer than this (MHz) make the diamond labels ambiguous.
constexpr double kDegeneracyToleranceMhz = 1e-6;

ComplexMatrix single_lowering() {
  ComplexMatrix a = ComplexMatrix::zeros(kTransmonLevels, kTransmonLevels);
  for (std::size_t n = 1; n < kTransmonLevels; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

ComplexMatrix eye3() { return ComplexMatrix::identity(kTransmonLevels); }

// Largest component real positive; ties go to the lowest bare index.
StateVector fix_phase(std::vector<Complex> v) {
  double largest = 0.0;
  for (const Complex& c : v) largest = std::max(largest, std::abs(c));
  for (const Complex& c : v) {
    if (std::abs(c) >= largest * (1.0 - 1e-9)) {
      const Complex phase = std::conj(c) / std::abs(c);
      for (Complex& x : v) x *= phase;
      break;
    }
  }
  return StateVector::normalized(std::move(v));
}

struct DressedLevel {
  double energy_mhz;
  std::size_t block;
  StateVector state;
};

std::vector<DressedLevel> diagonalize_blocks(const HermitianOperator& h0) {
  std::vector<DressedLevel> levels;
  for (std::size_t n = 0; n <= 2 * (kTransmonLevels - 1); ++n) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < kCircuitDim; ++i) {
      if (excitations(i) == n) members.push_back(i);
    }
    ComplexMatrix block(members.size(), members.size());
    for (std::size_t r = 0; r < members.size(); ++r) {
      for (std::size_t c = 0; c < members.size(); ++c) block(r, c) = h0.matrix()(members[r], members[c]);
    }
    const EigenDecomposition eig = eigh(HermitianOperator(std::move(block)));
    for (std::size_t k = 0; k < members.size(); ++k) {
      std::vector<Complex> v(kCircuitDim);
      for (std::size_t r = 0; r < members.size(); ++r) v[members[r]] = eig.eigenvectors(r, k);
      levels.push_back({eig.eigenvalues[k] / kTwoPi, n, fix_phase(std::move(v))});
    }
  }
  return levels;
}

Complex matrix_element(const StateVector& bra, const ComplexMatrix& m, const StateVector& ket) {
  Complex acc = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Complex row = 0.0;
    for (std::size_t c = 0; c < m.cols(); ++c) row += m(r, c) * ket[c];
    acc += std::conj(bra[r]) * row;
  }
  return acc;
}

double frame_frequency(const CircuitParams& params, const CircuitSimulationOptions& options) {
  return options.frame_mhz > 0.0 ? options.frame_mhz : params.omega0_ghz * 1000.0;
}

}  // namespace

void CircuitParams::validate() const {
  if (!std::isfinite(omega0_ghz) || !std::isfinite(kappa_mhz) || !std::isfinite(g_mhz)) {
    throw InvalidInput("CircuitParams: non-finite parameters");
  }
  if (!(omega0_ghz > 0.0)) throw InvalidInput("CircuitParams: omega0 must be > 0");
  if (kappa_mhz > 0.0) throw InvalidInput("CircuitParams: anharmonicity must be <= 0");
  if (g_mhz < 0.0) throw InvalidInput("CircuitParams: coupling must be >= 0");
}

ComplexMatrix lowering_a() {
  static const ComplexMatrix a = kron(single_lowering(), eye3());
  return a;
}

ComplexMatrix lowering_b() {
  static const ComplexMatrix b = kron(eye3(), single_lowering());
  return b;
}

ComplexMatrix total_number() {
  ComplexMatrix n = ComplexMatrix::zeros(kCircuitDim, kCircuitDim);
  for (std::size_t i = 0; i < kCircuitDim; ++i) n(i, i) = static_cast<double>(excitations(i));
  return n;
}

HermitianOperator build_bare_hamiltonian(const CircuitParams& params) {
  params.validate();
  const double w0 = kTwoPi * params.omega0_ghz * 1000.0;
  const double kappa = kTwoPi * params.kappa_mhz;
  const double g = kTwoPi * params.g_mhz;
  ComplexMatrix h = ComplexMatrix::zeros(kCircuitDim, kCircuitDim);
  for (std::size_t na = 0; na < kTransmonLevels; ++na) {
    for (std::size_t nb = 0; nb < kTransmonLevels; ++nb) {
      const double a = static_cast<double>(na);
      const double b = static_cast<double>(nb);
      h(bare_index(na, nb), bare_index(na, nb)) = w0 * (a + b) + 0.5 * kappa * (a * (a - 1.0) + b * (b - 1.0));
    }
  }
  const ComplexMatrix a = lowering_a();
  const ComplexMatrix b = lowering_b();
  h += g * (a.adjoint() * b + b.adjoint() * a);
  return HermitianOperator(std::move(h));
}

std::vector<double> DressedBasis::all_energies_mhz() const {
  std::vector<double> e(diamond_energies_mhz.begin(), diamond_energies_mhz.end());
  e.insert(e.end(), spectator_energies_mhz.begin(), spectator_energies_mhz.end());
  std::sort(e.begin(), e.end());
  return e;
}

double DressedBasis::min_transition_separation_mhz() const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) {
      best = std::min(best, std::abs(transition_frequencies_mhz[i] - transition_frequencies_mhz[j]));
    }
  }
  return best;
}

DressedBasis dressed_basis(const CircuitParams& params) {
  std::vector<DressedLevel> levels = diagonalize_blocks(build_bare_hamiltonian(params));
  // Block layout after diagonalization: 1 + 2 + 3 + 2 + 1 levels, each block ascending.
  const DressedLevel& ground = levels[0];
  const DressedLevel& lower = levels[1];
  const DressedLevel& upper = levels[2];
  const DressedLevel& top = levels[5];
  if (upper.energy_mhz - lower.energy_mhz <= kDegeneracyToleranceMhz) {
    throw DegenerateSpectrum("dressed_basis: single-excitation doublet is degenerate");
  }
  if (top.energy_mhz - levels[4].energy_mhz <= kDegeneracyToleranceMhz) {
    throw DegenerateSpectrum("dressed_basis: highest two-excitation level is degenerate");
  }

  DressedBasis basis;
  const std::array<const DressedLevel*, 4> diamond{&ground, &lower, &upper, &top};
  for (std::size_t k = 0; k < 4; ++k) {
    basis.diamond_states.push_back(diamond[k]->state);
    basis.diamond_energies_mhz[k] = diamond[k]->energy_mhz;
  }
  for (std::size_t i : {3, 4, 6, 7, 8}) {
    for (double e : basis.diamond_energies_mhz) {
      if (std::abs(levels[i].energy_mhz - e) <= kDegeneracyToleranceMhz) {
        throw DegenerateSpectrum("dressed_basis: spectator level coincides with a diamond level at " +
                                 std::to_string(e) + " MHz");
      }
    }
    basis.spectator_states.push_back(levels[i].state);
    basis.spectator_energies_mhz.push_back(levels[i].energy_mhz);
    basis.spectator_excitations.push_back(levels[i].block);
  }
  for (std::size_t k = 0; k < 4; ++k) {
    const auto [i, j] = kDiamondTransitions[k];
    basis.transition_frequencies_mhz[k] = basis.diamond_energies_mhz[j] - basis.diamond_energies_mhz[i];
  }
  return basis;
}

const char* to_string(DriveMode mode) {
  switch (mode) {
    case DriveMode::kNaive:
      return "naive";
    case DriveMode::kCalibrated:
      return "calibrated";
  }
  return "unknown";
}

void DriveProgram::validate() const {
  for (const Tone& t : tones) {
    if (!std::isfinite(t.amplitude_mhz.real()) || !std::isfinite(t.amplitude_mhz.imag()) ||
        !std::isfinite(t.slope_mhz_per_us.real()) || !std::isfinite(t.slope_mhz_per_us.imag())) {
      throw InvalidInput("DriveProgram: non-finite tone amplitude");
    }
    if (!(t.frequency_mhz > 0.0) || !std::isfinite(t.frequency_mhz)) {
      throw InvalidInput("DriveProgram: tone frequency must be finite and > 0");
    }
  }
}

Complex DriveProgram::field_mhz(double t_us) const {
  Complex omega = 0.0;
  for (const Tone& tone : tones) {
    omega += tone.amplitude_at(t_us) * std::polar(1.0, -kTwoPi * tone.frequency_mhz * t_us);
  }
  return omega;
}

namespace {

// h += Omega a^dagger + Omega^* a, touching only the nonzero entries of a.
void add_drive(ComplexMatrix& h, Complex omega) {
  for (std::size_t na = 1; na < kTransmonLevels; ++na) {
    const double amp = std::sqrt(static_cast<double>(na));
    for (std::size_t nb = 0; nb < kTransmonLevels; ++nb) {
      const std::size_t up = bare_index(na, nb);
      const std::size_t down = bare_index(na - 1, nb);
      h(up, down) += amp * omega;
      h(down, up) += amp * std::conj(omega);
    }
  }
}

}  // namespace

HermitianOperator build_drive_hamiltonian(const DriveProgram& program, double t_us) {
  ComplexMatrix h = ComplexMatrix::zeros(kCircuitDim, kCircuitDim);
  add_drive(h, kTwoPi * program.field_mhz(t_us));
  return HermitianOperator::trusted(std::move(h));
}

HermitianOperator to_rotating_frame(const HermitianOperator& h_lab, double frame_mhz, double t_us) {
  if (h_lab.dim() != kCircuitDim) throw InvalidInput("to_rotating_frame: expected a 9-level operator");
  const double wf = kTwoPi * frame_mhz;
  ComplexMatrix h = h_lab.matrix();
  for (std::size_t j = 0; j < kCircuitDim; ++j) {
    for (std::size_t k = 0; k < kCircuitDim; ++k) {
      const double dn = static_cast<double>(excitations(j)) - static_cast<double>(excitations(k));
      if (dn != 0.0 && h(j, k) != Complex(0.0)) h(j, k) *= std::polar(1.0, wf * t_us * dn);
    }
    h(j, j) -= wf * static_cast<double>(excitations(j));
  }
  return HermitianOperator::trusted(std::move(h));
}

StateVector lab_to_rotating(const StateVector& psi_lab, double frame_mhz, double t_us) {
  if (psi_lab.dim() != kCircuitDim) throw InvalidInput("lab_to_rotating: expected a 9-level state");
  std::vector<Complex> v(psi_lab.amplitudes().begin(), psi_lab.amplitudes().end());
  for (std::size_t j = 0; j < kCircuitDim; ++j) {
    v[j] *= std::polar(1.0, kTwoPi * frame_mhz * t_us * static_cast<double>(excitations(j)));
  }
  return StateVector(std::move(v));
}

StateVector rotating_to_lab(const StateVector& psi_rot, double frame_mhz, double t_us) {
  return lab_to_rotating(psi_rot, -frame_mhz, t_us);
}

std::array<Complex, 4> dirac_couplings(const DiracParams& params) {
  const HermitianOperator h = build_dirac_hamiltonian(params);
  std::array<Complex, 4> out{};
  for (std::size_t k = 0; k < 4; ++k) {
    const auto [i, j] = kDiamondTransitions[k];
    out[k] = h.matrix()(index_of_level(j), index_of_level(i)) / kTwoPi;
  }
  return out;
}

std::array<Complex, 4> drive_matrix_elements(const DressedBasis& basis) {
  const ComplexMatrix raise = lowering_a().adjoint();
  std::array<Complex, 4> out{};
  for (std::size_t k = 0; k < 4; ++k) {
    const auto [i, j] = kDiamondTransitions[k];
    out[k] = matrix_element(basis.diamond_states[j], raise, basis.diamond_states[i]);
  }
  return out;
}

DriveProgram dirac_drive_mapping(const DiracParams& params, const DressedBasis& basis, DriveMode mode,
                                 const std::optional<ChirpSchedule>& chirp) {
  params.validate();
  DiracParams start = params;
  std::array<Complex, 4> per_unit{};
  if (chirp) {
    chirp->validate();
    start = chirp->apply(params, 0.0);
    // The couplings are linear in each parameter, so a unit value gives the derivative.
    DiracParams unit;
    if (chirp->target == ChirpTarget::kMass) {
      unit.mass_mhz = 1.0;
    } else {
      unit.momentum_mhz[static_cast<std::size_t>(chirp->target)] = 1.0;
    }
    per_unit = dirac_couplings(unit);
  }

  const std::array<Complex, 4> targets = dirac_couplings(start);
  const std::array<Complex, 4> elements = drive_matrix_elements(basis);
  DriveProgram program;
  for (std::size_t k = 0; k < 4; ++k) {
    const Complex scale = mode == DriveMode::kCalibrated ? elements[k] : Complex(std::abs(elements[0]));
    if (std::abs(scale) < 1e-12) {
      throw DegenerateDrive("dirac_drive_mapping: transition " + std::to_string(k) + " is not driven by a^dagger");
    }
    Tone& tone = program.tones[k];
    tone.amplitude_mhz = targets[k] / scale;
    if (chirp) tone.slope_mhz_per_us = per_unit[k] * chirp->slope_mhz_per_us() / scale;
    tone.frequency_mhz = basis.transition_frequencies_mhz[k];
  }
  return program;
}

Trajectory simulate_circuit(const CircuitParams& params, const DriveProgram& program, const StateVector& psi0,
                            const TimeGrid& grid, const CircuitSimulationOptions& options,
                            PropagationReport* report) {
  params.validate();
  program.validate();
  grid.validate();
  if (psi0.dim() != kCircuitDim) throw InvalidInput("simulate_circuit: expected a 9-level initial state");
  const HermitianOperator h0 = build_bare_hamiltonian(params);
  const auto lab = [&h0, &program](double t) {
    ComplexMatrix h = h0.matrix();
    add_drive(h, kTwoPi * program.field_mhz(t));
    return HermitianOperator::trusted(std::move(h));
  };
  if (options.frame == Frame::kLab) return propagate(lab, psi0, grid, options.propagation, {}, report);

  const double wf = frame_frequency(params, options);
  const auto rotating = [&lab, wf](double t) { return to_rotating_frame(lab(t), wf, t); };
  Trajectory traj =
      propagate(rotating, lab_to_rotating(psi0, wf, grid.t_start), grid, options.propagation, {}, report);
  // Bare populations are frame invariant; only the phases change.
  for (std::size_t i = 0; i < traj.size(); ++i) traj.states[i] = rotating_to_lab(traj.states[i], wf, traj.times[i]);
  return traj;
}

double DiamondProjection::max_leakage() const {
  double worst = 0.0;
  for (double l : leakage) worst = std::max(worst, l);
  return worst;
}

DiamondProjection project_to_diamond(const Trajectory& traj, const DressedBasis& basis) {
  if (basis.diamond_states.size() != 4) throw InvalidInput("project_to_diamond: basis has no diamond");
  DiamondProjection out;
  out.times = traj.times;
  for (const StateVector& psi : traj.states) {
    if (psi.dim() != kCircuitDim) throw InvalidInput("project_to_diamond: expected 9-level states");
    std::array<double, 4> p{};
    double total = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
      p[k] = std::norm(inner(basis.diamond_states[k], psi));
      total += p[k];
    }
    const double leak = 1.0 - total;
    if (leak < -1e-10) throw InvalidInput("project_to_diamond: diamond populations exceed one");
    out.populations.push_back(p);
    out.leakage.push_back(std::max(leak, 0.0));
  }
  return out;
}

DeviationSummary compare_to_ideal(const DiamondProjection& circuit, const Trajectory& ideal) {
  if (circuit.populations.size() != ideal.size() || ideal.size() == 0) {
    throw InvalidInput("compare_to_ideal: sample counts differ");
  }
  DeviationSummary s;
  double sum2 = 0.0;
  for (std::size_t i = 0; i < ideal.size(); ++i) {
    const std::array<double, 4> want = level_populations(ideal.states[i]);
    for (std::size_t k = 0; k < 4; ++k) {
      const double d = circuit.populations[i][k] - want[k];
      s.max_abs = std::max(s.max_abs, std::abs(d));
      sum2 += d * d;
    }
  }
  s.rms = std::sqrt(sum2 / static_cast<double>(4 * ideal.size()));
  return s;
}

}  // namespace diracsim
