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
#include <random>

#include "diracsim/errors.h"
#include "gtest/gtest.h"
#include "test_util.h"

using namespace diracsim;
using diracsim::testing::max_diff;

namespace {

const CircuitParams kDefaults;

const DressedBasis& default_basis() {
  static const DressedBasis b = dressed_basis(kDefaults);
  return b;
}

// Lowest six levels for kappa = -3 g, solved by hand.
std::vector<double> closed_form_low_six(double w0, double g) {
  return {0.0, w0 - g, w0 + g, 2 * w0 - 4 * g, 2 * w0 - 3 * g, 2 * w0 + g};
}

}  // namespace

TEST(circuit, ladder_operators) {
  const ComplexMatrix a = lowering_a();
  const ComplexMatrix b = lowering_b();
  EXPECT_EQ(a(bare_index(0, 2), bare_index(1, 2)), Complex(1.0));
  EXPECT_NEAR(a(bare_index(1, 0), bare_index(2, 0)).real(), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(b(bare_index(2, 1), bare_index(2, 2)).real(), std::sqrt(2.0), 1e-15);
  EXPECT_LT(commutator(a, b).max_abs(), 1e-15);
  EXPECT_LT(max_diff(a.adjoint() * a + b.adjoint() * b, total_number()), 1e-15);
}

TEST(circuit, params_validation) {
  EXPECT_THROW((CircuitParams{5.0, 10.0, 100.0}.validate()), InvalidInput);
  EXPECT_THROW((CircuitParams{0.0, -300.0, 100.0}.validate()), InvalidInput);
  EXPECT_THROW((CircuitParams{5.0, -300.0, -1.0}.validate()), InvalidInput);
  EXPECT_FALSE(kDefaults.weakly_anharmonic());
  EXPECT_TRUE((CircuitParams{5.0, -50.0, 100.0}.weakly_anharmonic()));
}

TEST(circuit, bare_hamiltonian_diagonal) {
  const ComplexMatrix h = build_bare_hamiltonian(kDefaults).matrix();
  EXPECT_NEAR(h(bare_index(1, 1), bare_index(1, 1)).real() / kTwoPi, 10000.0, 1e-9);
  EXPECT_NEAR(h(bare_index(2, 0), bare_index(2, 0)).real() / kTwoPi, 9700.0, 1e-9);
  EXPECT_NEAR(h(bare_index(2, 2), bare_index(2, 2)).real() / kTwoPi, 19400.0, 1e-9);
  EXPECT_NEAR(h(bare_index(0, 1), bare_index(1, 0)).real() / kTwoPi, 100.0, 1e-12);
}

TEST(circuit, closed_form_spectrum) {
  for (const auto& [w0, g] : std::vector<std::pair<double, double>>{{5000.0, 100.0}, {4500.0, 60.0}}) {
    const CircuitParams p{w0 / 1000.0, -3.0 * g, g};
    const std::vector<double> e = dressed_basis(p).all_energies_mhz();
    const std::vector<double> want = closed_form_low_six(w0, g);
    for (std::size_t k = 0; k < 6; ++k) {
      EXPECT_NEAR(e[k], want[k], 1e-10 * std::max(1.0, want[k])) << "level " << k;
    }
  }
}

TEST(circuit, diamond_structure) {
  const DressedBasis& b = default_basis();
  EXPECT_NEAR(b.diamond_energies_mhz[2] - b.diamond_energies_mhz[1], 200.0, 1e-6);
  EXPECT_NEAR(b.diamond_energies_mhz[3] - 10000.0, 100.0, 1e-6);
  EXPECT_NEAR(b.min_transition_separation_mhz(), 100.0, 1e-6);
  const std::array<double, 4> f{4900.0, 5100.0, 5200.0, 5000.0};
  for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(b.transition_frequencies_mhz[k], f[k], 1e-6);
  ASSERT_EQ(b.spectator_states.size(), 5u);
  EXPECT_EQ(b.spectator_excitations, (std::vector<std::size_t>{2, 2, 3, 3, 4}));
}

TEST(circuit, dressed_states_are_orthonormal_eigenvectors) {
  const DressedBasis& b = default_basis();
  std::vector<StateVector> all = b.diamond_states;
  all.insert(all.end(), b.spectator_states.begin(), b.spectator_states.end());
  std::vector<double> energies(b.diamond_energies_mhz.begin(), b.diamond_energies_mhz.end());
  energies.insert(energies.end(), b.spectator_energies_mhz.begin(), b.spectator_energies_mhz.end());
  const ComplexMatrix h = build_bare_hamiltonian(kDefaults).matrix();
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = 0; j < all.size(); ++j) {
      EXPECT_NEAR(std::abs(inner(all[i], all[j])), i == j ? 1.0 : 0.0, 1e-12);
    }
    // H v = E v.
    double residual = 0.0;
    std::size_t largest = 0;
    for (std::size_t r = 0; r < kCircuitDim; ++r) {
      Complex hv = 0.0;
      for (std::size_t c = 0; c < kCircuitDim; ++c) hv += h(r, c) * all[i][c];
      residual = std::max(residual, std::abs(hv - kTwoPi * energies[i] * all[i][r]));
      if (std::abs(all[i][r]) > std::abs(all[i][largest]) + 1e-9) largest = r;
    }
    EXPECT_LT(residual, 1e-8);
    EXPECT_GT(all[i][largest].real(), 0.0);
    EXPECT_NEAR(all[i][largest].imag(), 0.0, 1e-15);
  }
}

TEST(circuit, weak_coupling_limit) {
  const DressedBasis b = dressed_basis(CircuitParams{5.0, -300.0, 0.01});
  EXPECT_NEAR(b.transition_frequencies_mhz[0], 5000.0 - 0.01, 1e-6);
  EXPECT_NEAR(b.transition_frequencies_mhz[1], 5000.0 + 0.01, 1e-6);
  // The top two-excitation level tends to the bare |11>.
  EXPECT_GT(b.diamond_states[3].populations()[bare_index(1, 1)], 1.0 - 1e-6);
  EXPECT_NEAR(b.diamond_states[0].populations()[0], 1.0, 1e-15);
}

TEST(circuit, degenerate_spectrum_is_rejected) {
  EXPECT_THROW(dressed_basis(CircuitParams{5.0, -300.0, 0.0}), DegenerateSpectrum);
  EXPECT_THROW(dressed_basis(CircuitParams{5.0, 0.0, 0.0}), DegenerateSpectrum);
}

TEST(circuit, drive_hamiltonian) {
  DriveProgram prog;
  prog.tones[0] = {Complex(2.0, 1.0), Complex(0.0), 4900.0};
  prog.tones[1] = {Complex(0.0), Complex(0.0), 5100.0};
  prog.tones[2] = {Complex(0.0), Complex(0.0), 5200.0};
  prog.tones[3] = {Complex(0.0), Complex(0.0), 5000.0};
  const double t = 0.0123;
  const Complex omega = Complex(2.0, 1.0) * std::polar(1.0, -kTwoPi * 4900.0 * t);
  EXPECT_LT(std::abs(prog.field_mhz(t) - omega), 1e-12);
  const ComplexMatrix h = build_drive_hamiltonian(prog, t).matrix();
  EXPECT_LT(std::abs(h(bare_index(1, 0), bare_index(0, 0)) - kTwoPi * omega), 1e-10);
  // Acts on the first oscillator only.
  EXPECT_EQ(h(bare_index(0, 1), bare_index(0, 0)), Complex(0.0));
  prog.tones[2].frequency_mhz = -1.0;
  EXPECT_THROW(prog.validate(), InvalidInput);
}

TEST(circuit, rotating_frame_transform) {
  const HermitianOperator h0 = build_bare_hamiltonian(kDefaults);
  const HermitianOperator rot = to_rotating_frame(h0, 5000.0, 0.031);
  for (std::size_t i = 0; i < kCircuitDim; ++i) {
    EXPECT_NEAR(rot.matrix()(i, i).real(),
                h0.matrix()(i, i).real() - kTwoPi * 5000.0 * static_cast<double>(excitations(i)), 1e-9);
  }
  // Number-conserving couplings are untouched.
  EXPECT_LT(std::abs(rot.matrix()(bare_index(0, 1), bare_index(1, 0)) - h0.matrix()(bare_index(0, 1), bare_index(1, 0))),
            1e-12);
  std::mt19937_64 rng(3);
  const StateVector psi = diracsim::testing::random_state(kCircuitDim, rng);
  EXPECT_LT(max_diff(rotating_to_lab(lab_to_rotating(psi, 5000.0, 0.2), 5000.0, 0.2), psi), 1e-14);
}

TEST(circuit, calibrated_mapping_reproduces_dirac_couplings) {
  const DiracParams p{3.0, {2.0, -1.0, 0.5}};
  const DressedBasis& b = default_basis();
  const std::array<Complex, 4> m = drive_matrix_elements(b);
  const std::array<Complex, 4> want = dirac_couplings(p);
  const DriveProgram cal = dirac_drive_mapping(p, b, DriveMode::kCalibrated);
  const DriveProgram naive = dirac_drive_mapping(p, b, DriveMode::kNaive);
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_LT(std::abs(cal.tones[k].amplitude_mhz * m[k] - want[k]), 1e-12);
    EXPECT_LT(std::abs(naive.tones[k].amplitude_mhz * std::abs(m[0]) - want[k]), 1e-12);
    EXPECT_EQ(cal.tones[k].frequency_mhz, b.transition_frequencies_mhz[k]);
  }
  EXPECT_LT(std::abs(want[0] - Complex(2.0, -1.0)), 1e-14);
  EXPECT_LT(std::abs(want[1] - Complex(0.5, 3.0)), 1e-14);
}

TEST(circuit, chirped_mapping_ramps_amplitudes) {
  const ChirpSchedule chirp;
  const DressedBasis& b = default_basis();
  const DiracParams base{2.0, {0.0, 0.0, 0.0}};
  const DriveProgram prog = dirac_drive_mapping(base, b, DriveMode::kCalibrated, chirp);
  const double t = 0.4 * chirp.duration_us();
  const std::array<Complex, 4> want = dirac_couplings(chirp.apply(base, t));
  const std::array<Complex, 4> m = drive_matrix_elements(b);
  for (std::size_t k = 0; k < 4; ++k) EXPECT_LT(std::abs(prog.tones[k].amplitude_at(t) * m[k] - want[k]), 1e-9);
}

TEST(circuit, zero_drive_parks_in_ground) {
  const DressedBasis& b = default_basis();
  const DriveProgram prog = dirac_drive_mapping(DiracParams{}, b, DriveMode::kCalibrated);
  const Trajectory traj = simulate_circuit(kDefaults, prog, b.diamond_states[0], TimeGrid{0.0, 0.1, 11});
  const DiamondProjection proj = project_to_diamond(traj, b);
  for (std::size_t i = 0; i < proj.times.size(); ++i) {
    EXPECT_NEAR(proj.populations[i][0], 1.0, 1e-10);
    EXPECT_LE(proj.leakage[i], 1e-10);
  }
}

TEST(circuit, lab_and_rotating_frames_agree) {
  const DressedBasis& b = default_basis();
  const DriveProgram prog = dirac_drive_mapping(DiracParams{5.0, {5.0, 0.0, 0.0}}, b, DriveMode::kCalibrated);
  const TimeGrid grid{0.0, 0.02, 11};
  CircuitSimulationOptions rot;
  rot.propagation.tolerance = 1e-10;
  CircuitSimulationOptions lab = rot;
  lab.frame = Frame::kLab;
  const Trajectory a = simulate_circuit(kDefaults, prog, b.diamond_states[0], grid, rot);
  const Trajectory c = simulate_circuit(kDefaults, prog, b.diamond_states[0], grid, lab);
  for (std::size_t i = 0; i < grid.n_samples; ++i) {
    for (std::size_t k = 0; k < kCircuitDim; ++k) EXPECT_NEAR(a.populations[i][k], c.populations[i][k], 1e-8);
  }
}

TEST(circuit, projection_cases) {
  const DressedBasis& b = default_basis();
  Trajectory traj;
  traj.times = {0.0, 1.0, 2.0};
  std::vector<Complex> v(kCircuitDim);
  for (std::size_t r = 0; r < kCircuitDim; ++r) {
    v[r] = 0.6 * b.diamond_states[1][r] + Complex(0.0, 0.48) * b.diamond_states[3][r] + 0.64 * b.spectator_states[2][r];
  }
  traj.states = {b.diamond_states[0], b.spectator_states[0], StateVector::normalized(v)};
  const DiamondProjection proj = project_to_diamond(traj, b);
  EXPECT_NEAR(proj.populations[0][0], 1.0, 1e-12);
  EXPECT_NEAR(proj.leakage[0], 0.0, 1e-12);
  for (double p : proj.populations[1]) EXPECT_NEAR(p, 0.0, 1e-12);
  EXPECT_NEAR(proj.leakage[1], 1.0, 1e-12);
  // 0.36 + 0.2304 + 0.4096 = 1.
  EXPECT_NEAR(proj.populations[2][1], 0.36, 1e-10);
  EXPECT_NEAR(proj.populations[2][3], 0.2304, 1e-10);
  EXPECT_NEAR(proj.leakage[2], 0.4096, 1e-10);
  EXPECT_NEAR(proj.max_leakage(), 1.0, 1e-12);
}

TEST(circuit, calibrated_drive_tracks_ideal_at_small_amplitude) {
  const DressedBasis& b = default_basis();
  const DiracParams p{1.0, {1.0, 0.0, 0.0}};
  const TimeGrid grid{0.0, 0.5, 101};
  const DriveProgram prog = dirac_drive_mapping(p, b, DriveMode::kCalibrated);
  const DiamondProjection proj = project_to_diamond(simulate_circuit(kDefaults, prog, b.diamond_states[0], grid), b);
  const Trajectory ideal = evolve_static(build_dirac_hamiltonian(p), level_state(0), grid);
  const DeviationSummary dev = compare_to_ideal(proj, ideal);
  EXPECT_LE(dev.rms, 0.01);
  EXPECT_LE(proj.max_leakage(), 0.002);
  // The naive mode gets the loop signs wrong and does much worse.
  const DriveProgram naive = dirac_drive_mapping(p, b, DriveMode::kNaive);
  const DeviationSummary bad =
      compare_to_ideal(project_to_diamond(simulate_circuit(kDefaults, naive, b.diamond_states[0], grid), b), ideal);
  EXPECT_GT(bad.rms, 5.0 * dev.rms);
}
