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
#include <cstddef>
#include <vector>

#include "diracsim/linalg.h"

namespace diracsim {

// Drive configuration of the diamond. Both values are ordinary
// frequencies (X/2pi) in MHz; Hamiltonian entries are angular.
struct DiracParams {
  double mass_mhz = 0.0;
  std::array<double, 3> momentum_mhz{0.0, 0.0, 0.0};

  // Throws InvalidInput on non-finite components or negative mass.
  void validate() const;
  double momentum_norm_mhz() const;
};

// Internal amplitude ordering is psi = (c0, c3, c2, c1). The permutation
// is its own inverse, so the same table maps level -> index and back.
inline constexpr std::array<std::size_t, 4> kLevelIndex{0, 3, 2, 1};

inline constexpr std::size_t index_of_level(std::size_t level) { return kLevelIndex[level]; }
inline constexpr std::size_t level_of_index(std::size_t index) { return kLevelIndex[index]; }

// |level> as a 4-dim state in internal ordering.
StateVector level_state(std::size_t level);
// P0..P3 in level order.
std::array<double, 4> level_populations(const StateVector& psi);
std::array<double, 4> level_populations(std::span<const double> internal_populations);

// Superpositions with real coefficients: |+-'>_01 = (|0> +- |1>)/sqrt2,
// |-+'>_23 = (|2> -+ |3>)/sqrt2.
StateVector plus01();
StateVector minus01();
StateVector plus23();   // (|2> + |3>)/sqrt2
StateVector minus23();  // (|2> - |3>)/sqrt2

HermitianOperator build_dirac_hamiltonian(const DiracParams& params);

// 2pi sqrt(m^2 + |p|^2), angular MHz.
double relativistic_energy(const DiracParams& params);

// exp(-i H dt) for any matrix with H^2 = E^2 I, which holds for every
// Dirac Hamiltonian. Cheaper than eigh for the chirp stepper.
UnitaryOperator dirac_propagator(const HermitianOperator& h, double dt);

struct BrightStatePair {
  StateVector bright_v;       // couples to |0>
  StateVector bright_lambda;  // couples to |3>
};

// Throws DegenerateDrive when (m, p) is all zero.
BrightStatePair bright_states(const DiracParams& params);

struct SpinVector {
  double sx = 0.0;
  double sy = 0.0;
  double sz = 0.0;

  double norm() const;
  double dot(const std::array<double, 3>& n) const { return sx * n[0] + sy * n[1] + sz * n[2]; }
};

struct SpinOperators {
  HermitianOperator x;
  HermitianOperator y;
  HermitianOperator z;
};

// Sigma_i = 1/2 I (x) sigma_i in internal ordering.
const SpinOperators& spin_operators();

SpinVector spin_expectation(const StateVector& psi);

// p . Sigma / |p|. Throws DegenerateDrive for |p| = 0.
HermitianOperator helicity_operator(const DiracParams& params);

// Spin (1/2-normalized) of a state's normalized projection onto the
// {|1>,|2>} manifold. Throws DegenerateDrive if that projection vanishes.
SpinVector manifold_spin(const StateVector& psi);

struct TextureGrid {
  std::size_t n_polar = 9;       // includes both poles
  std::size_t n_azimuthal = 16;
};

struct TexturePoint {
  double theta = 0.0;
  double phi = 0.0;
  std::array<double, 3> direction{};  // unit momentum direction
  SpinVector spin;                    // bright-state spin, 1/2-normalized
  SpinVector spin_direction;          // spin / |spin|
  double radial = 0.0;                // spin . direction
  double helicity = 0.0;              // <h> of |0>, via helicity_operator
  bool north_pole = false;            // stereographic image at infinity
  double stereo_x = 0.0;
  double stereo_y = 0.0;
};

// Bright-state spin on the shell |p| = m = shell_mhz. Poles are sampled
// once; the stereographic projection sends the south pole to the origin.
std::vector<TexturePoint> spin_texture(double shell_mhz, const TextureGrid& grid);

// Bell-state change of basis: column k holds the Bell state of internal
// index k in the |00>,|01>,|10>,|11> basis.
const UnitaryOperator& bell_transform();

struct FactoredCheck {
  bool ok = false;
  double residual = 0.0;  // ||U H U^dagger - I (x) (px sx + m sy)||_max, angular
};

// Requires p_y = p_z = 0; throws UnsupportedConfiguration otherwise.
FactoredCheck factored_check(const DiracParams& params);

}  // namespace diracsim
