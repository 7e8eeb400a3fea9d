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

#include "diracsim/dirac.h"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "diracsim/errors.h"

namespace diracsim {

namespace {

constexpr Complex kI{0.0, 1.0};

StateVector from_levels(const std::array<Complex, 4>& by_level) {
  std::vector<Complex> a(4);
  for (std::size_t l = 0; l < 4; ++l) a[index_of_level(l)] = by_level[l];
  return StateVector::normalized(std::move(a));
}

// Normalized {|1>,|2>} superposition with the level-1 amplitude real
// positive (level 2 if level 1 vanishes).
StateVector manifold_state(Complex level1, Complex level2) {
  const double n = std::sqrt(std::norm(level1) + std::norm(level2));
  Complex phase = 1.0;
  if (std::abs(level1) > 1e-14 * n) {
    phase = std::conj(level1) / std::abs(level1);
  } else {
    phase = std::conj(level2) / std::abs(level2);
  }
  return from_levels({0.0, level1 * phase, level2 * phase, 0.0});
}

}  // namespace

void DiracParams::validate() const {
  if (!std::isfinite(mass_mhz)) throw InvalidInput("DiracParams: non-finite mass");
  if (mass_mhz < 0.0) throw InvalidInput("DiracParams: mass must be >= 0");
  for (double p : momentum_mhz) {
    if (!std::isfinite(p)) throw InvalidInput("DiracParams: non-finite momentum");
  }
}

double DiracParams::momentum_norm_mhz() const {
  return std::hypot(momentum_mhz[0], momentum_mhz[1], momentum_mhz[2]);
}

StateVector level_state(std::size_t level) {
  if (level >= 4) throw InvalidInput("level_state: level must be 0..3");
  return StateVector::basis(4, index_of_level(level));
}

std::array<double, 4> level_populations(std::span<const double> internal) {
  if (internal.size() != 4) throw InvalidInput("level_populations: expected 4 entries");
  std::array<double, 4> out{};
  for (std::size_t k = 0; k < 4; ++k) out[level_of_index(k)] = internal[k];
  return out;
}

std::array<double, 4> level_populations(const StateVector& psi) {
  const auto p = psi.populations();
  return level_populations(std::span<const double>(p));
}

StateVector plus01() { return from_levels({1.0, 1.0, 0.0, 0.0}); }
StateVector minus01() { return from_levels({1.0, -1.0, 0.0, 0.0}); }
StateVector plus23() { return from_levels({0.0, 0.0, 1.0, 1.0}); }
StateVector minus23() { return from_levels({0.0, 0.0, 1.0, -1.0}); }

HermitianOperator build_dirac_hamiltonian(const DiracParams& params) {
  params.validate();
  const double m = params.mass_mhz;
  const auto [px, py, pz] = params.momentum_mhz;
  ComplexMatrix h{
      {0.0, 0.0, pz - kI * m, px - kI * py},
      {0.0, 0.0, px + kI * py, -pz - kI * m},
      {pz + kI * m, px - kI * py, 0.0, 0.0},
      {px + kI * py, -pz + kI * m, 0.0, 0.0},
  };
  h *= kTwoPi;
  return HermitianOperator(std::move(h));
}

double relativistic_energy(const DiracParams& params) {
  params.validate();
  const auto [px, py, pz] = params.momentum_mhz;
  return kTwoPi * std::sqrt(params.mass_mhz * params.mass_mhz + px * px + py * py + pz * pz);
}

UnitaryOperator dirac_propagator(const HermitianOperator& h, double dt) {
  if (h.dim() != 4) throw InvalidInput("dirac_propagator: expected a 4x4 Hamiltonian");
  if (!std::isfinite(dt)) throw InvalidInput("dirac_propagator: non-finite time step");
  const ComplexMatrix& m = h.matrix();
  double e2 = 0.0;
  for (std::size_t c = 0; c < 4; ++c) e2 += std::norm(m(0, c));
  const double e = std::sqrt(e2);
  // sin(E dt)/E -> dt as E -> 0.
  const double sinc = e * std::abs(dt) < 1e-8 ? dt : std::sin(e * dt) / e;
  ComplexMatrix u = m * Complex(0.0, -sinc);
  const double cosine = std::cos(e * dt);
  for (std::size_t i = 0; i < 4; ++i) u(i, i) += cosine;
  return UnitaryOperator::trusted(std::move(u));
}

BrightStatePair bright_states(const DiracParams& params) {
  params.validate();
  const double m = params.mass_mhz;
  const auto [px, py, pz] = params.momentum_mhz;
  if (m == 0.0 && px == 0.0 && py == 0.0 && pz == 0.0) {
    throw DegenerateDrive("bright_states: all drive amplitudes are zero");
  }
  // H|0> and H|3> restricted to levels {1,2}, read off the couplings.
  const Complex v_level1 = px + kI * py;
  const Complex v_level2 = pz + kI * m;
  const Complex l_level1 = -pz + kI * m;
  const Complex l_level2 = px - kI * py;
  return {manifold_state(v_level1, v_level2), manifold_state(l_level1, l_level2)};
}

double SpinVector::norm() const { return std::sqrt(sx * sx + sy * sy + sz * sz); }

const SpinOperators& spin_operators() {
  static const SpinOperators ops{
      HermitianOperator(kron(pauli::identity(), pauli::x()) * 0.5),
      HermitianOperator(kron(pauli::identity(), pauli::y()) * 0.5),
      HermitianOperator(kron(pauli::identity(), pauli::z()) * 0.5),
  };
  return ops;
}

SpinVector spin_expectation(const StateVector& psi) {
  const auto& s = spin_operators();
  return {expectation(psi, s.x), expectation(psi, s.y), expectation(psi, s.z)};
}

HermitianOperator helicity_operator(const DiracParams& params) {
  params.validate();
  const double p = params.momentum_norm_mhz();
  if (!(p > 0.0)) throw DegenerateDrive("helicity_operator: momentum is zero");
  const auto& s = spin_operators();
  ComplexMatrix h = s.x.matrix() * (params.momentum_mhz[0] / p) +
                    s.y.matrix() * (params.momentum_mhz[1] / p) +
                    s.z.matrix() * (params.momentum_mhz[2] / p);
  return HermitianOperator(std::move(h));
}

SpinVector manifold_spin(const StateVector& psi) {
  if (psi.dim() != 4) throw InvalidInput("manifold_spin: expected a 4-level state");
  // Internal indices 2 and 3 hold levels 2 and 1; index 2 is spin up.
  const Complex up = psi[index_of_level(2)];
  const Complex down = psi[index_of_level(1)];
  const double w = std::norm(up) + std::norm(down);
  if (!(w > 1e-24)) throw DegenerateDrive("manifold_spin: state has no weight on levels 1, 2");
  const Complex cross = std::conj(up) * down;
  return {cross.real() / w, cross.imag() / w, 0.5 * (std::norm(up) - std::norm(down)) / w};
}

std::vector<TexturePoint> spin_texture(double shell_mhz, const TextureGrid& grid) {
  if (!std::isfinite(shell_mhz) || shell_mhz < 0.0) {
    throw InvalidInput("spin_texture: shell radius must be finite and >= 0");
  }
  if (shell_mhz == 0.0) throw DegenerateDrive("spin_texture: zero-radius shell");
  if (grid.n_polar < 8 || grid.n_azimuthal < 16) {
    throw InvalidInput("spin_texture: grid needs >= 8 polar and >= 16 azimuthal points");
  }
  const double pi = std::numbers::pi;
  std::vector<TexturePoint> out;
  out.reserve((grid.n_polar - 2) * grid.n_azimuthal + 2);
  for (std::size_t i = 0; i < grid.n_polar; ++i) {
    const bool pole = i == 0 || i + 1 == grid.n_polar;
    const double theta = pi * static_cast<double>(i) / static_cast<double>(grid.n_polar - 1);
    const std::size_t n_phi = pole ? 1 : grid.n_azimuthal;
    for (std::size_t j = 0; j < n_phi; ++j) {
      TexturePoint pt;
      pt.theta = theta;
      pt.phi = 2.0 * pi * static_cast<double>(j) / static_cast<double>(grid.n_azimuthal);
      if (pole) {
        pt.direction = {0.0, 0.0, i == 0 ? 1.0 : -1.0};
      } else {
        pt.direction = {std::sin(theta) * std::cos(pt.phi), std::sin(theta) * std::sin(pt.phi),
                        std::cos(theta)};
      }
      DiracParams params;
      params.mass_mhz = shell_mhz;
      for (std::size_t k = 0; k < 3; ++k) params.momentum_mhz[k] = shell_mhz * pt.direction[k];

      pt.spin = manifold_spin(bright_states(params).bright_v);
      const double norm = pt.spin.norm();
      pt.spin_direction = {pt.spin.sx / norm, pt.spin.sy / norm, pt.spin.sz / norm};
      pt.radial = pt.spin.dot(pt.direction);
      pt.helicity = expectation(level_state(0), helicity_operator(params));
      pt.north_pole = pole && i == 0;
      if (pt.north_pole) {
        pt.stereo_x = std::numeric_limits<double>::infinity();
        pt.stereo_y = std::numeric_limits<double>::infinity();
      } else {
        const double denom = 1.0 - pt.direction[2];
        pt.stereo_x = pt.direction[0] / denom;
        pt.stereo_y = pt.direction[1] / denom;
      }
      out.push_back(pt);
    }
  }
  return out;
}

const UnitaryOperator& bell_transform() {
  static const UnitaryOperator u = [] {
    const double r = 1.0 / std::numbers::sqrt2;
    // Bell state of each level over |00>, |01>, |10>, |11>.
    const std::array<std::array<double, 4>, 4> bell{{
        {r, 0.0, 0.0, r},
        {0.0, r, r, 0.0},
        {0.0, r, -r, 0.0},
        {r, 0.0, 0.0, -r},
    }};
    ComplexMatrix w(4, 4);
    for (std::size_t k = 0; k < 4; ++k)
      for (std::size_t row = 0; row < 4; ++row) w(row, k) = bell[level_of_index(k)][row];
    return UnitaryOperator(std::move(w));
  }();
  return u;
}

FactoredCheck factored_check(const DiracParams& params) {
  params.validate();
  if (params.momentum_mhz[1] != 0.0 || params.momentum_mhz[2] != 0.0) {
    throw UnsupportedConfiguration("factored_check: requires p_y = p_z = 0");
  }
  const ComplexMatrix& u = bell_transform().matrix();
  const ComplexMatrix transformed = u * build_dirac_hamiltonian(params).matrix() * u.adjoint();
  const ComplexMatrix qubit =
      (pauli::x() * params.momentum_mhz[0] + pauli::y() * params.mass_mhz) * kTwoPi;
  const ComplexMatrix target = kron(pauli::identity(), qubit);
  FactoredCheck out;
  out.residual = (transformed - target).max_abs();
  out.ok = out.residual <= 1e-10;
  return out;
}

}  // namespace diracsim
