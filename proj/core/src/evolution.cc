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

#include "diracsim/evolution.h"

#include <algorithm>
#include <bitset>
#include <cmath>
#include <numbers>
#include <string>

#include "diracsim/errors.h"

namespace diracsim {

// --- TimeGrid ---

void TimeGrid::validate() const {
  if (!std::isfinite(t_start) || !std::isfinite(t_end)) throw InvalidInput("TimeGrid: non-finite bounds");
  if (!(t_end > t_start)) throw InvalidInput("TimeGrid: t_end must exceed t_start");
  if (n_samples < 2) throw InvalidInput("TimeGrid: need at least 2 samples");
}

double TimeGrid::time(std::size_t i) const {
  if (i + 1 == n_samples) return t_end;
  return t_start + spacing() * static_cast<double>(i);
}

std::vector<double> TimeGrid::times() const {
  std::vector<double> t(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) t[i] = time(i);
  return t;
}

// --- ChirpSchedule ---

void ChirpSchedule::validate() const {
  if (!std::isfinite(start_mhz) || !std::isfinite(end_mhz) || !std::isfinite(rate_mhz2)) {
    throw InvalidInput("ChirpSchedule: non-finite parameters");
  }
  if (!(rate_mhz2 > 0.0)) throw InvalidInput("ChirpSchedule: rate must be > 0");
  if (start_mhz == end_mhz) throw InvalidInput("ChirpSchedule: start and end coincide");
  if (target == ChirpTarget::kMass && (start_mhz < 0.0 || end_mhz < 0.0)) {
    throw InvalidInput("ChirpSchedule: a mass ramp must stay >= 0");
  }
}

double ChirpSchedule::slope_mhz_per_us() const {
  return (end_mhz > start_mhz ? 1.0 : -1.0) * kTwoPi * rate_mhz2;
}

double ChirpSchedule::duration_us() const { return std::abs(end_mhz - start_mhz) / (kTwoPi * rate_mhz2); }

double ChirpSchedule::value_at(double elapsed_us) const { return start_mhz + slope_mhz_per_us() * elapsed_us; }

DiracParams ChirpSchedule::apply(const DiracParams& base, double elapsed_us) const {
  DiracParams p = base;
  const double v = value_at(elapsed_us);
  switch (target) {
    case ChirpTarget::kPx: p.momentum_mhz[0] = v; break;
    case ChirpTarget::kPy: p.momentum_mhz[1] = v; break;
    case ChirpTarget::kPz: p.momentum_mhz[2] = v; break;
    // Clamp rounding noise at the end of a ramp down to zero mass.
    case ChirpTarget::kMass: p.mass_mhz = std::max(v, 0.0); break;
  }
  return p;
}

ChirpSchedule ChirpSchedule::reversed() const {
  ChirpSchedule r = *this;
  std::swap(r.start_mhz, r.end_mhz);
  return r;
}

const char* to_string(ChirpTarget target) {
  switch (target) {
    case ChirpTarget::kPx: return "px";
    case ChirpTarget::kPy: return "py";
    case ChirpTarget::kPz: return "pz";
    case ChirpTarget::kMass: return "m";
  }
  return "?";
}

ChirpTarget parse_chirp_target(const std::string& name) {
  if (name == "px") return ChirpTarget::kPx;
  if (name == "py") return ChirpTarget::kPy;
  if (name == "pz") return ChirpTarget::kPz;
  if (name == "m") return ChirpTarget::kMass;
  throw InvalidInput("unknown chirp target '" + name + "' (expected px, py, pz or m)");
}

double Trajectory::max_norm_error() const {
  double e = 0.0;
  for (const auto& s : states) e = std::max(e, std::abs(s.norm() - 1.0));
  return e;
}

// --- propagation ---

namespace {

const double kMagnusNodeOffset = std::numbers::sqrt3 / 6.0;
const double kMagnusWeightSmall = (3.0 - 2.0 * std::numbers::sqrt3) / 12.0;
const double kMagnusWeightLarge = (3.0 + 2.0 * std::numbers::sqrt3) / 12.0;

// exp(-i H dt) applied to a state.
using ActionFn = std::function<StateVector(const HermitianOperator&, double, const StateVector&)>;

ActionFn make_action(const ExponentialFn& exponential) {
  if (!exponential) return expm_multiply;
  return [exponential](const HermitianOperator& h, double dt, const StateVector& psi) {
    return exponential(h, dt).apply(psi);
  };
}

StateVector step(const HamiltonianFn& h, const StateVector& psi, double t, double dt, Stepper stepper,
                 const ActionFn& action) {
  switch (stepper) {
    case Stepper::kExponentialMidpoint:
      return action(h(t + 0.5 * dt), dt, psi);
    case Stepper::kMagnus4: {
      const ComplexMatrix h1 = h(t + (0.5 - kMagnusNodeOffset) * dt).matrix();
      const ComplexMatrix h2 = h(t + (0.5 + kMagnusNodeOffset) * dt).matrix();
      const auto first = HermitianOperator::trusted(h1 * kMagnusWeightLarge + h2 * kMagnusWeightSmall);
      const auto second = HermitianOperator::trusted(h1 * kMagnusWeightSmall + h2 * kMagnusWeightLarge);
      return action(second, dt, action(first, dt, psi));
    }
  }
  throw InvalidInput("unknown stepper");
}

std::vector<StateVector> run_fixed(const HamiltonianFn& h, const StateVector& psi0, const TimeGrid& grid,
                                   std::size_t substeps, Stepper stepper, const ActionFn& action) {
  std::vector<StateVector> states;
  states.reserve(grid.n_samples);
  states.push_back(psi0);
  const double dt = grid.spacing() / static_cast<double>(substeps);
  for (std::size_t s = 0; s + 1 < grid.n_samples; ++s) {
    StateVector psi = states.back();
    const double t0 = grid.time(s);
    for (std::size_t k = 0; k < substeps; ++k) {
      psi = step(h, psi, t0 + dt * static_cast<double>(k), dt, stepper, action);
    }
    states.push_back(std::move(psi));
  }
  return states;
}

double max_row_sum(const ComplexMatrix& m) {
  double best = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    double s = 0.0;
    for (std::size_t c = 0; c < m.cols(); ++c) s += std::abs(m(r, c));
    best = std::max(best, s);
  }
  return best;
}

double estimate_max_frequency(const HamiltonianFn& h, const TimeGrid& grid) {
  double f = 0.0;
  for (double t : {grid.t_start, 0.5 * (grid.t_start + grid.t_end), grid.t_end}) {
    f = std::max(f, max_row_sum(h(t).matrix()) / kTwoPi);
  }
  return f;
}

double max_population_change(const std::vector<StateVector>& a, const std::vector<StateVector>& b) {
  double change = 0.0;
  for (std::size_t s = 0; s < a.size(); ++s) {
    for (std::size_t k = 0; k < a[s].dim(); ++k) {
      change = std::max(change, std::abs(std::norm(a[s][k]) - std::norm(b[s][k])));
    }
  }
  return change;
}

Trajectory assemble(const TimeGrid& grid, std::vector<StateVector> states,
                    std::span<const Observable> observables) {
  Trajectory traj;
  traj.times = grid.times();
  traj.populations.reserve(states.size());
  for (const auto& s : states) traj.populations.push_back(s.populations());
  for (const auto& obs : observables) {
    std::vector<double> series;
    series.reserve(states.size());
    for (const auto& s : states) series.push_back(expectation(s, obs.op));
    traj.observables[obs.name] = std::move(series);
  }
  traj.states = std::move(states);
  return traj;
}

}  // namespace

Trajectory propagate(const HamiltonianFn& h, const StateVector& psi0, const TimeGrid& grid,
                     const PropagationOptions& options, std::span<const Observable> observables,
                     PropagationReport* report) {
  grid.validate();
  const ActionFn action = make_action(options.exponential);
  if (h(grid.t_start).dim() != psi0.dim()) throw InvalidInput("propagate: state and Hamiltonian dims differ");

  double base_dt = options.base_dt;
  if (!(base_dt > 0.0)) {
    const double f_max = options.max_frequency_mhz > 0.0 ? options.max_frequency_mhz
                                                         : estimate_max_frequency(h, grid);
    base_dt = grid.duration() / 2000.0;
    if (f_max > 0.0) base_dt = std::min(base_dt, 0.25 / f_max);
  }
  const auto base_substeps =
      static_cast<std::size_t>(std::max(1.0, std::ceil(grid.spacing() / base_dt - 1e-9)));

  std::vector<StateVector> previous;
  double change = 0.0;
  for (int r = 0; r <= options.max_refinements; ++r) {
    const std::size_t substeps = base_substeps << r;
    auto states = run_fixed(h, psi0, grid, substeps, options.stepper, action);
    if (r > 0) {
      change = max_population_change(previous, states);
      if (change <= options.tolerance) {
        if (report) {
          report->dt = grid.spacing() / static_cast<double>(substeps);
          report->steps = substeps * (grid.n_samples - 1);
          report->refinements = r;
          report->last_change = change;
        }
        return assemble(grid, std::move(states), observables);
      }
    }
    previous = std::move(states);
  }
  throw ConvergenceFailure("propagate: population change " + std::to_string(change) + " after " +
                           std::to_string(options.max_refinements) + " step halvings exceeds tolerance " +
                           std::to_string(options.tolerance));
}

StateVector propagate_fixed(const HamiltonianFn& h, const StateVector& psi0, double t_from, double t_to,
                            std::size_t n_steps, Stepper stepper, const ExponentialFn& exponential) {
  if (n_steps == 0) throw InvalidInput("propagate_fixed: need at least one step");
  const ActionFn action = make_action(exponential);
  const double dt = (t_to - t_from) / static_cast<double>(n_steps);
  StateVector psi = psi0;
  for (std::size_t k = 0; k < n_steps; ++k) {
    psi = step(h, psi, t_from + dt * static_cast<double>(k), dt, stepper, action);
  }
  return psi;
}

Trajectory evolve_static(const HermitianOperator& h, const StateVector& psi0, const TimeGrid& grid,
                         std::span<const Observable> observables) {
  grid.validate();
  if (h.dim() != psi0.dim()) throw InvalidInput("evolve_static: state and Hamiltonian dims differ");
  const EigenDecomposition eig = eigh(h);
  const std::size_t n = psi0.dim();
  const ComplexMatrix& v = eig.eigenvectors;
  // Coefficients of psi0 in the eigenbasis.
  std::vector<Complex> coeff(n);
  for (std::size_t k = 0; k < n; ++k) {
    Complex s = 0.0;
    for (std::size_t r = 0; r < n; ++r) s += std::conj(v(r, k)) * psi0[r];
    coeff[k] = s;
  }
  std::vector<StateVector> states;
  states.reserve(grid.n_samples);
  for (double t : grid.times()) {
    const double elapsed = t - grid.t_start;
    std::vector<Complex> a(n);
    for (std::size_t k = 0; k < n; ++k) {
      const Complex ck = coeff[k] * std::polar(1.0, -eig.eigenvalues[k] * elapsed);
      for (std::size_t r = 0; r < n; ++r) a[r] += v(r, k) * ck;
    }
    states.emplace_back(std::move(a));
  }
  return assemble(grid, std::move(states), observables);
}

HamiltonianFn chirped_hamiltonian(const DiracParams& base, const ChirpSchedule& schedule, double t0) {
  base.validate();
  schedule.validate();
  return [base, schedule, t0](double t) { return build_dirac_hamiltonian(schedule.apply(base, t - t0)); };
}

Trajectory evolve_chirped(const DiracParams& params, const ChirpSchedule& schedule, const StateVector& psi0,
                          const TimeGrid& grid, const PropagationOptions& options,
                          std::span<const Observable> observables, PropagationReport* report) {
  grid.validate();
  schedule.validate();
  if (psi0.dim() != 4) throw InvalidInput("evolve_chirped: expected a 4-level state");
  const double duration = schedule.duration_us();
  if (std::abs(grid.duration() - duration) > 1e-9 * duration) {
    throw InvalidInput("evolve_chirped: grid spans " + std::to_string(grid.duration()) +
                       " us but the schedule lasts " + std::to_string(duration) + " us");
  }
  PropagationOptions opts = options;
  opts.stepper = Stepper::kExponentialMidpoint;
  if (!opts.exponential) opts.exponential = dirac_propagator;
  return propagate(chirped_hamiltonian(params, schedule, grid.t_start), psi0, grid, opts, observables, report);
}

double manifold_population(const StateVector& psi, std::span<const std::size_t> levels) {
  if (psi.dim() != 4) throw InvalidInput("manifold_population: expected a 4-level state");
  std::bitset<4> seen;
  double p = 0.0;
  for (std::size_t level : levels) {
    if (level >= 4) throw InvalidInput("manifold_population: level " + std::to_string(level) + " out of range");
    if (seen.test(level)) continue;
    seen.set(level);
    p += std::norm(psi[index_of_level(level)]);
  }
  return p;
}

const char* to_string(SchwingerConvention convention) {
  switch (convention) {
    case SchwingerConvention::kNatural: return "exp(-pi m^2/eps)";
    case SchwingerConvention::kExtraTwoPi: return "exp(-2 pi^2 m^2/eps)";
  }
  return "?";
}

double schwinger_probability(double mass_mhz, double rate_mhz2, SchwingerConvention convention) {
  if (!(rate_mhz2 > 0.0) || !std::isfinite(rate_mhz2)) throw InvalidInput("schwinger_probability: rate must be > 0");
  if (!std::isfinite(mass_mhz)) throw InvalidInput("schwinger_probability: non-finite mass");
  const double pi = std::numbers::pi;
  const double ratio = mass_mhz * mass_mhz / rate_mhz2;
  switch (convention) {
    case SchwingerConvention::kNatural: return std::exp(-pi * ratio);
    case SchwingerConvention::kExtraTwoPi: return std::exp(-2.0 * pi * pi * ratio);
  }
  return 0.0;
}

double pair_production_population(double mass_mhz, const ChirpSchedule& schedule,
                                  const PropagationOptions& options) {
  DiracParams params;
  params.mass_mhz = mass_mhz;
  const TimeGrid grid{0.0, schedule.duration_us(), 2};
  const Trajectory traj = evolve_chirped(params, schedule, level_state(0), grid, options);
  const std::size_t low[] = {0, 1};
  return manifold_population(traj.states.back(), low);
}

SchwingerCalibration calibrate_schwinger_convention(std::span<const double> masses_mhz,
                                                    const ChirpSchedule& schedule,
                                                    const PropagationOptions& options) {
  if (masses_mhz.empty()) throw InvalidInput("calibrate_schwinger_convention: no masses");
  SchwingerCalibration cal;
  cal.masses_mhz.assign(masses_mhz.begin(), masses_mhz.end());
  for (double m : masses_mhz) {
    const double p = pair_production_population(m, schedule, options);
    cal.simulated.push_back(p);
    cal.max_deviation_natural = std::max(
        cal.max_deviation_natural,
        std::abs(p - schwinger_probability(m, schedule.rate_mhz2, SchwingerConvention::kNatural)));
    cal.max_deviation_extra_two_pi = std::max(
        cal.max_deviation_extra_two_pi,
        std::abs(p - schwinger_probability(m, schedule.rate_mhz2, SchwingerConvention::kExtraTwoPi)));
  }
  cal.chosen = cal.max_deviation_natural <= cal.max_deviation_extra_two_pi ? SchwingerConvention::kNatural
                                                                            : SchwingerConvention::kExtraTwoPi;
  return cal;
}

}  // namespace diracsim
