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

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "diracsim/dirac.h"
#include "diracsim/linalg.h"

namespace diracsim {

// Uniform output sampling in microseconds. Unrelated to the internal step.
struct TimeGrid {
  double t_start = 0.0;
  double t_end = 1.0;
  std::size_t n_samples = 2;

  void validate() const;
  double duration() const { return t_end - t_start; }
  double spacing() const { return duration() / static_cast<double>(n_samples - 1); }
  double time(std::size_t i) const;
  std::vector<double> times() const;
};

enum class ChirpTarget { kPx, kPy, kPz, kMass };

// Linear ramp of one drive parameter. rate_mhz2 is the field strength
// eps/(2pi)^2 quoted as "(10 MHz)^2"; the ramped frequency therefore
// moves at 2pi * rate_mhz2 MHz per microsecond.
struct ChirpSchedule {
  ChirpTarget target = ChirpTarget::kPx;
  double start_mhz = -50.0;
  double end_mhz = 50.0;
  double rate_mhz2 = 100.0;

  void validate() const;
  // Signed slope in MHz/us.
  double slope_mhz_per_us() const;
  double duration_us() const;
  double value_at(double elapsed_us) const;
  // base with the target component replaced by value_at(elapsed_us).
  DiracParams apply(const DiracParams& base, double elapsed_us) const;
  ChirpSchedule reversed() const;
};

const char* to_string(ChirpTarget target);
ChirpTarget parse_chirp_target(const std::string& name);

struct Trajectory {
  std::vector<double> times;
  std::vector<StateVector> states;
  // |c_k|^2 per sample, in the state's own basis ordering.
  std::vector<std::vector<double>> populations;
  std::map<std::string, std::vector<double>> observables;

  std::size_t size() const { return times.size(); }
  double max_norm_error() const;
};

struct Observable {
  std::string name;
  HermitianOperator op;
};

using HamiltonianFn = std::function<HermitianOperator(double t)>;
using ExponentialFn = std::function<UnitaryOperator(const HermitianOperator&, double dt)>;

enum class Stepper {
  kExponentialMidpoint,  // exp(-i H(t + dt/2) dt), second order
  kMagnus4,              // two-exponential commutator-free Magnus, fourth order
};

struct PropagationOptions {
  Stepper stepper = Stepper::kExponentialMidpoint;
  // Largest frequency scale of H in MHz; estimated from H when <= 0.
  double max_frequency_mhz = 0.0;
  // Initial internal step; min(0.25/f_max, duration/2000) when <= 0.
  double base_dt = 0.0;
  // Max population change between successive halvings.
  double tolerance = 1e-7;
  int max_refinements = 12;
  // exp(-i H dt); a Taylor action on the state when empty.
  ExponentialFn exponential;
};

struct PropagationReport {
  double dt = 0.0;
  std::size_t steps = 0;  // steps of the accepted run
  int refinements = 0;
  double last_change = 0.0;
};

// Propagates with step halving until the populations at every sample
// move by at most options.tolerance. Throws ConvergenceFailure after
// options.max_refinements halvings.
Trajectory propagate(const HamiltonianFn& h, const StateVector& psi0, const TimeGrid& grid,
                     const PropagationOptions& options, std::span<const Observable> observables = {},
                     PropagationReport* report = nullptr);

// Fixed number of steps from t_from to t_to; t_to < t_from runs backwards.
StateVector propagate_fixed(const HamiltonianFn& h, const StateVector& psi0, double t_from, double t_to,
                            std::size_t n_steps, Stepper stepper, const ExponentialFn& exponential = {});

// Exact propagation under a constant Hamiltonian.
Trajectory evolve_static(const HermitianOperator& h, const StateVector& psi0, const TimeGrid& grid,
                         std::span<const Observable> observables = {});

// Dirac Hamiltonian whose schedule target ramps from grid.t_start.
HamiltonianFn chirped_hamiltonian(const DiracParams& base, const ChirpSchedule& schedule, double t0);

// Midpoint-exponential integration of a chirped Dirac drive. The grid
// must span exactly schedule.duration_us().
Trajectory evolve_chirped(const DiracParams& params, const ChirpSchedule& schedule, const StateVector& psi0,
                          const TimeGrid& grid, const PropagationOptions& options = {},
                          std::span<const Observable> observables = {}, PropagationReport* report = nullptr);

// Sum of P_l over the given diamond levels of a 4-level state.
double manifold_population(const StateVector& psi, std::span<const std::size_t> levels);

enum class SchwingerConvention {
  kNatural,     // exp(-pi m^2 / rate)
  kExtraTwoPi,  // exp(-2 pi^2 m^2 / rate)
};

const char* to_string(SchwingerConvention convention);

// Convention fixed by calibrate_schwinger_convention against the sweep.
inline constexpr SchwingerConvention kSchwingerConvention = SchwingerConvention::kNatural;

double schwinger_probability(double mass_mhz, double rate_mhz2,
                             SchwingerConvention convention = kSchwingerConvention);

struct SchwingerCalibration {
  SchwingerConvention chosen = SchwingerConvention::kNatural;
  std::vector<double> masses_mhz;
  std::vector<double> simulated;  // final {0,1} population per mass
  double max_deviation_natural = 0.0;
  double max_deviation_extra_two_pi = 0.0;
};

// Final {0,1} population after a chirp started in |0>.
double pair_production_population(double mass_mhz, const ChirpSchedule& schedule,
                                  const PropagationOptions& options = {});

// Picks the exponent convention with the smaller max absolute deviation
// from simulated sweeps over the given masses.
SchwingerCalibration calibrate_schwinger_convention(std::span<const double> masses_mhz,
                                                    const ChirpSchedule& schedule,
                                                    const PropagationOptions& options = {});

}  // namespace diracsim
