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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances are fixed here and never relaxed at runtime.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "diracsim/circuit.h"
#include "diracsim/dirac.h"
#include "diracsim/evolution.h"
#include "test_util.h"

using namespace diracsim;
using diracsim::testing::random_state;
using diracsim::testing::taylor_expm;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

// Worst |norm - 1| over every trajectory produced by the suite.
double g_norm_error = 0.0;

Trajectory note(Trajectory traj) {
  g_norm_error = std::max(g_norm_error, traj.max_norm_error());
  return traj;
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

bool run(int id, const char* name, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = limit_s <= 0.0 || secs < limit_s;
  const bool pass = o.pass && in_time;
  std::printf("%s criterion %2d %-28s %s; %.2f s", pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs);
  if (limit_s > 0.0) std::printf(" (limit %.0f s)", limit_s);
  std::printf("\n");
  std::fflush(stdout);
  return pass;
}

DiracParams random_params(std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return DiracParams{std::abs(u(rng)), {u(rng), u(rng), u(rng)}};
}

TimeGrid chirp_grid(const ChirpSchedule& s, std::size_t samples = 401) { return TimeGrid{0.0, s.duration_us(), samples}; }

Outcome spectrum() {
  constexpr double kTol = 1e-10;
  std::mt19937_64 rng(1);
  double worst = 0.0;
  for (int draw = 0; draw < 1000; ++draw) {
    const DiracParams p = random_params(rng, 50.0);
    const double e = relativistic_energy(p);
    const auto ev = eigh(build_dirac_hamiltonian(p)).eigenvalues;
    const std::array<double, 4> want{-e, -e, e, e};
    for (std::size_t k = 0; k < 4; ++k) worst = std::max(worst, std::abs(ev[k] - want[k]) / e);
  }
  return {worst <= kTol, "1000 draws, max rel err " + fmt("%.2e", worst) + " (tol 1e-10)"};
}

Outcome dark_state() {
  const TimeGrid grid{0.0, 0.2, 401};
  double worst_p3 = 0.0;
  double worst_p0 = 0.0;
  for (double m : {0.0, 5.0, 10.0, 15.0, 20.0}) {
    const DiracParams p{m, {20.0, 0.0, 0.0}};
    const Trajectory traj = note(evolve_static(build_dirac_hamiltonian(p), level_state(0), grid));
    const double g = kTwoPi * std::hypot(m, 20.0);
    const ComplexMatrix h2{{0.0, g}, {g, 0.0}};
    for (std::size_t i = 0; i < traj.size(); ++i) {
      const auto pops = level_populations(traj.states[i]);
      worst_p3 = std::max(worst_p3, pops[3]);
      worst_p0 = std::max(worst_p0, std::abs(pops[0] - std::norm(taylor_expm(h2, traj.times[i])(0, 0))));
    }
  }
  return {worst_p3 <= 1e-10 && worst_p0 <= 1e-8,
          "max P3 " + fmt("%.1e", worst_p3) + " (tol 1e-10), P0 vs 2-level oracle " + fmt("%.1e", worst_p0) +
              " (tol 1e-8)"};
}

Outcome helicity() {
  std::mt19937_64 rng(3);
  const TimeGrid grid{0.0, 0.5, 201};
  double drift = 0.0;
  double comm = 0.0;
  for (int draw = 0; draw < 100; ++draw) {
    DiracParams p = random_params(rng, 30.0);
    if (p.momentum_norm_mhz() == 0.0) p.momentum_mhz[0] = 1.0;
    const HermitianOperator h = build_dirac_hamiltonian(p);
    const HermitianOperator hel = helicity_operator(p);
    comm = std::max(comm, commutator(h.matrix(), hel.matrix()).max_abs() / h.matrix().max_abs());
    const std::vector<Observable> obs{{"h", hel}};
    const Trajectory traj = note(evolve_static(h, random_state(4, rng), grid, obs));
    for (double v : traj.observables.at("h")) drift = std::max(drift, std::abs(v - traj.observables.at("h").front()));
  }
  return {drift <= 1e-8 && comm <= 1e-10,
          "100 draws, max |<h>(t)-<h>(0)| " + fmt("%.1e", drift) + " (tol 1e-8), ||[H,h]||/||H|| " +
              fmt("%.1e", comm) + " (tol 1e-10)"};
}

Outcome texture() {
  const std::vector<TexturePoint> pts = spin_texture(20.0, TextureGrid{});
  double pole = 0.0;
  double equator = 0.0;
  double gap = 0.0;
  for (const TexturePoint& p : pts) {
    if (p.theta == 0.0 || p.direction[2] == -1.0) {
      pole = std::max({pole, std::abs(p.spin_direction.sz - 1.0), std::hypot(p.spin.sx, p.spin.sy)});
    }
    if (std::abs(p.direction[2]) < 1e-12) equator = std::max(equator, std::abs(p.radial));
    gap = std::max(gap, std::abs(p.radial - p.helicity));
  }
  return {pole <= 1e-9 && equator <= 1e-9 && gap <= 1e-8,
          "pole spin-up err " + fmt("%.1e", pole) + ", equator radial " + fmt("%.1e", equator) +
              " (tol 1e-9), radial vs helicity " + fmt("%.1e", gap) + " (tol 1e-8)"};
}

Outcome bell() {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-30.0, 30.0);
  double worst = 0.0;
  for (int draw = 0; draw < 100; ++draw) {
    worst = std::max(worst, factored_check(DiracParams{std::abs(u(rng)), {u(rng), 0.0, 0.0}}).residual);
  }
  return {worst <= 1e-10, "100 draws, max ||U H U^dag - I(x)(px sx + m sy)|| " + fmt("%.1e", worst) + " (tol 1e-10)"};
}

Outcome schwinger() {
  const ChirpSchedule chirp;  // -50 -> +50 MHz, rate (10 MHz)^2
  const std::vector<double> cal_masses{1.0, 2.0, 3.0, 4.0, 5.0, 6.0};
  const SchwingerCalibration cal = calibrate_schwinger_convention(cal_masses, chirp);
  // 41-point scan, 0..20 MHz.
  double worst = 0.0;
  double worst_mass = 0.0;
  double small = 0.0;
  double narrow = 0.0;  // 2m <= 25 MHz, half the sweep half-width
  double largest_mass_dev = 0.0;
  for (int i = 0; i <= 40; ++i) {
    const double m = 0.5 * i;
    const double dev = std::abs(pair_production_population(m, chirp) - schwinger_probability(m, chirp.rate_mhz2));
    // Every scanned mass satisfies 2m <= 50 MHz.
    if (dev > worst) {
      worst = dev;
      worst_mass = m;
    }
    if (m <= 2.0) small = std::max(small, dev);
    if (2.0 * m <= 25.0) narrow = std::max(narrow, dev);
    if (i == 40) largest_mass_dev = dev;
  }
  const bool calibrated = cal.chosen == kSchwingerConvention;
  const bool within = worst <= 0.05;
  const bool large_mass = largest_mass_dev > small;
  return {calibrated && within && large_mass,
          std::string("oracle picks ") + to_string(cal.chosen) + "; max |P01 - exp(-pi m^2/rate)| " +
              fmt("%.4f", worst) + " at m=" + fmt("%.1f", worst_mass) + " MHz (tol 0.05), " +
              fmt("%.4f", narrow) + " for 2m <= 25 MHz; dev at m=20 " +
              fmt("%.4f", largest_mass_dev) + " > small-mass " + fmt("%.4f", small) + (large_mass ? " yes" : " no")};
}

Outcome degenerate_lz() {
  // px sweeps with no transverse momentum, across masses, ranges and rates.
  double leak = 0.0;
  for (double rate : {25.0, 100.0, 400.0}) {
    for (double half_width : {20.0, 50.0}) {
      ChirpSchedule s;
      s.start_mhz = -half_width;
      s.end_mhz = half_width;
      s.rate_mhz2 = rate;
      for (double m : {0.0, 0.5, 1.0, 3.0, 8.0, 20.0, 40.0}) {
        const Trajectory traj = note(evolve_chirped(DiracParams{m, {0.0, 0.0, 0.0}}, s, plus01(), chirp_grid(s)));
        for (const auto& psi : traj.states) leak = std::max(leak, fidelity(minus01(), psi));
      }
    }
  }
  const ChirpSchedule s;
  const Trajectory adiabatic = note(evolve_chirped(DiracParams{40.0, {0.0, 0.0, 0.0}}, s, plus01(), chirp_grid(s)));
  const double transfer = fidelity(minus23(), adiabatic.states.back());
  return {leak <= 1e-6 && transfer >= 0.99,
          "max P(|-01>) " + fmt("%.1e", leak) + " (tol 1e-6), m=40 transfer to |-23> " + fmt("%.4f", transfer) +
              " (>= 0.99)"};
}

Outcome circuit_spectrum() {
  const CircuitParams p;
  const DressedBasis b = dressed_basis(p);
  const double split = b.diamond_energies_mhz[2] - b.diamond_energies_mhz[1];
  const double shift = b.diamond_energies_mhz[3] - 2.0 * p.omega0_ghz * 1000.0;
  const double sep = b.min_transition_separation_mhz();
  const double w0 = p.omega0_ghz * 1000.0;
  const double g = p.g_mhz;
  const std::array<double, 6> closed{0.0, w0 - g, w0 + g, 2 * w0 - 4 * g, 2 * w0 - 3 * g, 2 * w0 + g};
  const std::vector<double> e = b.all_energies_mhz();
  double rel = 0.0;
  for (std::size_t k = 0; k < 6; ++k) rel = std::max(rel, std::abs(e[k] - closed[k]) / std::max(1.0, closed[k]));
  const bool pass = std::abs(split - 200.0) <= 1e-6 && std::abs(shift - 100.0) <= 1e-6 &&
                    std::abs(sep - 100.0) <= 1e-6 && rel <= 1e-10;
  return {pass, "splitting " + fmt("%.9f", split) + ", top shift " + fmt("%.9f", shift) + ", min separation " +
                    fmt("%.9f", sep) + " MHz (tol 1e-6); closed-form rel err " + fmt("%.1e", rel) + " (tol 1e-10)"};
}

Outcome circuit_vs_ideal() {
  const CircuitParams p;
  const DressedBasis b = dressed_basis(p);
  const TimeGrid grid{0.0, 0.5, 201};
  std::string detail = "calibrated m=px=a over 0.5 us:";
  bool pass = true;
  double previous_leak = 0.0;
  bool monotone = true;
  for (double a : {1.25, 2.5, 5.0, 10.0, 20.0}) {
    const DiracParams d{a, {a, 0.0, 0.0}};
    const DriveProgram prog = dirac_drive_mapping(d, b, DriveMode::kCalibrated);
    const DiamondProjection proj =
        project_to_diamond(note(simulate_circuit(p, prog, b.diamond_states[0], grid)), b);
    const DeviationSummary dev = compare_to_ideal(proj, note(evolve_static(build_dirac_hamiltonian(d), level_state(0), grid)));
    const double leak = proj.max_leakage();
    pass = pass && dev.rms <= 0.05 && leak <= 0.05;
    monotone = monotone && leak >= previous_leak - 1e-4;
    previous_leak = leak;
    detail += " a=" + fmt("%g", a) + " rms " + fmt("%.4f", dev.rms) + " leak " + fmt("%.4f", leak) + ";";
  }
  detail += monotone ? " leakage ladder monotone;" : " leakage ladder NOT monotone;";

  // Frame invariance over the full window.
  const DiracParams d{5.0, {5.0, 0.0, 0.0}};
  const DriveProgram prog = dirac_drive_mapping(d, b, DriveMode::kCalibrated);
  const TimeGrid coarse{0.0, 0.5, 51};
  CircuitSimulationOptions rot;
  rot.propagation.tolerance = 1e-10;
  CircuitSimulationOptions lab;
  lab.frame = Frame::kLab;
  lab.propagation.tolerance = 1e-8;
  const Trajectory r = note(simulate_circuit(p, prog, b.diamond_states[0], coarse, rot));
  const Trajectory l = note(simulate_circuit(p, prog, b.diamond_states[0], coarse, lab));
  double frame_gap = 0.0;
  for (std::size_t i = 0; i < coarse.n_samples; ++i) {
    for (std::size_t k = 0; k < kCircuitDim; ++k) {
      frame_gap = std::max(frame_gap, std::abs(r.populations[i][k] - l.populations[i][k]));
    }
  }
  pass = pass && frame_gap <= 1e-8;
  detail += " lab vs rotating " + fmt("%.1e", frame_gap) + " (tol 1e-8); tol rms/leak 0.05";
  return {pass, detail};
}

Outcome hygiene() {
  const ChirpSchedule s;
  const DiracParams base{3.0, {0.0, 0.5, -0.25}};
  const HamiltonianFn h = chirped_hamiltonian(base, s, 0.0);
  const double t = s.duration_us();
  note(evolve_chirped(base, s, level_state(0), chirp_grid(s)));

  const StateVector fwd = propagate_fixed(h, plus01(), 0.0, t, 4000, Stepper::kExponentialMidpoint, dirac_propagator);
  const StateVector back = propagate_fixed(h, fwd, t, 0.0, 4000, Stepper::kExponentialMidpoint, dirac_propagator);
  const double reversal = fidelity(back, plus01());

  const StateVector ref = propagate_fixed(h, level_state(0), 0.0, t, 128000, Stepper::kExponentialMidpoint, dirac_propagator);
  std::vector<double> err;
  for (std::size_t n : {500, 1000, 2000}) {
    const StateVector psi = propagate_fixed(h, level_state(0), 0.0, t, n, Stepper::kExponentialMidpoint, dirac_propagator);
    err.push_back(diracsim::testing::max_diff(psi, ref));
  }
  const double order = std::min(std::log2(err[0] / err[1]), std::log2(err[1] / err[2]));
  return {g_norm_error <= 1e-9 && reversal >= 1.0 - 1e-7 && order >= 1.9,
          "max norm error over all trajectories " + fmt("%.1e", g_norm_error) + " (tol 1e-9), reversal fidelity 1-" +
              fmt("%.1e", 1.0 - reversal) + " (tol 1e-7), midpoint Richardson order " + fmt("%.2f", order) +
              " (>= 1.9)"};
}

}  // namespace

int main() {
  std::printf("diracsim acceptance suite\n");
  int failures = 0;
  failures += !run(1, "dirac-spectrum", 5.0, spectrum);
  failures += !run(2, "dark-state-suppression", 5.0, dark_state);
  failures += !run(3, "helicity-conservation", 10.0, helicity);
  failures += !run(4, "spin-texture", 0.0, texture);
  failures += !run(5, "bell-factorization", 0.0, bell);
  failures += !run(6, "schwinger-landau-zener", 120.0, schwinger);
  failures += !run(7, "degenerate-lz-decoupling", 0.0, degenerate_lz);
  failures += !run(8, "circuit-spectrum", 0.0, circuit_spectrum);
  failures += !run(9, "circuit-vs-ideal", 60.0, circuit_vs_ideal);
  // Runs last so the norm check covers every trajectory above.
  failures += !run(10, "numerics-hygiene", 0.0, hygiene);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
