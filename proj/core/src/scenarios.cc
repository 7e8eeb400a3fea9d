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

#include "diracsim/scenarios.h"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <exception>
#include <fstream>
#include <mutex>
#include <optional>
#include <random>
#include <thread>

#include "diracsim/circuit.h"
#include "diracsim/dirac.h"
#include "diracsim/errors.h"
#include "diracsim/evolution.h"
#include "diracsim/svg.h"
#include "nlohmann/json.hpp"

#ifndef DIRACSIM_VERSION
#define DIRACSIM_VERSION "unknown"
#endif

namespace diracsim {
namespace {

std::string mass_tag(double mass_mhz) { return "m" + format_double(mass_mhz); }

PropagationOptions propagation_options(const ScenarioConfig& config) {
  PropagationOptions o;
  o.tolerance = config.tolerance;
  o.max_refinements = config.max_refinements;
  return o;
}

std::vector<Series> level_series(const std::vector<std::array<double, 4>>& pops) {
  std::vector<Series> s(4);
  for (std::size_t k = 0; k < 4; ++k) {
    s[k].name = "P" + std::to_string(k);
    for (const auto& p : pops) s[k].y.push_back(p[k]);
  }
  return s;
}

std::vector<std::array<double, 4>> level_rows(const Trajectory& traj) {
  std::vector<std::array<double, 4>> rows;
  for (const auto& psi : traj.states) rows.push_back(level_populations(psi));
  return rows;
}

CsvTable level_table(const std::vector<double>& times, const std::vector<std::array<double, 4>>& pops) {
  CsvTable t({"t_us", "P0", "P1", "P2", "P3"});
  for (std::size_t i = 0; i < times.size(); ++i) {
    t.add_row({times[i], pops[i][0], pops[i][1], pops[i][2], pops[i][3]});
  }
  return t;
}

// --- free-dirac-scan ---

ScenarioOutput free_dirac_scan(const ScenarioConfig& config, unsigned threads, bool plots) {
  const auto& c = std::get<FreeDiracScanConfig>(config.params);
  const TimeGrid grid = c.grid.time_grid();
  const std::size_t n = c.masses_mhz.size();
  const bool circuit = config.model == Model::kCircuit9;

  struct Result {
    std::vector<std::array<double, 4>> pops;
    std::vector<double> leakage;
    double energy = 0.0;
    double max_p3 = 0.0;
    double metric = 0.0;  // closed-form deviation (ideal4) or RMS vs ideal (circuit9)
  };
  std::vector<Result> results(n);
  std::optional<DressedBasis> basis;
  if (circuit) basis = dressed_basis(c.circuit);

  parallel_for(n, threads, [&](std::size_t i) {
    const DiracParams params{c.masses_mhz[i], c.momentum_mhz};
    params.validate();
    Result& r = results[i];
    r.energy = relativistic_energy(params) / kTwoPi;
    const Trajectory ideal = evolve_static(build_dirac_hamiltonian(params), level_state(0), grid);
    if (!circuit) {
      r.pops = level_rows(ideal);
      for (std::size_t s = 0; s < ideal.size(); ++s) {
        const double c0 = std::cos(kTwoPi * r.energy * ideal.times[s]);
        r.metric = std::max(r.metric, std::abs(r.pops[s][0] - c0 * c0));
      }
    } else {
      CircuitSimulationOptions opts;
      opts.propagation.tolerance = config.tolerance;
      opts.propagation.max_refinements = config.max_refinements;
      const DriveProgram program = dirac_drive_mapping(params, *basis, DriveMode::kCalibrated);
      const DiamondProjection proj =
          project_to_diamond(simulate_circuit(c.circuit, program, basis->diamond_states[0], grid, opts), *basis);
      r.pops = proj.populations;
      r.leakage = proj.leakage;
      r.metric = compare_to_ideal(proj, ideal).rms;
    }
    for (const auto& p : r.pops) r.max_p3 = std::max(r.max_p3, p[3]);
  });

  ScenarioOutput out;
  const std::vector<double> times = grid.times();
  CsvTable summary(circuit ? std::vector<std::string>{"mass_mhz", "energy_mhz", "max_p3", "max_leakage", "rms_vs_ideal"}
                           : std::vector<std::string>{"mass_mhz", "energy_mhz", "max_p3", "max_p0_closed_form_deviation"});
  for (std::size_t i = 0; i < n; ++i) {
    const Result& r = results[i];
    const std::string name = "populations_" + mass_tag(c.masses_mhz[i]);
    CsvTable t = level_table(times, r.pops);
    if (circuit) {
      CsvTable with_leak({"t_us", "P0", "P1", "P2", "P3", "leakage"});
      for (std::size_t s = 0; s < times.size(); ++s) {
        with_leak.add_row({times[s], r.pops[s][0], r.pops[s][1], r.pops[s][2], r.pops[s][3], r.leakage[s]});
      }
      t = std::move(with_leak);
      double leak = 0.0;
      for (double l : r.leakage) leak = std::max(leak, l);
      summary.add_row({c.masses_mhz[i], r.energy, r.max_p3, leak, r.metric});
    } else {
      summary.add_row({c.masses_mhz[i], r.energy, r.max_p3, r.metric});
    }
    out.tables.emplace_back(name, std::move(t));
    if (plots) {
      out.plots.emplace_back(name, line_plot({"populations, m = " + format_double(c.masses_mhz[i]) + " MHz",
                                              "t (us)", "population"},
                                             times, level_series(r.pops)));
    }
    out.summary["max_p3_" + mass_tag(c.masses_mhz[i])] = r.max_p3;
  }
  out.tables.emplace_back("summary", std::move(summary));
  return out;
}

// --- spin-texture ---

ScenarioOutput spin_texture_scenario(const ScenarioConfig& config, bool plots) {
  const auto& c = std::get<SpinTextureConfig>(config.params);
  const std::vector<TexturePoint> points = spin_texture(c.shell_mhz, c.grid);
  CsvTable t({"theta", "phi", "nx", "ny", "nz", "sx", "sy", "sz", "radial", "helicity", "stereo_x", "stereo_y"});
  std::vector<Arrow> arrows;
  double worst_radial_gap = 0.0;
  double worst_equator = 0.0;
  for (const TexturePoint& p : points) {
    t.add_row({p.theta, p.phi, p.direction[0], p.direction[1], p.direction[2], p.spin.sx, p.spin.sy, p.spin.sz,
               p.radial, p.helicity, p.stereo_x, p.stereo_y});
    worst_radial_gap = std::max(worst_radial_gap, std::abs(p.radial - p.helicity));
    if (std::abs(p.direction[2]) < 1e-12) worst_equator = std::max(worst_equator, std::abs(p.radial));
    if (!p.north_pole) arrows.push_back({p.stereo_x, p.stereo_y, p.spin.sx, p.spin.sy});
  }
  ScenarioOutput out;
  out.tables.emplace_back("texture", std::move(t));
  if (plots) {
    out.plots.emplace_back("texture", quiver_plot({"bright-state spin, stereographic projection", "X", "Y"}, arrows));
  }
  out.summary["max_radial_minus_helicity"] = worst_radial_gap;
  out.summary["max_equator_radial"] = worst_equator;
  return out;
}

// --- pair-production ---

struct InitialState {
  const char* name;
  StateVector (*make)();
};

StateVector ground() { return level_state(0); }

const std::array<InitialState, 3> kTraceStates{{{"plus01", plus01}, {"minus01", minus01}, {"ground", ground}}};

ScenarioOutput pair_production(const ScenarioConfig& config, unsigned threads, bool plots) {
  const auto& c = std::get<PairProductionConfig>(config.params);
  const PropagationOptions options = propagation_options(config);
  const double duration = c.chirp.duration_us();
  const TimeGrid grid{0.0, duration, c.trace_samples};
  const std::size_t n_traces = c.trace_masses_mhz.size() * kTraceStates.size();

  std::vector<std::optional<Trajectory>> traces(n_traces);
  const std::vector<double> masses = c.scan.masses();
  std::vector<double> scan(masses.size());
  // Traces first, then scan points, all as independent tasks.
  parallel_for(n_traces + masses.size(), threads, [&](std::size_t i) {
    if (i < n_traces) {
      const double mass = c.trace_masses_mhz[i / kTraceStates.size()];
      const StateVector psi0 = kTraceStates[i % kTraceStates.size()].make();
      traces[i] = evolve_chirped(DiracParams{mass, {0.0, 0.0, 0.0}}, c.chirp, psi0, grid, options);
    } else {
      scan[i - n_traces] = pair_production_population(masses[i - n_traces], c.chirp, options);
    }
  });

  ScenarioOutput out;
  const std::array<StateVector, 4> probes{plus01(), minus01(), plus23(), minus23()};
  for (std::size_t i = 0; i < n_traces; ++i) {
    const double mass = c.trace_masses_mhz[i / kTraceStates.size()];
    const std::string name =
        "trace_" + mass_tag(mass) + "_" + std::string(kTraceStates[i % kTraceStates.size()].name);
    const Trajectory& traj = *traces[i];
    CsvTable t({"t_us", "sweep_mhz", "P0", "P1", "P2", "P3", "P_plus01", "P_minus01", "P_plus23", "P_minus23"});
    std::vector<Series> series{{"+01", {}}, {"-01", {}}, {"+23", {}}, {"-23", {}}};
    std::vector<double> sweep;
    for (std::size_t s = 0; s < traj.size(); ++s) {
      const auto p = level_populations(traj.states[s]);
      std::array<double, 4> proj{};
      for (std::size_t k = 0; k < 4; ++k) {
        proj[k] = fidelity(probes[k], traj.states[s]);
        series[k].y.push_back(proj[k]);
      }
      sweep.push_back(c.chirp.value_at(traj.times[s]));
      t.add_row({traj.times[s], sweep.back(), p[0], p[1], p[2], p[3], proj[0], proj[1], proj[2], proj[3]});
    }
    out.tables.emplace_back(name, std::move(t));
    if (plots) {
      out.plots.emplace_back(name, line_plot({"chirped sweep, m = " + format_double(mass) + " MHz, from " +
                                                  kTraceStates[i % kTraceStates.size()].name,
                                              "sweep value (MHz)", "population"},
                                             sweep, series));
    }
  }

  CsvTable t({"mass_mhz", "p01_final", "schwinger", "deviation"});
  Series sim{"simulated", {}};
  Series theory{"exp(-pi m^2/rate)", {}};
  double worst = 0.0;
  for (std::size_t i = 0; i < masses.size(); ++i) {
    const double w = schwinger_probability(masses[i], c.chirp.rate_mhz2);
    t.add_row({masses[i], scan[i], w, scan[i] - w});
    sim.y.push_back(scan[i]);
    theory.y.push_back(w);
    worst = std::max(worst, std::abs(scan[i] - w));
  }
  out.tables.emplace_back("scan", std::move(t));
  if (plots) {
    out.plots.emplace_back("scan", line_plot({"final {0,1} population vs mass", "m (MHz)", "population"}, masses,
                                             {sim, theory}));
  }
  out.summary["scan_max_deviation"] = worst;
  out.notes["schwinger_convention"] = to_string(kSchwingerConvention);
  return out;
}

// --- schwinger-scan ---

ScenarioOutput schwinger_scan(const ScenarioConfig& config, bool plots) {
  const auto& c = std::get<SchwingerScanConfig>(config.params);
  const SchwingerCalibration cal =
      calibrate_schwinger_convention(c.masses_mhz, c.chirp, propagation_options(config));
  CsvTable t({"mass_mhz", "simulated", "natural", "extra_two_pi"});
  Series sim{"simulated", {}};
  Series nat{"exp(-pi m^2/rate)", {}};
  Series two{"exp(-2 pi^2 m^2/rate)", {}};
  for (std::size_t i = 0; i < cal.masses_mhz.size(); ++i) {
    const double m = cal.masses_mhz[i];
    const double a = schwinger_probability(m, c.chirp.rate_mhz2, SchwingerConvention::kNatural);
    const double b = schwinger_probability(m, c.chirp.rate_mhz2, SchwingerConvention::kExtraTwoPi);
    t.add_row({m, cal.simulated[i], a, b});
    sim.y.push_back(cal.simulated[i]);
    nat.y.push_back(a);
    two.y.push_back(b);
  }
  ScenarioOutput out;
  out.tables.emplace_back("calibration", std::move(t));
  if (plots) {
    out.plots.emplace_back("calibration", line_plot({"Schwinger convention calibration", "m (MHz)", "population"},
                                                    cal.masses_mhz, {sim, nat, two}));
  }
  out.summary["max_deviation_natural"] = cal.max_deviation_natural;
  out.summary["max_deviation_extra_two_pi"] = cal.max_deviation_extra_two_pi;
  out.notes["chosen_convention"] = to_string(cal.chosen);
  return out;
}

// --- circuit-validation ---

ScenarioOutput circuit_validation(const ScenarioConfig& config, unsigned threads, bool plots) {
  const auto& c = std::get<CircuitValidationConfig>(config.params);
  const DressedBasis basis = dressed_basis(c.circuit);
  const TimeGrid grid = c.grid.time_grid();
  const Trajectory ideal = evolve_static(build_dirac_hamiltonian(c.dirac), level_state(0), grid);

  struct Result {
    DriveProgram program;
    Trajectory traj;
    DiamondProjection proj;
    DeviationSummary dev;
  };
  std::vector<Result> results(c.modes.size());
  parallel_for(c.modes.size(), threads, [&](std::size_t i) {
    CircuitSimulationOptions opts;
    opts.frame = c.frame;
    opts.propagation.tolerance = config.tolerance;
    opts.propagation.max_refinements = config.max_refinements;
    Result& r = results[i];
    r.program = dirac_drive_mapping(c.dirac, basis, c.modes[i]);
    r.traj = simulate_circuit(c.circuit, r.program, basis.diamond_states[0], grid, opts);
    r.proj = project_to_diamond(r.traj, basis);
    r.dev = compare_to_ideal(r.proj, ideal);
  });

  ScenarioOutput out;
  CsvTable spectrum({"label", "energy_mhz", "excitations"});
  for (std::size_t k = 0; k < 4; ++k) {
    const std::size_t exc = k == 0 ? 0 : (k == 3 ? 2 : 1);
    spectrum.add_row({"diamond" + std::to_string(k), format_double(basis.diamond_energies_mhz[k]), std::to_string(exc)});
  }
  for (std::size_t k = 0; k < basis.spectator_states.size(); ++k) {
    spectrum.add_row({"spectator" + std::to_string(k), format_double(basis.spectator_energies_mhz[k]),
                      std::to_string(basis.spectator_excitations[k])});
  }
  out.tables.emplace_back("spectrum", std::move(spectrum));

  const std::array<Complex, 4> elements = drive_matrix_elements(basis);
  CsvTable transitions({"transition", "frequency_mhz", "element_re", "element_im"});
  for (std::size_t k = 0; k < 4; ++k) {
    const auto [i, j] = kDiamondTransitions[k];
    transitions.add_row({std::to_string(i) + "-" + std::to_string(j), format_double(basis.transition_frequencies_mhz[k]),
                         format_double(elements[k].real()), format_double(elements[k].imag())});
  }
  out.tables.emplace_back("transitions", std::move(transitions));

  const std::vector<double> times = grid.times();
  const auto ideal_rows = level_rows(ideal);
  out.tables.emplace_back("ideal", level_table(times, ideal_rows));

  CsvTable deviation({"mode", "max_abs", "rms", "max_leakage"});
  for (std::size_t m = 0; m < c.modes.size(); ++m) {
    const Result& r = results[m];
    const std::string mode = to_string(c.modes[m]);

    CsvTable drive({"tone", "frequency_mhz", "amplitude_re", "amplitude_im"});
    for (std::size_t k = 0; k < 4; ++k) {
      const Tone& tone = r.program.tones[k];
      drive.add_row({std::to_string(k), format_double(tone.frequency_mhz), format_double(tone.amplitude_mhz.real()),
                     format_double(tone.amplitude_mhz.imag())});
    }
    out.tables.emplace_back("drive_" + mode, std::move(drive));

    std::vector<std::string> bare_header{"t_us"};
    for (std::size_t na = 0; na < kTransmonLevels; ++na) {
      for (std::size_t nb = 0; nb < kTransmonLevels; ++nb) {
        bare_header.push_back("P_" + std::to_string(na) + std::to_string(nb));
      }
    }
    CsvTable bare(bare_header);
    for (std::size_t s = 0; s < r.traj.size(); ++s) {
      std::vector<double> row{r.traj.times[s]};
      const auto& p = r.traj.populations[s];
      row.insert(row.end(), p.begin(), p.end());
      bare.add_row(row);
    }
    out.tables.emplace_back("bare_" + mode, std::move(bare));

    CsvTable dressed({"t_us", "P0", "P1", "P2", "P3", "leakage"});
    for (std::size_t s = 0; s < r.proj.times.size(); ++s) {
      const auto& p = r.proj.populations[s];
      dressed.add_row({r.proj.times[s], p[0], p[1], p[2], p[3], r.proj.leakage[s]});
    }
    out.tables.emplace_back("dressed_" + mode, std::move(dressed));

    deviation.add_row({mode, format_double(r.dev.max_abs), format_double(r.dev.rms),
                       format_double(r.proj.max_leakage())});
    out.summary["rms_" + mode] = r.dev.rms;
    out.summary["max_abs_" + mode] = r.dev.max_abs;
    out.summary["max_leakage_" + mode] = r.proj.max_leakage();

    if (plots) {
      std::vector<Series> series = level_series(r.proj.populations);
      for (std::size_t k = 0; k < 4; ++k) {
        Series s{"ideal P" + std::to_string(k), {}};
        for (const auto& p : ideal_rows) s.y.push_back(p[k]);
        series.push_back(std::move(s));
      }
      series.push_back({"leakage", r.proj.leakage});
      out.plots.emplace_back("dressed_" + mode,
                             line_plot({"dressed diamond populations (" + mode + ")", "t (us)", "population"}, times,
                                       series));
    }
  }
  out.tables.emplace_back("deviation", std::move(deviation));
  out.summary["min_transition_separation_mhz"] = basis.min_transition_separation_mhz();
  if (c.circuit.weakly_anharmonic()) {
    out.notes["warning"] = "|kappa| <= g: the two-excitation diamond level is not isolated";
  }
  return out;
}

// --- bell-check ---

// 53-bit uniform in [0, 1), identical on every standard library.
double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

ScenarioOutput bell_check(const ScenarioConfig& config) {
  const auto& c = std::get<BellCheckConfig>(config.params);
  std::mt19937_64 rng(config.seed);
  CsvTable t({"draw", "mass_mhz", "px_mhz", "residual"});
  double worst = 0.0;
  for (std::size_t i = 0; i < c.draws; ++i) {
    const double mass = c.max_mhz * unit_uniform(rng);
    const double px = c.max_mhz * (2.0 * unit_uniform(rng) - 1.0);
    const FactoredCheck check = factored_check(DiracParams{mass, {px, 0.0, 0.0}});
    t.add_row({static_cast<double>(i), mass, px, check.residual});
    worst = std::max(worst, check.residual);
  }
  ScenarioOutput out;
  out.tables.emplace_back("bell", std::move(t));
  out.summary["max_residual"] = worst;
  return out;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

const char* version_string() { return DIRACSIM_VERSION; }

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& task) {
  const std::size_t workers = std::min<std::size_t>(std::max(1u, threads), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::size_t failed_index = n;
  std::exception_ptr failure;
  const auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        task(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (i < failed_index) {
          failed_index = i;
          failure = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

const CsvTable& ScenarioOutput::table(const std::string& name) const {
  for (const auto& [n, t] : tables) {
    if (n == name) return t;
  }
  throw InvalidInput("no table named '" + name + "'");
}

ScenarioOutput compute_scenario(const ScenarioConfig& config, unsigned threads, bool plots) {
  const std::string& s = config.scenario;
  if (s == "free-dirac-scan") return free_dirac_scan(config, threads, plots);
  if (s == "spin-texture") return spin_texture_scenario(config, plots);
  if (s == "pair-production") return pair_production(config, threads, plots);
  if (s == "schwinger-scan") return schwinger_scan(config, plots);
  if (s == "circuit-validation") return circuit_validation(config, threads, plots);
  if (s == "bell-check") return bell_check(config);
  throw ConfigError("unknown scenario '" + s + "'");
}

ResultBundle run_scenario(const ScenarioConfig& config, const RunOptions& options) {
  ResultBundle bundle;
  bundle.output = compute_scenario(config, options.threads, options.svg);
  const std::filesystem::path root = options.out_dir.empty() ? config.output_dir : options.out_dir;
  bundle.directory = root / config.scenario;
  std::filesystem::create_directories(bundle.directory);

  for (const auto& [name, table] : bundle.output.tables) {
    const auto path = bundle.directory / (name + ".csv");
    table.write(path);
    bundle.files.push_back(path);
  }
  for (const auto& [name, svg] : bundle.output.plots) {
    const auto path = bundle.directory / (name + ".svg");
    std::ofstream f(path, std::ios::binary);
    f << svg;
    if (!f) throw std::runtime_error("write failed: " + path.string());
    bundle.files.push_back(path);
  }

  nlohmann::ordered_json manifest;
  manifest["scenario"] = config.scenario;
  manifest["version"] = version_string();
  manifest["timestamp"] = utc_timestamp();
  manifest["config"] = nlohmann::ordered_json::parse(config.resolved);
  nlohmann::json files = nlohmann::json::array();
  for (const auto& f : bundle.files) files.push_back(f.filename().string());
  manifest["files"] = files;
  manifest["summary"] = bundle.output.summary;
  manifest["notes"] = bundle.output.notes;
  const auto path = bundle.directory / "manifest.json";
  std::ofstream f(path, std::ios::binary);
  f << manifest.dump(2) << "\n";
  if (!f) throw std::runtime_error("write failed: " + path.string());
  bundle.files.push_back(path);
  return bundle;
}

}  // namespace diracsim
