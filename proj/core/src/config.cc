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

#include "diracsim/config.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "diracsim/errors.h"
#include "nlohmann/json.hpp"

namespace diracsim {
namespace {

using json = nlohmann::ordered_json;

const char* to_string(Frame frame) { return frame == Frame::kLab ? "lab" : "rotating"; }

json circuit_json(const CircuitParams& c) {
  return {{"omega0_ghz", c.omega0_ghz}, {"kappa_mhz", c.kappa_mhz}, {"g_mhz", c.g_mhz}};
}

json chirp_json(const ChirpSchedule& c) {
  return {{"target", to_string(c.target)},
          {"start_mhz", c.start_mhz},
          {"end_mhz", c.end_mhz},
          {"rate_mhz2", c.rate_mhz2}};
}

json grid_json(const SampleGrid& g) { return {{"duration_us", g.duration_us}, {"samples", g.samples}}; }

json physics_defaults(const std::string& scenario) {
  if (scenario == "free-dirac-scan") {
    const FreeDiracScanConfig c;
    return {{"momentum_mhz", c.momentum_mhz}, {"masses_mhz", c.masses_mhz}, {"circuit", circuit_json(c.circuit)}};
  }
  if (scenario == "spin-texture") return {{"shell_mhz", SpinTextureConfig{}.shell_mhz}};
  if (scenario == "pair-production") {
    const PairProductionConfig c;
    return {{"chirp", chirp_json(c.chirp)},
            {"trace_masses_mhz", c.trace_masses_mhz},
            {"scan", {{"min_mhz", c.scan.min_mhz}, {"max_mhz", c.scan.max_mhz}, {"step_mhz", c.scan.step_mhz}}}};
  }
  if (scenario == "schwinger-scan") {
    const SchwingerScanConfig c;
    return {{"chirp", chirp_json(c.chirp)}, {"masses_mhz", c.masses_mhz}};
  }
  if (scenario == "circuit-validation") {
    const CircuitValidationConfig c;
    json modes = json::array();
    for (DriveMode m : c.modes) modes.push_back(to_string(m));
    return {{"circuit", circuit_json(c.circuit)},
            {"dirac", {{"mass_mhz", c.dirac.mass_mhz}, {"momentum_mhz", c.dirac.momentum_mhz}}},
            {"modes", modes},
            {"frame", to_string(c.frame)}};
  }
  if (scenario == "bell-check") {
    const BellCheckConfig c;
    return {{"draws", c.draws}, {"max_mhz", c.max_mhz}};
  }
  throw ConfigError("unknown scenario '" + scenario + "'");
}

json grid_defaults(const std::string& scenario) {
  if (scenario == "free-dirac-scan") return grid_json(FreeDiracScanConfig{}.grid);
  if (scenario == "circuit-validation") return grid_json(CircuitValidationConfig{}.grid);
  if (scenario == "spin-texture") {
    const TextureGrid g;
    return {{"n_polar", g.n_polar}, {"n_azimuthal", g.n_azimuthal}};
  }
  if (scenario == "pair-production") return {{"trace_samples", PairProductionConfig{}.trace_samples}};
  return json::object();
}

json defaults(const std::string& scenario) {
  const ScenarioConfig base;
  json j = {{"scenario", scenario},
            {"model", scenario == "circuit-validation" ? "circuit9" : "ideal4"},
            {"output_dir", base.output_dir},
            {"seed", base.seed},
            {"numerics", {{"tolerance", base.tolerance}, {"max_refinements", base.max_refinements}}},
            {"physics", physics_defaults(scenario)}};
  const json grid = grid_defaults(scenario);
  if (!grid.empty()) j["grid"] = grid;
  return j;
}

bool same_kind(const json& want, const json& got) {
  if (want.is_number_unsigned() || want.is_number_integer()) return got.is_number_integer();
  if (want.is_number()) return got.is_number();
  return want.type() == got.type();
}

void merge(json& into, const json& user, const std::string& path) {
  if (!user.is_object()) throw ConfigError("'" + path + "' must be an object");
  for (const auto& [key, value] : user.items()) {
    const std::string where = path.empty() ? key : path + "." + key;
    if (!into.contains(key)) throw ConfigError("unknown key '" + where + "'");
    json& slot = into[key];
    if (slot.is_object()) {
      merge(slot, value, where);
    } else if (!same_kind(slot, value)) {
      throw ConfigError("key '" + where + "' expects " + std::string(slot.type_name()) + ", got " +
                        value.type_name());
    } else {
      slot = value;
    }
  }
}

double finite(const json& j, const std::string& where) {
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError("'" + where + "' must be finite");
  return v;
}

std::vector<double> numbers(const json& j, const std::string& where) {
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) throw ConfigError("'" + where + "' must hold numbers");
    out.push_back(finite(v, where));
  }
  return out;
}

std::vector<double> masses(const json& j, const std::string& where) {
  std::vector<double> out = numbers(j, where);
  if (out.empty()) throw ConfigError("'" + where + "' must not be empty");
  for (double m : out) {
    if (m < 0.0) throw ConfigError("'" + where + "' entries must be >= 0");
  }
  return out;
}

std::array<double, 3> vec3(const json& j, const std::string& where) {
  const std::vector<double> v = numbers(j, where);
  if (v.size() != 3) throw ConfigError("'" + where + "' must have three entries");
  return {v[0], v[1], v[2]};
}

CircuitParams read_circuit(const json& j) {
  CircuitParams c;
  c.omega0_ghz = finite(j["omega0_ghz"], "omega0_ghz");
  c.kappa_mhz = finite(j["kappa_mhz"], "kappa_mhz");
  c.g_mhz = finite(j["g_mhz"], "g_mhz");
  c.validate();
  return c;
}

ChirpSchedule read_chirp(const json& j) {
  ChirpSchedule c;
  c.target = parse_chirp_target(j["target"].get<std::string>());
  c.start_mhz = finite(j["start_mhz"], "chirp.start_mhz");
  c.end_mhz = finite(j["end_mhz"], "chirp.end_mhz");
  c.rate_mhz2 = finite(j["rate_mhz2"], "chirp.rate_mhz2");
  c.validate();
  return c;
}

SampleGrid read_grid(const json& j) {
  SampleGrid g;
  g.duration_us = finite(j["duration_us"], "grid.duration_us");
  g.samples = j["samples"].get<std::size_t>();
  g.time_grid().validate();
  return g;
}

ScenarioParams read_params(const std::string& scenario, const json& cfg) {
  const json& p = cfg["physics"];
  if (scenario == "free-dirac-scan") {
    FreeDiracScanConfig c;
    c.momentum_mhz = vec3(p["momentum_mhz"], "physics.momentum_mhz");
    c.masses_mhz = masses(p["masses_mhz"], "physics.masses_mhz");
    c.circuit = read_circuit(p["circuit"]);
    c.grid = read_grid(cfg["grid"]);
    return c;
  }
  if (scenario == "spin-texture") {
    SpinTextureConfig c;
    c.shell_mhz = finite(p["shell_mhz"], "physics.shell_mhz");
    if (!(c.shell_mhz > 0.0)) throw ConfigError("'physics.shell_mhz' must be > 0");
    c.grid.n_polar = cfg["grid"]["n_polar"].get<std::size_t>();
    c.grid.n_azimuthal = cfg["grid"]["n_azimuthal"].get<std::size_t>();
    if (c.grid.n_polar < 8 || c.grid.n_azimuthal < 16) {
      throw ConfigError("'grid' needs n_polar >= 8 and n_azimuthal >= 16");
    }
    return c;
  }
  if (scenario == "pair-production") {
    PairProductionConfig c;
    c.chirp = read_chirp(p["chirp"]);
    c.trace_masses_mhz = masses(p["trace_masses_mhz"], "physics.trace_masses_mhz");
    c.trace_samples = cfg["grid"]["trace_samples"].get<std::size_t>();
    if (c.trace_samples < 2) throw ConfigError("'grid.trace_samples' must be >= 2");
    c.scan.min_mhz = finite(p["scan"]["min_mhz"], "physics.scan.min_mhz");
    c.scan.max_mhz = finite(p["scan"]["max_mhz"], "physics.scan.max_mhz");
    c.scan.step_mhz = finite(p["scan"]["step_mhz"], "physics.scan.step_mhz");
    if (c.scan.min_mhz < 0.0 || c.scan.max_mhz < c.scan.min_mhz || !(c.scan.step_mhz > 0.0)) {
      throw ConfigError("'physics.scan' needs 0 <= min_mhz <= max_mhz and step_mhz > 0");
    }
    return c;
  }
  if (scenario == "schwinger-scan") {
    SchwingerScanConfig c;
    c.chirp = read_chirp(p["chirp"]);
    c.masses_mhz = masses(p["masses_mhz"], "physics.masses_mhz");
    return c;
  }
  if (scenario == "circuit-validation") {
    CircuitValidationConfig c;
    c.circuit = read_circuit(p["circuit"]);
    c.dirac.mass_mhz = finite(p["dirac"]["mass_mhz"], "physics.dirac.mass_mhz");
    c.dirac.momentum_mhz = vec3(p["dirac"]["momentum_mhz"], "physics.dirac.momentum_mhz");
    c.dirac.validate();
    c.modes.clear();
    for (const auto& m : p["modes"]) {
      const std::string name = m.is_string() ? m.get<std::string>() : "";
      if (name == "naive") {
        c.modes.push_back(DriveMode::kNaive);
      } else if (name == "calibrated") {
        c.modes.push_back(DriveMode::kCalibrated);
      } else {
        throw ConfigError("'physics.modes' entries must be \"naive\" or \"calibrated\"");
      }
    }
    if (c.modes.empty()) throw ConfigError("'physics.modes' must not be empty");
    const std::string frame = p["frame"].get<std::string>();
    if (frame == "rotating") {
      c.frame = Frame::kRotating;
    } else if (frame == "lab") {
      c.frame = Frame::kLab;
    } else {
      throw ConfigError("'physics.frame' must be \"rotating\" or \"lab\"");
    }
    c.grid = read_grid(cfg["grid"]);
    return c;
  }
  BellCheckConfig c;
  c.draws = p["draws"].get<std::size_t>();
  c.max_mhz = finite(p["max_mhz"], "physics.max_mhz");
  if (c.draws == 0 || !(c.max_mhz > 0.0)) throw ConfigError("'physics' needs draws > 0 and max_mhz > 0");
  return c;
}

}  // namespace

const char* to_string(Model model) { return model == Model::kCircuit9 ? "circuit9" : "ideal4"; }

std::vector<double> MassScan::masses() const {
  std::vector<double> out;
  // Integer stepping keeps the grid free of accumulated rounding.
  const auto n = static_cast<std::size_t>(std::floor((max_mhz - min_mhz) / step_mhz + 1e-9));
  for (std::size_t i = 0; i <= n; ++i) out.push_back(min_mhz + step_mhz * static_cast<double>(i));
  return out;
}

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names{"free-dirac-scan", "spin-texture",       "pair-production",
                                              "schwinger-scan",  "circuit-validation", "bell-check"};
  return names;
}

std::string default_config_text(const std::string& scenario) { return defaults(scenario).dump(2) + "\n"; }

ScenarioConfig parse_config(const std::string& text) {
  json user;
  try {
    user = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!user.is_object() || !user.contains("scenario") || !user["scenario"].is_string()) {
    throw ConfigError("config must be an object with a \"scenario\" string");
  }
  const std::string scenario = user["scenario"].get<std::string>();
  json cfg = defaults(scenario);
  merge(cfg, user, "");

  ScenarioConfig out;
  out.scenario = scenario;
  try {
    const std::string model = cfg["model"].get<std::string>();
    if (model == "ideal4") {
      out.model = Model::kIdeal4;
    } else if (model == "circuit9") {
      out.model = Model::kCircuit9;
    } else {
      throw ConfigError("'model' must be \"ideal4\" or \"circuit9\"");
    }
    const bool circuit_ok = scenario == "free-dirac-scan" || scenario == "circuit-validation";
    const bool ideal_ok = scenario != "circuit-validation";
    if ((out.model == Model::kCircuit9 && !circuit_ok) || (out.model == Model::kIdeal4 && !ideal_ok)) {
      throw ConfigError("scenario '" + scenario + "' does not support model " + model);
    }
    out.output_dir = cfg["output_dir"].get<std::string>();
    out.seed = cfg["seed"].get<std::uint64_t>();
    out.tolerance = finite(cfg["numerics"]["tolerance"], "numerics.tolerance");
    if (!(out.tolerance > 0.0)) throw ConfigError("'numerics.tolerance' must be > 0");
    out.max_refinements = cfg["numerics"]["max_refinements"].get<int>();
    if (out.max_refinements < 1 || out.max_refinements > 20) {
      throw ConfigError("'numerics.max_refinements' must be in [1, 20]");
    }
    out.params = read_params(scenario, cfg);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  out.resolved = cfg.dump(2) + "\n";
  return out;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config file " + path.string());
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

}  // namespace diracsim
