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
#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "diracsim/circuit.h"
#include "diracsim/dirac.h"
#include "diracsim/evolution.h"

namespace diracsim {

enum class Model { kIdeal4, kCircuit9 };

const char* to_string(Model model);

struct SampleGrid {
  double duration_us = 0.2;
  std::size_t samples = 401;

  TimeGrid time_grid() const { return TimeGrid{0.0, duration_us, samples}; }
};

struct FreeDiracScanConfig {
  std::array<double, 3> momentum_mhz{20.0, 0.0, 0.0};
  std::vector<double> masses_mhz{0.0, 5.0, 10.0, 15.0, 20.0};
  SampleGrid grid{0.2, 401};
  // Used only with the circuit9 model.
  CircuitParams circuit;
};

struct SpinTextureConfig {
  // Sphere |p| = m = shell_mhz.
  double shell_mhz = 20.0;
  TextureGrid grid;
};

struct MassScan {
  double min_mhz = 0.0;
  double max_mhz = 20.0;
  double step_mhz = 0.5;

  std::vector<double> masses() const;
};

struct PairProductionConfig {
  ChirpSchedule chirp;
  std::vector<double> trace_masses_mhz{1.0, 40.0};
  std::size_t trace_samples = 401;
  MassScan scan;
};

struct SchwingerScanConfig {
  ChirpSchedule chirp;
  std::vector<double> masses_mhz{1.0, 2.0, 3.0, 4.0, 5.0, 6.0};
};

struct CircuitValidationConfig {
  CircuitParams circuit;
  DiracParams dirac{2.0, {2.0, 0.0, 0.0}};
  std::vector<DriveMode> modes{DriveMode::kNaive, DriveMode::kCalibrated};
  Frame frame = Frame::kRotating;
  SampleGrid grid{0.5, 201};
};

struct BellCheckConfig {
  std::size_t draws = 100;
  double max_mhz = 20.0;
};

using ScenarioParams = std::variant<FreeDiracScanConfig, SpinTextureConfig, PairProductionConfig,
                                    SchwingerScanConfig, CircuitValidationConfig, BellCheckConfig>;

struct ScenarioConfig {
  std::string scenario;
  Model model = Model::kIdeal4;
  std::string output_dir = "results";
  std::uint64_t seed = 1;
  // Max population change between step halvings.
  double tolerance = 1e-7;
  int max_refinements = 12;
  ScenarioParams params;
  // Fully resolved configuration, defaults merged, as pretty JSON.
  std::string resolved;
};

const std::vector<std::string>& scenario_names();

// Complete default configuration for a scenario as pretty JSON.
// Throws ConfigError for an unknown scenario.
std::string default_config_text(const std::string& scenario);

// Parses a JSON config, merging it over the scenario defaults. Unknown
// keys, wrong types and invalid physics raise ConfigError.
ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::filesystem::path& path);

}  // namespace diracsim
