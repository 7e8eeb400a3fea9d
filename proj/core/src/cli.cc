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

#include "diracsim/cli.h"

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "diracsim/config.h"
#include "diracsim/errors.h"
#include "diracsim/scenarios.h"

namespace diracsim {

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"Dirac-equation diamond simulator", "diracsim"};
  app.require_subcommand(1);

  std::string config_path;
  RunOptions run_options;
  bool no_svg = false;
  CLI::App* run = app.add_subcommand("run", "Run the scenario described by a JSON config");
  run->add_option("config", config_path, "Config file")->required();
  run->add_option("--out", run_options.out_dir, "Output root (overrides output_dir)");
  run->add_option("--threads", run_options.threads, "Worker threads")->check(CLI::PositiveNumber);
  run->add_flag("--no-svg", no_svg, "Skip SVG plots");

  app.add_subcommand("list-scenarios", "Print the scenario names");

  std::string scenario;
  CLI::App* defaults = app.add_subcommand("print-defaults", "Print the full default config of a scenario");
  defaults->add_option("scenario", scenario, "Scenario name")->required();

  app.add_subcommand("version", "Print the version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kExitConfigError;
  }

  try {
    if (app.got_subcommand("list-scenarios")) {
      for (const auto& name : scenario_names()) std::cout << name << "\n";
    } else if (app.got_subcommand("version")) {
      std::cout << "diracsim " << version_string() << "\n";
    } else if (app.got_subcommand("print-defaults")) {
      std::cout << default_config_text(scenario);
    } else {
      run_options.svg = !no_svg;
      const ScenarioConfig config = load_config(config_path);
      const ResultBundle bundle = run_scenario(config, run_options);
      std::cout << "wrote " << bundle.files.size() << " files to " << bundle.directory.string() << "\n";
    }
  } catch (const ConvergenceFailure& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumericalFailure;
  } catch (const Error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIoError;
  }
  return kExitOk;
}

}  // namespace diracsim
