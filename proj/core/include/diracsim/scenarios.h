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

#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "diracsim/config.h"
#include "diracsim/csv.h"

namespace diracsim {

const char* version_string();

// Runs task(i) for i in [0, n) on up to `threads` workers. The first
// failing index (lowest i) has its exception rethrown after all workers join.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& task);

struct ScenarioOutput {
  // Ordered as written; names carry no extension.
  std::vector<std::pair<std::string, CsvTable>> tables;
  std::vector<std::pair<std::string, std::string>> plots;
  std::map<std::string, double> summary;
  std::map<std::string, std::string> notes;

  const CsvTable& table(const std::string& name) const;
};

// Pure computation; no files touched.
ScenarioOutput compute_scenario(const ScenarioConfig& config, unsigned threads = 1, bool plots = true);

struct RunOptions {
  // Overrides config.output_dir when non-empty.
  std::string out_dir;
  unsigned threads = 1;
  bool svg = true;
};

struct ResultBundle {
  std::filesystem::path directory;
  std::vector<std::filesystem::path> files;  // CSVs, SVGs, manifest.json
  ScenarioOutput output;
};

// Writes <out>/<scenario>/<name>.csv, <name>.svg and manifest.json.
ResultBundle run_scenario(const ScenarioConfig& config, const RunOptions& options = {});

}  // namespace diracsim
