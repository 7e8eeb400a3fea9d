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

#include <string>
#include <vector>

namespace diracsim {

struct Series {
  std::string name;
  std::vector<double> y;
};

struct PlotLabels {
  std::string title;
  std::string x;
  std::string y;
};

// Polyline chart with a legend; non-finite points break the line.
std::string line_plot(const PlotLabels& labels, const std::vector<double>& x, const std::vector<Series>& series);

struct Arrow {
  double x = 0.0;
  double y = 0.0;
  double u = 0.0;
  double v = 0.0;
};

// Arrows drawn at (x, y) with direction (u, v), scaled to the plot.
// Arrows with non-finite coordinates are skipped.
std::string quiver_plot(const PlotLabels& labels, const std::vector<Arrow>& arrows);

}  // namespace diracsim
