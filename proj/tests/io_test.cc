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

#include <charconv>
#include <cmath>
#include <filesystem>
#include <limits>
#include <random>
#include <string>

#include "diracsim/config.h"
#include "diracsim/csv.h"
#include "diracsim/errors.h"
#include "diracsim/svg.h"
#include "gtest/gtest.h"

using namespace diracsim;

namespace {

std::size_t count(const std::string& haystack, const std::string& needle) {
  std::size_t n = 0;
  for (std::size_t pos = haystack.find(needle); pos != std::string::npos; pos = haystack.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST(csv, format_double_round_trips) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double v = u(rng) * std::pow(10.0, static_cast<int>(rng() % 40) - 20);
    const std::string s = format_double(v);
    double back = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    ASSERT_EQ(back, v) << s;
  }
  EXPECT_EQ(format_double(0.5), "0.5");
  EXPECT_EQ(format_double(-0.0), "0");
  EXPECT_EQ(format_double(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(format_double(-std::numeric_limits<double>::infinity()), "-inf");
  EXPECT_EQ(format_double(std::nan("")), "nan");
}

TEST(csv, table_layout_and_round_trip) {
  CsvTable t({"a", "b"});
  t.add_row({1.0, 0.25});
  t.add_row(std::vector<std::string>{"x", "y"});
  EXPECT_EQ(t.to_string(), "a,b\n1,0.25\nx,y\n");
  EXPECT_THROW(t.add_row({1.0}), InvalidInput);
  EXPECT_THROW(CsvTable({}), InvalidInput);

  const auto path = std::filesystem::temp_directory_path() / "diracsim_csv_test.csv";
  t.write(path);
  const CsvTable back = read_csv(path);
  EXPECT_EQ(back.header(), t.header());
  EXPECT_EQ(back.rows(), 2u);
  EXPECT_EQ(back.row(0)[1], "0.25");
  std::filesystem::remove(path);
}

TEST(svg, line_plot) {
  const std::vector<double> x{0.0, 1.0, 2.0, 3.0};
  const std::string svg =
      line_plot({"title <1>", "t", "P"}, x, {{"a", {0.0, 0.5, 1.0, 0.5}}, {"b", {1.0, std::nan(""), 0.0, 0.2}}});
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  EXPECT_EQ(count(svg, "<path"), 2u);
  EXPECT_NE(svg.find("title &lt;1&gt;"), std::string::npos);
  // The NaN splits series b into two pen-down runs.
  EXPECT_EQ(count(svg, " M"), 3u);
  EXPECT_THROW(line_plot({}, x, {{"short", {1.0}}}), InvalidInput);
}

TEST(svg, quiver_plot_skips_points_at_infinity) {
  const double inf = std::numeric_limits<double>::infinity();
  const std::string svg = quiver_plot({"q", "X", "Y"}, {{0.0, 0.0, 1.0, 0.0}, {1.0, 1.0, 0.0, 1.0}, {inf, inf, 0.0, 1.0}});
  EXPECT_EQ(count(svg, "<line"), 2u);
}

TEST(config, defaults_parse_for_every_scenario) {
  ASSERT_EQ(scenario_names().size(), 6u);
  for (const auto& name : scenario_names()) {
    const std::string text = default_config_text(name);
    const ScenarioConfig c = parse_config(text);
    EXPECT_EQ(c.scenario, name);
    EXPECT_EQ(c.resolved, text);
    // The resolved echo parses back to itself.
    EXPECT_EQ(parse_config(c.resolved).resolved, c.resolved);
  }
  EXPECT_THROW(default_config_text("nope"), ConfigError);
}

TEST(config, pair_production_defaults_carry_chirp) {
  const ScenarioConfig c = parse_config(default_config_text("pair-production"));
  const auto& p = std::get<PairProductionConfig>(c.params);
  EXPECT_EQ(p.chirp.rate_mhz2, 100.0);
  EXPECT_EQ(p.chirp.start_mhz, -50.0);
  EXPECT_EQ(p.chirp.end_mhz, 50.0);
  EXPECT_EQ(p.scan.masses().size(), 41u);
  EXPECT_EQ(p.scan.masses().back(), 20.0);
}

TEST(config, overrides_merge_into_defaults) {
  const ScenarioConfig c =
      parse_config(R"({"scenario": "free-dirac-scan", "seed": 9, "physics": {"masses_mhz": [1, 2.5]}})");
  const auto& p = std::get<FreeDiracScanConfig>(c.params);
  EXPECT_EQ(p.masses_mhz, (std::vector<double>{1.0, 2.5}));
  EXPECT_EQ(p.momentum_mhz[0], 20.0);
  EXPECT_EQ(c.seed, 9u);
  EXPECT_NE(c.resolved.find("\"seed\": 9"), std::string::npos);
}

TEST(config, rejects_bad_input) {
  const auto bad = [](const std::string& text) { EXPECT_THROW(parse_config(text), ConfigError) << text; };
  bad("not json");
  bad(R"({"physics": {}})");
  bad(R"({"scenario": "warp-drive"})");
  bad(R"({"scenario": "bell-check", "colour": 1})");
  bad(R"({"scenario": "bell-check", "physics": {"draws": 3, "extra": 1}})");
  bad(R"({"scenario": "bell-check", "physics": {"draws": "many"}})");
  bad(R"({"scenario": "bell-check", "physics": {"draws": 2.5}})");
  bad(R"({"scenario": "free-dirac-scan", "physics": {"masses_mhz": [-1]}})");
  bad(R"({"scenario": "free-dirac-scan", "physics": {"masses_mhz": []}})");
  bad(R"({"scenario": "free-dirac-scan", "physics": {"momentum_mhz": [1, 2]}})");
  bad(R"({"scenario": "pair-production", "physics": {"chirp": {"rate_mhz2": -1}}})");
  bad(R"({"scenario": "pair-production", "physics": {"chirp": {"target": "q"}}})");
  bad(R"({"scenario": "circuit-validation", "physics": {"circuit": {"kappa_mhz": 5}}})");
  bad(R"({"scenario": "circuit-validation", "model": "ideal4"})");
  bad(R"({"scenario": "spin-texture", "model": "circuit9"})");
  bad(R"({"scenario": "circuit-validation", "physics": {"frame": "sideways"}})");
  bad(R"({"scenario": "spin-texture", "grid": {"n_polar": 3}})");
  bad(R"({"scenario": "schwinger-scan", "numerics": {"tolerance": 0}})");
}

TEST(config, load_missing_file) {
  EXPECT_THROW(load_config("/nonexistent/diracsim.json"), ConfigError);
}
