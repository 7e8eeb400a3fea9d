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
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace diracsim {

// Shortest string that parses back to the same double; "inf", "-inf", "nan".
std::string format_double(double value);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  const std::vector<std::string>& header() const { return header_; }
  std::size_t rows() const { return rows_.size(); }
  const std::vector<std::string>& row(std::size_t i) const { return rows_[i]; }

  // Throws InvalidInput on a column-count mismatch.
  void add_row(std::span<const double> values);
  void add_row(std::initializer_list<double> values) { add_row(std::span<const double>(values.begin(), values.size())); }
  void add_row(std::vector<std::string> cells);

  std::string to_string() const;
  void write(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

// Minimal reader for files produced by CsvTable; no quoting support.
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace diracsim
