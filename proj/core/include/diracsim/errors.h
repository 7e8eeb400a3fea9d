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

#include <stdexcept>
#include <string>

namespace diracsim {

// Base class for every error raised by the library. The CLI maps
// subclasses onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed arguments: non-finite entries, dimension mismatch, bad index.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// Drive configuration for which the requested quantity is undefined
// (all-zero couplings, zero momentum for helicity, zero energy shell).
class DegenerateDrive : public Error {
 public:
  using Error::Error;
};

class UnsupportedConfiguration : public Error {
 public:
  using Error::Error;
};

// Step refinement or an iterative solver did not reach its tolerance.
class ConvergenceFailure : public Error {
 public:
  using Error::Error;
};

// Dressed-level labels cannot be assigned without ambiguity.
class DegenerateSpectrum : public Error {
 public:
  using Error::Error;
};

// Bad or unknown keys in a scenario configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace diracsim
