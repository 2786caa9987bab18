// Copyright 2026 The qcert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qcert/device.hpp"
#include "qcert/selftest.hpp"
#include "qcert/states.hpp"

namespace qcert::runners {

// Exit statuses shared with the CLI: 0 = all assertions hold, 1 = usage or
// configuration error, 2 = a bound assertion failed.
enum class Status : int { Ok = 0, UsageError = 1, BoundViolation = 2 };

// A dataset is a header comment, a column list and formatted value rows; it
// renders identically on every run for a fixed configuration and seed.
struct Dataset {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> notes;  // extra '#' comment lines
  Status status = Status::Ok;

  std::string to_csv() const;
  std::string to_json() const;
};

std::string format_value(double v);

struct SweepConfig {
  states::StateSpec state;
  int samples = 1000;
  std::uint64_t seed = 0;
  double tolerance = tol().margin;
  int workers = 0;  // 0 = hardware concurrency
};

// Random-angle operator-inequality sweep for a bipartite state: rows
// (index, a, b, <W>, <K>, bound, margin); status 2 if any <K> < bound - tol.
Dataset run_fig2_sweep(const SweepConfig& config);

struct BandConfig {
  std::vector<double> nu_grid;  // defaults to 0.1 .. 0.9
  std::uint64_t seed = 0;
  double tolerance = 1e-6;
  selftest::SeesawOptions seesaw;
};

// Register-family band: rows (nu, beta, xi, lower, upper, width); checks
// lower - tol <= xi <= upper + tol and the band-width identity.
Dataset run_fig2d_band(const BandConfig& config);

struct Fig3Config {
  bool band_mode = false;           // false: random-angle sweep (a-mode)
  states::StateSpec state;          // sweep-mode state (default ghz)
  int samples = 1000;
  std::vector<double> w_grid = {0.90, 0.95, 1.0};
  std::uint64_t seed = 0;
  double sweep_tolerance = tol().margin;
  double band_tolerance = 5e-3;
  selftest::SeesawOptions seesaw;
  int workers = 0;
};

Dataset run_fig3(const Fig3Config& config);

struct Fig4Config {
  states::StateSpec state;         // singlet or ghz
  long long shots = 0;             // 0 = exact mode
  std::uint64_t seed = 0;
  double threshold_sigma = 3.0;
  bool inject_signalling = false;  // test fixture
};

Dataset run_fig4(const Fig4Config& config);

struct BoundsConfig {
  std::string scenario = "both";  // chsh | mermin | both
  int steps = 50;
};

Dataset run_bounds(const BoundsConfig& config);

struct MarginConfig {
  bell::MeasurementAngles angles;
  double tolerance = tol().margin;
};

Dataset run_margin(const MarginConfig& config);

}  // namespace qcert::runners
