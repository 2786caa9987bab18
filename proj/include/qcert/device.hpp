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

#include "qcert/bell.hpp"
#include "qcert/qcore.hpp"

namespace qcert::device {

using bell::MeasurementAngles;
using qcore::DensityMatrix;

// Conditional distribution or counts P(outcomes | settings) for 2 or 3 parties
// with two settings and outcomes +-1 per party. Context index packs settings
// as x + 2y (+ 4z); outcome index packs outcome bits the same way, bit 0
// meaning outcome +1 and bit 1 meaning outcome -1.
struct CorrelationTable {
  int parties = 2;
  bool sampled = false;
  long long shots = 0;  // per context, sampled mode only
  std::vector<std::vector<double>> values;  // [context][outcome]

  int contexts() const { return 1 << parties; }
  int outcomes() const { return 1 << parties; }
  static int outcome_sign(int outcome_index, int party) {
    return (outcome_index >> party) & 1 ? -1 : +1;
  }

  double probability(int context, int outcome) const;
  // E(settings) = <A B [C]> under the given context.
  double correlator(int context) const;
  // Marginal expectation of party p's observable at its setting, under the
  // given assignment of the other parties' settings (packed little-endian in
  // order of increasing party index, skipping p).
  double marginal(int party, int setting, int others) const;

  void validate() const;
};

// Exact Born-rule table for the angle-parameterized observables (XZ plane for
// two parties, XY plane for three).
CorrelationTable born_table(const DensityMatrix& rho, const MeasurementAngles& angles);

// One multinomial sample of size `shots` per context; deterministic per seed.
CorrelationTable sample_counts(const CorrelationTable& exact, long long shots,
                               std::uint64_t seed);

struct NoSignallingReport {
  struct Entry {
    int party = 0;
    int setting = 0;
    std::vector<double> estimates;  // one per foreign-setting context
    std::vector<double> stderrs;    // zero in exact mode
    double max_abs_diff = 0.0;      // largest pairwise |difference|
    double max_sigma = 0.0;         // largest pairwise deviation in sigma units
  };
  std::vector<Entry> entries;
  bool sampled = false;
  double threshold_sigma = 3.0;
  double max_abs_diff = 0.0;
  double max_sigma = 0.0;
  bool pass = false;
};

// Exact tables are compared entrywise at the exact no-signalling tolerance;
// sampled tables compare pairwise marginal differences against their combined
// multinomial standard errors at the given threshold.
NoSignallingReport no_signalling_check(const CorrelationTable& table, double threshold_sigma);

// Empirical Bell combination from a table: CHSH E00+E01+E10-E11 for two
// parties, the Mermin combination for three.
double bell_value(const CorrelationTable& table);

// Test fixture: copies the table and shifts one party's conditional outcome
// distribution by `shift` in a single context, breaking no-signalling.
CorrelationTable inject_signalling(const CorrelationTable& exact, double shift = 0.05);

// CSV round trip. Counts serialize as integers and reparse losslessly.
std::string to_csv(const CorrelationTable& table);
CorrelationTable from_csv(const std::string& csv);

}  // namespace qcert::device
