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

#include <optional>
#include <vector>

#include "qcert/bell.hpp"
#include "qcert/qcore.hpp"

namespace qcert::selftest {

using bell::MeasurementAngles;
using bell::Plane;
using bell::Scenario;
using qcore::DensityMatrix;

// Operator-inequality constants: K >= slope * W - offset * I.
inline const double kChshSlope = (4.0 + 5.0 * std::sqrt(2.0)) / 16.0;
inline const double kChshOffset = (1.0 + 2.0 * std::sqrt(2.0)) / 4.0;
inline const double kMerminSlope = (2.0 + std::sqrt(2.0)) / 8.0;
inline const double kMerminOffset = 1.0 / std::sqrt(2.0);

// CPTP map stored in Choi form on H_in (x) H_out, C = sum_ij |i><j| (x) L(|i><j|).
struct ExtractionChannel {
  int in_dim = 2;
  int out_dim = 2;
  ComplexMatrix choi;

  static ExtractionChannel from_choi(ComplexMatrix choi, int in_dim, int out_dim);
  static ExtractionChannel from_kraus(const std::vector<ComplexMatrix>& kraus);
  static ExtractionChannel identity(int dim);

  std::vector<ComplexMatrix> kraus() const;
  ComplexMatrix apply(const ComplexMatrix& rho) const;
  ComplexMatrix apply_adjoint(const ComplexMatrix& op) const;
  // Applies the channel to tensor factor `slot` of a state whose factor
  // dimensions are `dims`; the slot dimension changes from in_dim to out_dim.
  ComplexMatrix apply_to_factor(const ComplexMatrix& rho, const std::vector<int>& dims,
                                int slot) const;
  void validate() const;  // throws unless Choi is PSD with Tr_out C = I
};

// Angle-dependent dephasing channel: L(rho) = (1+g)/2 rho + (1-g)/2 G rho G
// with g(t) = (1+sqrt(2))(cos t + sin t - 1) and G = X below pi/4, Z (XZ plane)
// or Y (XY plane) at or above pi/4.
ExtractionChannel extraction_channel(double angle, Plane plane);
double extraction_gain(double angle);

struct TargetState {
  DensityMatrix projector;
  Scenario scenario;
};

TargetState chsh_target();    // the pure maximal violator of W(pi/4, pi/4)
TargetState mermin_target();  // GHZ at the phase that reaches Mermin value 4

struct FidelityOperator {
  ComplexMatrix matrix;
  MeasurementAngles angles;
  Scenario scenario;
};

// Heisenberg-picture image of the target projector under the extraction
// channels; its expectation on rho is the fidelity extracted by them.
FidelityOperator fidelity_operator_chsh(const MeasurementAngles& angles);
FidelityOperator fidelity_operator_mermin(const MeasurementAngles& angles);

// min_eig(K - slope*W + offset*I); nonnegative (up to tolerance) for every
// angle tuple when the channel construction is the right one.
double chsh_margin(const MeasurementAngles& angles);
double mermin_margin(const MeasurementAngles& angles);

struct BoundReport {
  double beta = 0.0;
  double lower = 0.0;
  std::optional<double> upper;
  Scenario scenario = Scenario::CHSH;
  bool trivial = false;  // Mermin case below the nontriviality threshold
};

// Analytic robustness bounds. CHSH requires beta in [2, 2 sqrt(2)]; the Mermin
// bound is tight (upper equals lower), returns the trivial value 1/2 for
// beta <= 2 sqrt(2) and rejects beta > 4.
BoundReport chsh_bounds(double beta);
BoundReport mermin_bound(double beta);

// Violation at which the CHSH lower bound crosses 1/2.
double chsh_nontrivial_threshold();

struct SeesawOptions {
  std::uint64_t seed = 0;
  int random_restarts = 8;
  int max_rounds = 200;
  double improvement_tol = tol().seesaw_improvement;
};

struct SeesawResult {
  double xi = 0.0;
  std::vector<ExtractionChannel> channels;
  std::vector<double> objective_trace;  // best run, one entry per round
  double start_value = 0.0;             // deterministic-start fidelity
};

// Lower bound on the extractability of rho toward a pure target by alternating
// exact single-party optimization over Choi matrices (each step is a linear
// objective over the CPTP set solved by an interior-point method). local_dims
// gives each party's lab dimension; rho's factors must already be grouped in
// that order. Deterministic for a fixed seed.
SeesawResult extractability(const DensityMatrix& rho, const TargetState& target,
                            const std::vector<int>& local_dims, const SeesawOptions& opts = {});

// Convenience for the register family: regroups X,Y,A,B into (X,A) | (Y,B)
// labs and runs the see-saw toward the CHSH target.
SeesawResult extractability_registered(const DensityMatrix& rho_xyab,
                                       const SeesawOptions& opts = {});

// Exact solver for max Tr(C X) over Choi matrices (C PSD, Tr_out C = I).
// Exposed for tests; `certificate_gap` (if given) receives the duality gap.
ComplexMatrix maximize_over_choi(const ComplexMatrix& cost, int in_dim, int out_dim,
                                 double* certificate_gap = nullptr);

}  // namespace qcert::selftest
