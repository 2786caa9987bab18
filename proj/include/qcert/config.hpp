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

namespace qcert {

// All numerical tolerances used across the library, in one place.
struct Tolerances {
  double hermiticity = 1e-12;      // max |M - M^dag| entrywise
  double state_trace = 1e-10;      // |Tr(rho) - 1|
  double state_psd = 1e-10;        // min eigenvalue floor for density matrices
  double eigen = 1e-12;            // eigensolver agreement
  double pure_overlap = 1e-9;      // fidelity vs pure-state overlap
  double expectation_imag = 1e-10; // imaginary part of Tr(rho W)
  double choi_psd = 1e-9;          // min eigenvalue floor for Choi matrices
  double cptp_trace = 1e-9;        // |Tr_out(C) - I| entrywise
  double margin = 1e-9;            // operator-inequality margin floor
  double no_signalling_exact = 1e-12;
  double seesaw_improvement = 1e-9;
  double violation_refine = 1e-8;  // golden-section stopping width
};

inline const Tolerances& tol() {
  static const Tolerances t{};
  return t;
}

}  // namespace qcert
