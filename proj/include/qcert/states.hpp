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
#include <string>

#include "qcert/qcore.hpp"

namespace qcert::states {

using qcore::DensityMatrix;

// GHZ phase at which the XY-plane Mermin parameterization reaches its algebraic
// maximum of 4 (see bell module; derived once by grid search and frozen here).
inline constexpr double kGhzPhase = 3.0 * M_PI / 4.0;

// cos(theta)|00> + sin(theta)|11>, theta in [0, pi/2].
DensityMatrix partially_entangled(double theta);

// v * Phi+ + (1 - v) * I/4, v in [0, 1].
DensityMatrix werner(double v);

// v * Phi+ + (1 - v) * dephased(Phi+); the second mixed two-qubit family.
DensityMatrix dephased_mix(double v);

// Register-labelled two-qubit components: 00/01/10 give (II + XX)/4, 11 gives
// the pure maximally entangled state whose Pauli form is
// (II + (XX + XZ + ZX - ZZ)/sqrt(2) + YY)/4.
enum class TauLabel { k00, k01, k10, k11 };
TauLabel tau_label_from_string(const std::string& s);  // "00", "01", "10", "11"
DensityMatrix tau_component(TauLabel label);

// Four-qubit register family, factor order X, Y, A, B:
// sum_xy p_xy |x><x| (x) |y><y| (x) tau_AB^xy with p_11 = nu and the other
// three weights (1 - nu)/3. Requires nu in (0, 1).
DensityMatrix rho_xyab(double nu);

// (|000> + e^{i phi}|111>)/sqrt(2); default phase maximizes the Mermin value.
DensityMatrix ghz(double phi = kGhzPhase);

// w * GHZ + (1 - w) * nu_ABC where nu_ABC is the two-qubit singlet on (A, B)
// tensored with |0> on C.
DensityMatrix tripartite_mixture(double w);
DensityMatrix biseparable_singlet();  // nu_ABC itself

// rho mixed with white noise: (1 - rate) * rho + rate * I/d.
DensityMatrix add_white_noise(const DensityMatrix& rho, double rate);

// Plain-text state description used by the CLI and config files.
struct StateSpec {
  std::string family;  // partial | werner | dephased | tau | rho_xyab | ghz | tripartite_mixture
  std::optional<double> theta;
  std::optional<double> weight;  // v or w depending on family
  std::optional<double> nu;
  std::optional<std::string> tau;  // register label
  std::optional<double> phi;

  std::string to_config() const;                       // key=value lines
  static StateSpec from_config(const std::string& s);  // parses the same format
};

DensityMatrix make_state(const StateSpec& spec);

}  // namespace qcert::states
