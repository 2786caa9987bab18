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

#include "qcert/qcore.hpp"

namespace qcert::bell {

using qcore::DensityMatrix;

enum class Plane { XZ, XY };
enum class Scenario { CHSH, Mermin };

// One angle per party; c is present only in the tripartite scenario.
struct MeasurementAngles {
  double a = 0.0;
  double b = 0.0;
  std::optional<double> c;

  MeasurementAngles() = default;
  MeasurementAngles(double a_, double b_) : a(a_), b(b_) {}
  MeasurementAngles(double a_, double b_, double c_) : a(a_), b(b_), c(c_) {}
};

// Dichotomic qubit observable cos(angle) X + (-1)^r sin(angle) Z, or with Y in
// place of Z for the XY plane used in the tripartite scenario.
ComplexMatrix observable(double angle, int r, Plane plane);

struct BellOperator {
  ComplexMatrix matrix;
  Scenario scenario;
  MeasurementAngles angles;
};

// W(a,b) = sum_{j,k} (-1)^{jk} A_j(a) (x) B_k(b), XZ-plane observables.
BellOperator chsh_operator(const MeasurementAngles& angles);

// W(a,b,c) = A0 B0 C0 - A0 B1 C1 - A1 B0 C1 - A1 B1 C0, XY-plane observables.
BellOperator mermin_operator(const MeasurementAngles& angles);

double expectation(const DensityMatrix& rho, const ComplexMatrix& op);
double expectation(const DensityMatrix& rho, const BellOperator& op);

struct ViolationResult {
  double beta = 0.0;
  MeasurementAngles angles;  // per-party angles at the optimum
};

// Maximal CHSH value of a two-qubit state over arbitrary XZ-plane dichotomic
// observable pairs (each party's pair is a rotated frame plus a half-angle;
// the reported angle per party is the half-angle between its two observables,
// which is the quantity the extraction channels depend on). Coarse grid plus
// coordinate-wise golden-section refinement; agrees with the XZ-block
// Horodecki value 2 sqrt(t1^2 + t2^2).
ViolationResult max_chsh_violation(const DensityMatrix& rho);

// Maximal Mermin value over the XY-plane three-angle family on [0, pi/2]^3.
ViolationResult max_mermin_violation(const DensityMatrix& rho);

// XZ-block (respectively full-plane) correlation data used by the searches.
Eigen::Matrix2d xz_correlation_block(const DensityMatrix& rho);
double horodecki_xz_value(const DensityMatrix& rho);

}  // namespace qcert::bell
