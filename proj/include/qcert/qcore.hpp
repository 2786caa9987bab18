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

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qcert/config.hpp"

namespace qcert {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

namespace qcore {

// Single-qubit Pauli basis, indexed 0..3 as I, X, Y, Z.
const ComplexMatrix& pauli(int i);
const ComplexMatrix& pauli_x();
const ComplexMatrix& pauli_y();
const ComplexMatrix& pauli_z();
ComplexMatrix identity(int dim);

bool is_hermitian(const ComplexMatrix& m, double tolerance = tol().hermiticity);

// Kronecker product, row-major factor ordering (first argument = leftmost factor).
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix tensor(const std::vector<ComplexMatrix>& factors);
ComplexVector tensor(const ComplexVector& a, const ComplexVector& b);

// Hermitian, positive semidefinite, unit-trace matrix on a list of qubit factors.
struct DensityMatrix {
  ComplexMatrix matrix;
  std::vector<int> dims;

  DensityMatrix(ComplexMatrix m, std::vector<int> factor_dims);
  static DensityMatrix from_pure(const ComplexVector& psi, std::vector<int> factor_dims);

  int dim() const { return static_cast<int>(matrix.rows()); }
  int factors() const { return static_cast<int>(dims.size()); }
};

// Reduced state on the kept factors (indices into rho.dims, strictly increasing order
// not required; result factors follow the order given in `keep`).
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);
ComplexMatrix partial_trace_matrix(const ComplexMatrix& m, const std::vector<int>& dims,
                                   const std::vector<int>& keep);

// Permutes tensor factors: new factor p is old factor order[p].
DensityMatrix reorder_factors(const DensityMatrix& rho, const std::vector<int>& order);
ComplexMatrix reorder_factors_matrix(const ComplexMatrix& m, const std::vector<int>& dims,
                                     const std::vector<int>& order);

// Uhlmann fidelity F(rho, sigma) = ||sqrt(rho) sqrt(sigma)||_1^2.
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

// Smallest eigenvalue of a Hermitian matrix. Throws on non-Hermitian input.
double min_eigenvalue(const ComplexMatrix& m);
double max_eigenvalue(const ComplexMatrix& m);
double operator_norm(const ComplexMatrix& hermitian);

// PSD square root. Eigenvalues in [-state_psd, 0) are clamped to zero; anything
// more negative is rejected as an invalid state rather than noise.
ComplexMatrix sqrt_psd(const ComplexMatrix& m, double negative_floor = tol().state_psd);

double purity(const DensityMatrix& rho);

// Real coefficients c_s with m = sum_s c_s * PauliString(s). Strings are indexed
// base-4 (digit 0..3 = I,X,Y,Z), most significant digit = first tensor factor.
struct PauliExpansion {
  int qubits = 0;
  std::vector<double> coeffs;  // length 4^qubits

  double coeff(const std::string& label) const;  // e.g. "XY", "IZ"
  std::string label(int index) const;
};

PauliExpansion pauli_expansion(const ComplexMatrix& m);
ComplexMatrix pauli_string(int index, int qubits);
ComplexMatrix pauli_resum(const PauliExpansion& expansion);

// Deterministic RNG helpers. All randomness in the library flows through
// explicit seeds; the uniform/normal generators are pinned to mt19937_64 output
// so results do not depend on the standard library's distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  // Derives an independent stream for a substream index (e.g. a sample or
  // measurement-context index).
  Rng derived(std::uint64_t stream) const;

  double uniform();                  // [0, 1)
  double uniform(double lo, double hi);
  double normal();                   // standard normal, Box-Muller
  std::uint64_t next_u64();

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

ComplexMatrix random_unitary(int dim, Rng& rng);
ComplexVector random_pure(int dim, Rng& rng);
DensityMatrix random_density(const std::vector<int>& dims, Rng& rng);

}  // namespace qcore
}  // namespace qcert
