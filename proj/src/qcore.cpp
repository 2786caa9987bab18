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

#include "qcert/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qcert::qcore {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<int> strides_of(const std::vector<int>& dims) {
  std::vector<int> s(dims.size(), 1);
  for (int k = static_cast<int>(dims.size()) - 2; k >= 0; --k) {
    s[k] = s[k + 1] * dims[k + 1];
  }
  return s;
}

}  // namespace

const ComplexMatrix& pauli(int i) {
  static const ComplexMatrix mats[4] = {
      (ComplexMatrix(2, 2) << 1, 0, 0, 1).finished(),
      (ComplexMatrix(2, 2) << 0, 1, 1, 0).finished(),
      (ComplexMatrix(2, 2) << 0, Complex(0, -1), Complex(0, 1), 0).finished(),
      (ComplexMatrix(2, 2) << 1, 0, 0, -1).finished()};
  require(i >= 0 && i < 4, "pauli index out of range");
  return mats[i];
}

const ComplexMatrix& pauli_x() { return pauli(1); }
const ComplexMatrix& pauli_y() { return pauli(2); }
const ComplexMatrix& pauli_z() { return pauli(3); }

ComplexMatrix identity(int dim) { return ComplexMatrix::Identity(dim, dim); }

bool is_hermitian(const ComplexMatrix& m, double tolerance) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tolerance;
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix tensor(const std::vector<ComplexMatrix>& factors) {
  require(!factors.empty(), "tensor: empty factor list");
  ComplexMatrix out = factors.front();
  for (std::size_t k = 1; k < factors.size(); ++k) out = tensor(out, factors[k]);
  return out;
}

ComplexVector tensor(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

DensityMatrix::DensityMatrix(ComplexMatrix m, std::vector<int> factor_dims)
    : matrix(std::move(m)), dims(std::move(factor_dims)) {
  require(matrix.rows() == matrix.cols(), "density matrix must be square");
  require(!dims.empty() && dims.size() <= 4, "density matrix holds 1 to 4 qubit factors");
  int prod = 1;
  for (int d : dims) {
    require(d == 2, "tensor factors must be qubits");
    prod *= d;
  }
  require(prod == matrix.rows(), "factor dimensions do not match matrix size");
  require(is_hermitian(matrix, tol().hermiticity), "density matrix must be Hermitian");
  require(std::abs(matrix.trace().real() - 1.0) <= tol().state_trace &&
              std::abs(matrix.trace().imag()) <= tol().state_trace,
          "density matrix must have unit trace");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(matrix, Eigen::EigenvaluesOnly);
  require(es.eigenvalues().minCoeff() >= -tol().state_psd,
          "density matrix must be positive semidefinite");
}

DensityMatrix DensityMatrix::from_pure(const ComplexVector& psi, std::vector<int> factor_dims) {
  require(std::abs(psi.norm() - 1.0) <= 1e-10, "pure state vector must be normalized");
  return DensityMatrix(psi * psi.adjoint(), std::move(factor_dims));
}

ComplexMatrix partial_trace_matrix(const ComplexMatrix& m, const std::vector<int>& dims,
                                   const std::vector<int>& keep) {
  const int n = static_cast<int>(dims.size());
  require(!keep.empty(), "partial_trace: keep set must be nonempty");
  std::vector<bool> kept(n, false);
  for (int k : keep) {
    require(k >= 0 && k < n, "partial_trace: factor index out of range");
    require(!kept[k], "partial_trace: duplicate factor index");
    kept[k] = true;
  }
  int full = 1;
  for (int d : dims) full *= d;
  require(m.rows() == full && m.cols() == full, "partial_trace: dims do not match matrix");

  std::vector<int> traced;
  for (int k = 0; k < n; ++k) {
    if (!kept[k]) traced.push_back(k);
  }
  const std::vector<int> stride = strides_of(dims);

  int dkeep = 1;
  for (int k : keep) dkeep *= dims[k];
  int dtrace = 1;
  for (int k : traced) dtrace *= dims[k];

  // Base offset of a composite index given per-factor digits.
  auto offset = [&](const std::vector<int>& factors, int composite) {
    int off = 0;
    for (int p = static_cast<int>(factors.size()) - 1; p >= 0; --p) {
      const int d = dims[factors[p]];
      off += (composite % d) * stride[factors[p]];
      composite /= d;
    }
    return off;
  };

  ComplexMatrix out = ComplexMatrix::Zero(dkeep, dkeep);
  for (int r = 0; r < dkeep; ++r) {
    const int roff = offset(keep, r);
    for (int c = 0; c < dkeep; ++c) {
      const int coff = offset(keep, c);
      Complex acc = 0.0;
      for (int t = 0; t < dtrace; ++t) {
        const int toff = offset(traced, t);
        acc += m(roff + toff, coff + toff);
      }
      out(r, c) = acc;
    }
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
  ComplexMatrix reduced = partial_trace_matrix(rho.matrix, rho.dims, keep);
  std::vector<int> new_dims;
  new_dims.reserve(keep.size());
  for (int k : keep) new_dims.push_back(rho.dims[k]);
  return DensityMatrix(std::move(reduced), std::move(new_dims));
}

ComplexMatrix reorder_factors_matrix(const ComplexMatrix& m, const std::vector<int>& dims,
                                     const std::vector<int>& order) {
  const int n = static_cast<int>(dims.size());
  require(static_cast<int>(order.size()) == n, "reorder_factors: order size mismatch");
  std::vector<bool> seen(n, false);
  for (int k : order) {
    require(k >= 0 && k < n && !seen[k], "reorder_factors: not a permutation");
    seen[k] = true;
  }
  const std::vector<int> stride = strides_of(dims);
  std::vector<int> new_dims(n);
  for (int p = 0; p < n; ++p) new_dims[p] = dims[order[p]];
  const std::vector<int> new_stride = strides_of(new_dims);

  const int full = static_cast<int>(m.rows());
  // old_index(new_index): digit p of the new index is the digit order[p] of the old one.
  std::vector<int> map(full);
  for (int idx = 0; idx < full; ++idx) {
    int rem = idx, old = 0;
    for (int p = 0; p < n; ++p) {
      const int digit = rem / new_stride[p];
      rem %= new_stride[p];
      old += digit * stride[order[p]];
    }
    map[idx] = old;
  }
  ComplexMatrix out(full, full);
  for (int i = 0; i < full; ++i) {
    for (int j = 0; j < full; ++j) out(i, j) = m(map[i], map[j]);
  }
  return out;
}

DensityMatrix reorder_factors(const DensityMatrix& rho, const std::vector<int>& order) {
  ComplexMatrix m = reorder_factors_matrix(rho.matrix, rho.dims, order);
  std::vector<int> new_dims(order.size());
  for (std::size_t p = 0; p < order.size(); ++p) new_dims[p] = rho.dims[order[p]];
  return DensityMatrix(std::move(m), std::move(new_dims));
}

double min_eigenvalue(const ComplexMatrix& m) {
  require(is_hermitian(m), "min_eigenvalue: input must be Hermitian");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double max_eigenvalue(const ComplexMatrix& m) {
  require(is_hermitian(m), "max_eigenvalue: input must be Hermitian");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

double operator_norm(const ComplexMatrix& hermitian) {
  require(is_hermitian(hermitian), "operator_norm: input must be Hermitian");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

ComplexMatrix sqrt_psd(const ComplexMatrix& m, double negative_floor) {
  require(is_hermitian(m), "sqrt_psd: input must be Hermitian");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m);
  Eigen::VectorXd vals = es.eigenvalues();
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    if (vals(i) < -negative_floor) {
      throw std::domain_error("sqrt_psd: matrix has a genuinely negative eigenvalue");
    }
    vals(i) = vals(i) > 0.0 ? std::sqrt(vals(i)) : 0.0;
  }
  return es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require(rho.dim() == sigma.dim(), "fidelity: dimension mismatch");
  const ComplexMatrix a = sqrt_psd(rho.matrix);
  const ComplexMatrix b = sqrt_psd(sigma.matrix);
  Eigen::JacobiSVD<ComplexMatrix> svd(a * b);
  const double trace_norm = svd.singularValues().sum();
  return trace_norm * trace_norm;
}

double purity(const DensityMatrix& rho) {
  return (rho.matrix * rho.matrix).trace().real();
}

std::string PauliExpansion::label(int index) const {
  static const char letters[] = {'I', 'X', 'Y', 'Z'};
  std::string s(qubits, 'I');
  for (int p = qubits - 1; p >= 0; --p) {
    s[p] = letters[index % 4];
    index /= 4;
  }
  return s;
}

double PauliExpansion::coeff(const std::string& lbl) const {
  require(static_cast<int>(lbl.size()) == qubits, "pauli label length mismatch");
  int index = 0;
  for (char ch : lbl) {
    int digit = -1;
    switch (ch) {
      case 'I': digit = 0; break;
      case 'X': digit = 1; break;
      case 'Y': digit = 2; break;
      case 'Z': digit = 3; break;
      default: break;
    }
    require(digit >= 0, "invalid pauli label character");
    index = index * 4 + digit;
  }
  return coeffs[index];
}

ComplexMatrix pauli_string(int index, int qubits) {
  ComplexMatrix out = ComplexMatrix::Ones(1, 1);
  std::vector<int> digits(qubits);
  for (int p = qubits - 1; p >= 0; --p) {
    digits[p] = index % 4;
    index /= 4;
  }
  for (int p = 0; p < qubits; ++p) out = tensor(out, pauli(digits[p]));
  return out;
}

PauliExpansion pauli_expansion(const ComplexMatrix& m) {
  const int dim = static_cast<int>(m.rows());
  int qubits = 0;
  while ((1 << qubits) < dim) ++qubits;
  require((1 << qubits) == dim && m.cols() == dim,
          "pauli_expansion: dimension must be a power of 2");
  require(is_hermitian(m), "pauli_expansion: input must be Hermitian");

  PauliExpansion out;
  out.qubits = qubits;
  const int count = 1 << (2 * qubits);
  out.coeffs.resize(count);
  for (int s = 0; s < count; ++s) {
    const ComplexMatrix str = pauli_string(s, qubits);
    out.coeffs[s] = (m * str).trace().real() / dim;
  }
  return out;
}

ComplexMatrix pauli_resum(const PauliExpansion& expansion) {
  const int dim = 1 << expansion.qubits;
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (std::size_t s = 0; s < expansion.coeffs.size(); ++s) {
    if (expansion.coeffs[s] == 0.0) continue;
    out += expansion.coeffs[s] * pauli_string(static_cast<int>(s), expansion.qubits);
  }
  return out;
}

Rng::Rng(std::uint64_t seed) : state_(seed ^ 0xd1b54a32d192ed03ULL) {
  // One warm-up step so that nearby seeds decorrelate.
  splitmix64(state_);
}

Rng Rng::derived(std::uint64_t stream) const {
  std::uint64_t s = state_ ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
  splitmix64(s);
  return Rng(s);
}

std::uint64_t Rng::next_u64() { return splitmix64(state_); }

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 1e-300) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * M_PI * u2;
  spare_ = r * std::sin(theta);
  have_spare_ = true;
  return r * std::cos(theta);
}

ComplexMatrix random_unitary(int dim, Rng& rng) {
  ComplexMatrix g(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) g(i, j) = Complex(rng.normal(), rng.normal());
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < dim; ++i) {
    const Complex d = r(i, i);
    const Complex phase = d == Complex(0, 0) ? Complex(1, 0) : d / std::abs(d);
    q.col(i) *= phase;
  }
  return q;
}

ComplexVector random_pure(int dim, Rng& rng) {
  ComplexVector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = Complex(rng.normal(), rng.normal());
  v.normalize();
  return v;
}

DensityMatrix random_density(const std::vector<int>& dims, Rng& rng) {
  int dim = 1;
  for (int d : dims) dim *= d;
  ComplexMatrix g(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) g(i, j) = Complex(rng.normal(), rng.normal());
  }
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = (rho + rho.adjoint()) / 2.0;
  return DensityMatrix(std::move(rho), dims);
}

}  // namespace qcert::qcore
