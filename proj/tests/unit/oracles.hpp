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
//
// Test-only reference implementations, independent of the library's linear
// algebra backend.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "qcert/bell.hpp"
#include "qcert/qcore.hpp"

namespace oracle {

using qcert::Complex;
using qcert::ComplexMatrix;

// Cyclic Jacobi eigensolver for complex Hermitian matrices. Returns the
// eigenvalues in ascending order. Deliberately does not use Eigen's solvers.
inline std::vector<double> jacobi_eigenvalues(ComplexMatrix a) {
  const int n = static_cast<int>(a.rows());
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  for (int sweep = 0; sweep < 200; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    }
    if (std::sqrt(off) < 1e-14 * scale) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double r = std::abs(a(p, q));
        if (r < 1e-300) continue;
        const Complex phase = a(p, q) / r;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * r);
        const double t = tau >= 0 ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                  : -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        ComplexMatrix u = ComplexMatrix::Identity(n, n);
        u(p, p) = c;
        u(p, q) = s * phase;
        u(q, p) = -s * std::conj(phase);
        u(q, q) = c;
        a = u.adjoint() * a * u;
      }
    }
  }
  std::vector<double> vals(n);
  for (int i = 0; i < n; ++i) vals[i] = a(i, i).real();
  std::sort(vals.begin(), vals.end());
  return vals;
}

inline double jacobi_min_eigenvalue(const ComplexMatrix& a) {
  return jacobi_eigenvalues(a).front();
}

// CHSH value of a two-qubit state for four explicit XZ-plane observable
// directions, evaluated by a direct trace.
inline double chsh_direct_value(const qcert::qcore::DensityMatrix& rho, double alice0,
                                double alice1, double bob0, double bob1) {
  using qcert::qcore::pauli_x;
  using qcert::qcore::pauli_z;
  using qcert::qcore::tensor;
  auto obs = [](double alpha) -> ComplexMatrix {
    return std::cos(alpha) * pauli_x() + std::sin(alpha) * pauli_z();
  };
  const ComplexMatrix a[2] = {obs(alice0), obs(alice1)};
  const ComplexMatrix b[2] = {obs(bob0), obs(bob1)};
  const ComplexMatrix w =
      tensor(a[0], b[0]) + tensor(a[0], b[1]) + tensor(a[1], b[0]) - tensor(a[1], b[1]);
  return (rho.matrix * w).trace().real();
}

// Brute-force grid value over Alice's two observable directions with Bob's
// exact best response per Alice choice (closed form inside
// chsh_best_response). `step` is the grid resolution in radians.
inline double chsh_grid_oracle(const qcert::qcore::DensityMatrix& rho, double step) {
  const Eigen::Matrix2d m = qcert::bell::xz_correlation_block(rho);
  Eigen::Matrix2d rot;
  rot << 0, -1, 1, 0;
  double best = -1e300;
  const int n = static_cast<int>(std::ceil(M_PI / step));
  for (int i = 0; i < n; ++i) {
    const double a0 = i * step;
    const Eigen::Vector2d c0 = m.transpose() * Eigen::Vector2d(std::cos(a0), std::sin(a0));
    const Eigen::Matrix2d q0 = c0 * c0.transpose();
    for (int j = 0; j < n; ++j) {
      const double a1 = j * step;
      const Eigen::Vector2d c1 = m.transpose() * Eigen::Vector2d(std::cos(a1), std::sin(a1));
      const Eigen::Matrix2d q = q0 + rot.transpose() * (c1 * c1.transpose()) * rot;
      const double tr = q.trace();
      const double det = q.determinant();
      const double lam = tr / 2.0 + std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
      best = std::max(best, 2.0 * std::sqrt(std::max(0.0, lam)));
    }
  }
  return best;
}

// Mermin value over the XY three-angle family on a grid; direct trace per
// grid point through the library's operator constructor is too slow, so this
// evaluates the multilinear form from explicitly computed correlations.
inline double mermin_grid_oracle(const qcert::qcore::DensityMatrix& rho, int points) {
  using qcert::qcore::pauli_x;
  using qcert::qcore::pauli_y;
  using qcert::qcore::tensor;
  const ComplexMatrix ops[2] = {pauli_x(), pauli_y()};
  double t[2][2][2];
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 2; ++k) {
        t[i][j][k] = (rho.matrix * tensor(tensor(ops[i], ops[j]), ops[k])).trace().real();
      }
    }
  }
  auto value = [&](double a, double b, double c) {
    auto corr = [&](int j, int k, int l) {
      const double av[2] = {std::cos(a), (j == 0 ? 1.0 : -1.0) * std::sin(a)};
      const double bv[2] = {std::cos(b), (k == 0 ? 1.0 : -1.0) * std::sin(b)};
      const double cv[2] = {std::cos(c), (l == 0 ? 1.0 : -1.0) * std::sin(c)};
      double acc = 0.0;
      for (int p = 0; p < 2; ++p) {
        for (int q = 0; q < 2; ++q) {
          for (int r = 0; r < 2; ++r) acc += av[p] * bv[q] * cv[r] * t[p][q][r];
        }
      }
      return acc;
    };
    return corr(0, 0, 0) - corr(0, 1, 1) - corr(1, 0, 1) - corr(1, 1, 0);
  };
  const double step = (M_PI / 2.0) / (points - 1);
  double best = -1e300;
  for (int i = 0; i < points; ++i) {
    for (int j = 0; j < points; ++j) {
      for (int k = 0; k < points; ++k) {
        best = std::max(best, value(i * step, j * step, k * step));
      }
    }
  }
  return best;
}

}  // namespace oracle
