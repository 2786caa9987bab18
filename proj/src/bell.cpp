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

#include "qcert/bell.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace qcert::bell {

using qcore::pauli_x;
using qcore::pauli_y;
using qcore::pauli_z;
using qcore::tensor;

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// Maximizes a smooth scalar function on [lo, hi] by golden-section search,
// assuming the maximum is interior to the bracket.
double golden_max(const std::function<double(double)>& f, double lo, double hi, double width,
                  double* argmax) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  while (hi - lo > width) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    }
  }
  const double x = (lo + hi) / 2.0;
  if (argmax) *argmax = x;
  return f(x);
}

constexpr int kCoarseGrid = 64;

}  // namespace

ComplexMatrix observable(double angle, int r, Plane plane) {
  const double sign = (r % 2 == 0) ? 1.0 : -1.0;
  const ComplexMatrix& second = plane == Plane::XZ ? pauli_z() : pauli_y();
  return std::cos(angle) * pauli_x() + sign * std::sin(angle) * second;
}

BellOperator chsh_operator(const MeasurementAngles& angles) {
  require(!angles.c.has_value(), "chsh_operator: third angle not allowed");
  ComplexMatrix w = ComplexMatrix::Zero(4, 4);
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k < 2; ++k) {
      const double sign = (j == 1 && k == 1) ? -1.0 : 1.0;
      w += sign * tensor(observable(angles.a, j, Plane::XZ), observable(angles.b, k, Plane::XZ));
    }
  }
  return BellOperator{std::move(w), Scenario::CHSH, angles};
}

BellOperator mermin_operator(const MeasurementAngles& angles) {
  require(angles.c.has_value(), "mermin_operator: third angle required");
  const double c = *angles.c;
  auto term = [&](int j, int k, int l) {
    return tensor(tensor(observable(angles.a, j, Plane::XY), observable(angles.b, k, Plane::XY)),
                  observable(c, l, Plane::XY));
  };
  ComplexMatrix w = term(0, 0, 0) - term(0, 1, 1) - term(1, 0, 1) - term(1, 1, 0);
  return BellOperator{std::move(w), Scenario::Mermin, angles};
}

double expectation(const DensityMatrix& rho, const ComplexMatrix& op) {
  require(rho.dim() == op.rows() && op.rows() == op.cols(), "expectation: dimension mismatch");
  const Complex val = (rho.matrix * op).trace();
  require(std::abs(val.imag()) <= tol().expectation_imag,
          "expectation: non-negligible imaginary part");
  return val.real();
}

double expectation(const DensityMatrix& rho, const BellOperator& op) {
  return expectation(rho, op.matrix);
}

Eigen::Matrix2d xz_correlation_block(const DensityMatrix& rho) {
  require(rho.dim() == 4, "xz_correlation_block: two-qubit state required");
  Eigen::Matrix2d m;
  const ComplexMatrix ops[2] = {pauli_x(), pauli_z()};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      m(i, j) = (rho.matrix * tensor(ops[i], ops[j])).trace().real();
    }
  }
  return m;
}

double horodecki_xz_value(const DensityMatrix& rho) {
  const Eigen::Matrix2d m = xz_correlation_block(rho);
  return 2.0 * std::sqrt((m.transpose() * m).trace());
}

namespace {

// CHSH objective for Alice directions a0, a1 (angles in the XZ plane) with
// Bob's observables chosen optimally in closed form: given c_j = M^T a_j, the
// best Bob pair contributes 2 sqrt(lambda_max(c0 c0^T + R^T c1 c1^T R)) with R
// the quarter-turn rotation.
struct ChshSearch {
  Eigen::Matrix2d m;

  static Eigen::Vector2d dir(double alpha) { return {std::cos(alpha), std::sin(alpha)}; }

  double value(double alpha0, double alpha1) const {
    const Eigen::Vector2d c0 = m.transpose() * dir(alpha0);
    const Eigen::Vector2d c1 = m.transpose() * dir(alpha1);
    Eigen::Matrix2d r;
    r << 0, -1, 1, 0;
    const Eigen::Matrix2d q =
        c0 * c0.transpose() + r.transpose() * (c1 * c1.transpose()) * r;
    // Largest eigenvalue of a symmetric 2x2 matrix.
    const double tr = q.trace();
    const double det = q.determinant();
    const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
    return 2.0 * std::sqrt(std::max(0.0, tr / 2.0 + disc));
  }

  // Bob's optimal observable directions for fixed Alice directions.
  void bob_directions(double alpha0, double alpha1, Eigen::Vector2d* b0,
                      Eigen::Vector2d* b1) const {
    const Eigen::Vector2d c0 = m.transpose() * dir(alpha0);
    const Eigen::Vector2d c1 = m.transpose() * dir(alpha1);
    Eigen::Matrix2d r;
    r << 0, -1, 1, 0;
    const Eigen::Matrix2d q =
        c0 * c0.transpose() + r.transpose() * (c1 * c1.transpose()) * r;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(q);
    Eigen::Vector2d u = es.eigenvectors().col(1);  // top eigenvector
    Eigen::Vector2d v = r * u;
    const double cu = c0.dot(u);
    const double cv = c1.dot(v);
    const double norm = std::hypot(cu, cv);
    double cos_phi = 1.0, sin_phi = 0.0;
    if (norm > 1e-15) {
      cos_phi = std::abs(cu) / norm;
      sin_phi = std::abs(cv) / norm;
    }
    if (cu < 0) u = -u;
    if (cv < 0) v = -v;
    *b0 = cos_phi * u + sin_phi * v;
    *b1 = cos_phi * u - sin_phi * v;
  }
};

double half_angle_between(const Eigen::Vector2d& u, const Eigen::Vector2d& v) {
  const double c = std::clamp(u.normalized().dot(v.normalized()), -1.0, 1.0);
  return std::acos(c) / 2.0;
}

}  // namespace

ViolationResult max_chsh_violation(const DensityMatrix& rho) {
  require(rho.dim() == 4, "max_chsh_violation: two-qubit state required");
  ChshSearch search{xz_correlation_block(rho)};

  // Coarse grid over Alice's two observable directions (each taken mod pi;
  // direction sign flips are absorbed by Bob's closed-form response).
  double best = -1.0;
  double a0 = 0.0, a1 = 0.0;
  const double step = M_PI / kCoarseGrid;
  for (int i = 0; i < kCoarseGrid; ++i) {
    for (int j = 0; j < kCoarseGrid; ++j) {
      const double v = search.value(i * step, j * step);
      if (v > best + 1e-15) {
        best = v;
        a0 = i * step;
        a1 = j * step;
      }
    }
  }

  // Coordinate-wise golden-section refinement around the grid optimum.
  double window = 1.5 * step;
  for (int round = 0; round < 8; ++round) {
    double arg = a0;
    double v = golden_max([&](double x) { return search.value(x, a1); }, a0 - window,
                          a0 + window, tol().violation_refine, &arg);
    if (v >= best) {
      best = v;
      a0 = arg;
    }
    v = golden_max([&](double x) { return search.value(a0, x); }, a1 - window, a1 + window,
                   tol().violation_refine, &arg);
    if (v >= best) {
      best = v;
      a1 = arg;
    }
    window = std::max(window / 4.0, 8.0 * tol().violation_refine);
  }

  Eigen::Vector2d b0, b1;
  search.bob_directions(a0, a1, &b0, &b1);
  const double alice_half = half_angle_between(ChshSearch::dir(a0), ChshSearch::dir(a1));
  const double bob_half = half_angle_between(b0, b1);
  ViolationResult out;
  out.beta = best;
  out.angles = MeasurementAngles(alice_half, bob_half);
  return out;
}

namespace {

// Precomputed {x,y}^3 correlations for the tripartite search.
struct MerminSearch {
  double t[2][2][2];

  static void load(const DensityMatrix& rho, MerminSearch* out) {
    const ComplexMatrix ops[2] = {pauli_x(), pauli_y()};
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        for (int k = 0; k < 2; ++k) {
          out->t[i][j][k] =
              (rho.matrix * tensor(tensor(ops[i], ops[j]), ops[k])).trace().real();
        }
      }
    }
  }

  double term(double a, double b, double c, int j, int k, int l) const {
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
  }

  double value(double a, double b, double c) const {
    return term(a, b, c, 0, 0, 0) - term(a, b, c, 0, 1, 1) - term(a, b, c, 1, 0, 1) -
           term(a, b, c, 1, 1, 0);
  }
};

}  // namespace

ViolationResult max_mermin_violation(const DensityMatrix& rho) {
  require(rho.dim() == 8, "max_mermin_violation: three-qubit state required");
  MerminSearch search{};
  MerminSearch::load(rho, &search);

  const double hi = M_PI / 2.0;
  const double step = hi / (kCoarseGrid - 1);
  double best = -1e300;
  double a = 0.0, b = 0.0, c = 0.0;
  for (int i = 0; i < kCoarseGrid; ++i) {
    for (int j = 0; j < kCoarseGrid; ++j) {
      for (int k = 0; k < kCoarseGrid; ++k) {
        const double v = search.value(i * step, j * step, k * step);
        if (v > best + 1e-15) {
          best = v;
          a = i * step;
          b = j * step;
          c = k * step;
        }
      }
    }
  }

  double window = 1.5 * step;
  auto clamp01 = [&](double x) { return std::clamp(x, 0.0, hi); };
  for (int round = 0; round < 8; ++round) {
    double arg = a;
    double v = golden_max([&](double x) { return search.value(clamp01(x), b, c); }, a - window,
                          a + window, tol().violation_refine, &arg);
    if (v >= best) {
      best = v;
      a = clamp01(arg);
    }
    v = golden_max([&](double x) { return search.value(a, clamp01(x), c); }, b - window,
                   b + window, tol().violation_refine, &arg);
    if (v >= best) {
      best = v;
      b = clamp01(arg);
    }
    v = golden_max([&](double x) { return search.value(a, b, clamp01(x)); }, c - window,
                   c + window, tol().violation_refine, &arg);
    if (v >= best) {
      best = v;
      c = clamp01(arg);
    }
    window = std::max(window / 4.0, 8.0 * tol().violation_refine);
  }

  ViolationResult out;
  out.beta = best;
  out.angles = MeasurementAngles(a, b, c);
  return out;
}

}  // namespace qcert::bell
