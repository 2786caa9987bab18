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

#include <cmath>
#include <stdexcept>

#include "qcert/selftest.hpp"
#include "qcert/states.hpp"

namespace qcert::selftest {

using qcore::identity;
using qcore::Rng;

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

ComplexMatrix hermitize(const ComplexMatrix& m) { return (m + m.adjoint()) / 2.0; }

ComplexMatrix trace_out_output(const ComplexMatrix& choi, int din, int dout) {
  ComplexMatrix r = ComplexMatrix::Zero(din, din);
  for (int i = 0; i < din; ++i) {
    for (int j = 0; j < din; ++j) {
      Complex acc = 0.0;
      for (int a = 0; a < dout; ++a) acc += choi(i * dout + a, j * dout + a);
      r(i, j) = acc;
    }
  }
  return r;
}

// Orthonormal Hermitian basis of din x din matrices under <A,B> = Re Tr(A B).
std::vector<ComplexMatrix> hermitian_basis(int din) {
  std::vector<ComplexMatrix> basis;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int k = 0; k < din; ++k) {
    ComplexMatrix e = ComplexMatrix::Zero(din, din);
    e(k, k) = 1.0;
    basis.push_back(std::move(e));
  }
  for (int k = 0; k < din; ++k) {
    for (int l = k + 1; l < din; ++l) {
      ComplexMatrix e = ComplexMatrix::Zero(din, din);
      e(k, l) = inv_sqrt2;
      e(l, k) = inv_sqrt2;
      basis.push_back(e);
      ComplexMatrix f = ComplexMatrix::Zero(din, din);
      f(k, l) = Complex(0.0, inv_sqrt2);
      f(l, k) = Complex(0.0, -inv_sqrt2);
      basis.push_back(f);
    }
  }
  return basis;
}

ComplexMatrix kron_with_identity(const ComplexMatrix& y, int dout) {
  const int din = static_cast<int>(y.rows());
  ComplexMatrix out = ComplexMatrix::Zero(din * dout, din * dout);
  for (int i = 0; i < din; ++i) {
    for (int j = 0; j < din; ++j) {
      for (int a = 0; a < dout; ++a) out(i * dout + a, j * dout + a) = y(i, j);
    }
  }
  return out;
}

// Restores an exactly CPTP Choi matrix from a numerically nearby candidate.
ComplexMatrix project_to_cptp(const ComplexMatrix& choi, int din, int dout) {
  ComplexMatrix c = hermitize(choi);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(c);
  Eigen::VectorXd vals = es.eigenvalues().cwiseMax(0.0);
  c = es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
  const ComplexMatrix r = trace_out_output(c, din, dout);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> er(r);
  Eigen::VectorXd rvals = er.eigenvalues();
  for (int i = 0; i < rvals.size(); ++i) rvals(i) = 1.0 / std::sqrt(std::max(rvals(i), 1e-14));
  const ComplexMatrix rinv_half =
      er.eigenvectors() * rvals.asDiagonal() * er.eigenvectors().adjoint();
  return hermitize(kron_with_identity(rinv_half, dout) * c *
                   kron_with_identity(rinv_half, dout));
}

}  // namespace

ComplexMatrix maximize_over_choi(const ComplexMatrix& cost, int din, int dout,
                                 double* certificate_gap) {
  const int n = din * dout;
  require(cost.rows() == n && cost.cols() == n, "maximize_over_choi: cost dimension mismatch");
  const ComplexMatrix x = hermitize(cost);
  const double scale = std::max(1e-12, qcore::operator_norm(x));

  ComplexMatrix c = ComplexMatrix::Identity(n, n) / static_cast<double>(dout);
  const std::vector<ComplexMatrix> basis = hermitian_basis(din);
  const int nb = static_cast<int>(basis.size());
  ComplexMatrix y_final = ComplexMatrix::Zero(din, din);

  double tau = scale;
  const double tau_min = 1e-12 * scale;
  while (true) {
    for (int newton = 0; newton < 40; ++newton) {
      const ComplexMatrix residual = identity(din) - trace_out_output(c, din, dout);
      // Solve Tr_out[C (Y (x) I) C] = Tr_out[C X C] + tau (Tr_out C - residual) for Y.
      const ComplexMatrix cxc = c * x * c;
      const ComplexMatrix rhs_mat =
          trace_out_output(cxc, din, dout) + tau * (trace_out_output(c, din, dout) - residual);
      Eigen::MatrixXd lmat(nb, nb);
      Eigen::VectorXd rhs(nb);
      std::vector<ComplexMatrix> mapped(nb);
      for (int k = 0; k < nb; ++k) {
        const ComplexMatrix ck = c * kron_with_identity(basis[k], dout) * c;
        mapped[k] = trace_out_output(ck, din, dout);
      }
      for (int k = 0; k < nb; ++k) {
        rhs(k) = (basis[k] * rhs_mat).trace().real();
        for (int l = 0; l < nb; ++l) {
          lmat(k, l) = (basis[k] * mapped[l]).trace().real();
        }
      }
      const Eigen::VectorXd yv = lmat.ldlt().solve(rhs);
      ComplexMatrix y = ComplexMatrix::Zero(din, din);
      for (int k = 0; k < nb; ++k) y += yv(k) * basis[k];
      y_final = y;

      const ComplexMatrix delta = (c * (x - kron_with_identity(y, dout)) * c) / tau + c;
      const double step_norm = delta.norm();
      const double c_norm = c.norm();

      // Backtrack until the update keeps C strictly positive definite.
      double alpha = 1.0;
      bool moved = false;
      for (int tries = 0; tries < 60; ++tries) {
        const ComplexMatrix cand = hermitize(c + alpha * delta);
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(cand, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() > 1e-14) {
          c = cand;
          moved = true;
          break;
        }
        alpha *= 0.5;
      }
      if (!moved || step_norm <= 1e-11 * std::max(1.0, c_norm)) break;
    }
    if (tau <= tau_min) break;
    tau = std::max(tau * 0.15, tau_min * 0.999);
  }

  c = project_to_cptp(c, din, dout);
  if (certificate_gap) {
    // Weak-duality certificate: shift Y until Y (x) I >= X, then the dual value
    // Tr(Y) bounds the primal from above.
    const ComplexMatrix slack = kron_with_identity(hermitize(y_final), dout) - x;
    const double viol = std::max(0.0, -qcore::min_eigenvalue(hermitize(slack)));
    const double dual = hermitize(y_final).trace().real() + viol * din;
    const double primal = (c * x).trace().real();
    *certificate_gap = dual - primal;
  }
  return c;
}

namespace {

struct SeesawProblem {
  ComplexMatrix rho;            // state on the grouped labs
  std::vector<int> lab_dims;    // input dimension per party
  ComplexMatrix target;         // pure target projector
  int parties = 0;

  std::vector<int> current_dims(const std::vector<ExtractionChannel>& channels,
                                int unapplied) const {
    std::vector<int> dims = lab_dims;
    for (int k = 0; k < parties; ++k) {
      if (k != unapplied) dims[k] = channels[k].out_dim;
    }
    return dims;
  }

  // Applies every channel except `skip` (skip = -1 applies all).
  ComplexMatrix apply_others(const std::vector<ExtractionChannel>& channels, int skip) const {
    ComplexMatrix state = rho;
    std::vector<int> dims = lab_dims;
    for (int k = 0; k < parties; ++k) {
      if (k == skip) continue;
      state = channels[k].apply_to_factor(state, dims, k);
      dims[k] = channels[k].out_dim;
    }
    return state;
  }

  double objective(const std::vector<ExtractionChannel>& channels) const {
    const ComplexMatrix out = apply_others(channels, -1);
    return (out * target).trace().real();
  }

  // Linear cost operator X with F = Tr(C X) for party k's Choi matrix, given
  // the other parties' channels.
  ComplexMatrix cost_operator(const std::vector<ExtractionChannel>& channels, int k) const {
    const ComplexMatrix sigma = apply_others(channels, k);
    const std::vector<int> dims = current_dims(channels, k);
    const int din = lab_dims[k];
    const int dout = 2;
    int pre = 1, post = 1;
    for (int s = 0; s < k; ++s) pre *= dims[s];
    for (int s = k + 1; s < parties; ++s) post *= dims[s];

    ComplexMatrix g = ComplexMatrix::Zero(din * dout, din * dout);
    for (int i = 0; i < din; ++i) {
      for (int j = 0; j < din; ++j) {
        for (int a = 0; a < dout; ++a) {
          for (int b = 0; b < dout; ++b) {
            Complex acc = 0.0;
            for (int p = 0; p < pre; ++p) {
              for (int pp = 0; pp < pre; ++pp) {
                for (int q = 0; q < post; ++q) {
                  for (int qq = 0; qq < post; ++qq) {
                    acc += sigma((p * din + i) * post + q, (pp * din + j) * post + qq) *
                           target((pp * dout + b) * post + qq, (p * dout + a) * post + q);
                  }
                }
              }
            }
            g(i * dout + a, j * dout + b) = acc;
          }
        }
      }
    }
    return g.transpose();
  }
};

ExtractionChannel random_cptp(int din, int dout, Rng& rng) {
  const int n = din * dout;
  ComplexMatrix g(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) g(i, j) = Complex(rng.normal(), rng.normal());
  }
  ComplexMatrix c = g * g.adjoint();
  return ExtractionChannel::from_choi(project_to_cptp(c, din, dout), din, dout);
}

// Register-readout channel on a (register (x) qubit) lab: on register value 1
// the qubit passes through unchanged; on register value 0 the qubit is
// measured in the x basis and the matching local half of the target pure state
// is prepared.
ExtractionChannel register_readout_channel(const ComplexVector& target_vec, bool alice_side) {
  ComplexVector partners[2];
  for (int s = 0; s < 2; ++s) {
    const double sign = s == 0 ? 1.0 : -1.0;
    ComplexVector v(2);
    if (alice_side) {
      // (I (x) <s|) applied to the two-qubit target, x-basis <s|.
      v(0) = (target_vec(0) + sign * target_vec(1)) / std::sqrt(2.0);
      v(1) = (target_vec(2) + sign * target_vec(3)) / std::sqrt(2.0);
    } else {
      v(0) = (target_vec(0) + sign * target_vec(2)) / std::sqrt(2.0);
      v(1) = (target_vec(1) + sign * target_vec(3)) / std::sqrt(2.0);
    }
    v.normalize();
    partners[s] = v;
  }
  std::vector<ComplexMatrix> kraus;
  // Pass-through branch: projects the register on |1> and keeps the qubit.
  ComplexMatrix k1 = ComplexMatrix::Zero(2, 4);
  k1(0, 2) = 1.0;
  k1(1, 3) = 1.0;
  kraus.push_back(k1);
  for (int s = 0; s < 2; ++s) {
    const double sign = s == 0 ? 1.0 : -1.0;
    ComplexMatrix k = ComplexMatrix::Zero(2, 4);
    // <0|_register (x) <s|_qubit with |s> = (|0> + sign |1>)/sqrt(2).
    for (int out = 0; out < 2; ++out) {
      k(out, 0) = partners[s](out) / std::sqrt(2.0);
      k(out, 1) = sign * partners[s](out) / std::sqrt(2.0);
    }
    kraus.push_back(k);
  }
  return ExtractionChannel::from_kraus(kraus);
}

ComplexVector pure_vector(const ComplexMatrix& projector) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(projector);
  return es.eigenvectors().col(projector.rows() - 1);
}

}  // namespace

SeesawResult extractability(const DensityMatrix& rho, const TargetState& target,
                            const std::vector<int>& local_dims, const SeesawOptions& opts) {
  const int parties = static_cast<int>(local_dims.size());
  require(parties == 2 || parties == 3, "extractability: 2 or 3 parties supported");
  int prod = 1;
  for (int d : local_dims) prod *= d;
  require(prod == rho.dim(), "extractability: partition does not match the state dimension");
  require(target.projector.factors() == parties,
          "extractability: target party count mismatch");
  require(std::abs(qcore::purity(target.projector) - 1.0) <= 1e-9,
          "extractability: target must be pure");

  SeesawProblem problem;
  problem.rho = rho.matrix;
  problem.lab_dims = local_dims;
  problem.target = target.projector.matrix;
  problem.parties = parties;

  // Deterministic start: the angle-dependent dephasing channels at the
  // violation-optimal angles for qubit labs, and the register-readout strategy
  // for (register (x) qubit) labs.
  std::vector<ExtractionChannel> canonical;
  const bool qubit_labs =
      std::all_of(local_dims.begin(), local_dims.end(), [](int d) { return d == 2; });
  if (qubit_labs && parties == 2) {
    const auto best = bell::max_chsh_violation(rho);
    canonical = {extraction_channel(best.angles.a, Plane::XZ),
                 extraction_channel(best.angles.b, Plane::XZ)};
  } else if (qubit_labs && parties == 3) {
    const auto best = bell::max_mermin_violation(rho);
    canonical = {extraction_channel(best.angles.a, Plane::XY),
                 extraction_channel(best.angles.b, Plane::XY),
                 extraction_channel(*best.angles.c, Plane::XY)};
  } else {
    require(parties == 2 && local_dims[0] == 4 && local_dims[1] == 4,
            "extractability: unsupported lab partition");
    const ComplexVector tvec = pure_vector(target.projector.matrix);
    canonical = {register_readout_channel(tvec, true), register_readout_channel(tvec, false)};
  }

  std::vector<std::vector<ExtractionChannel>> starts;
  starts.push_back(canonical);
  Rng rng(opts.seed);
  for (int r = 0; r < opts.random_restarts; ++r) {
    Rng sub = rng.derived(r + 1);
    std::vector<ExtractionChannel> init;
    for (int k = 0; k < parties; ++k) init.push_back(random_cptp(local_dims[k], 2, sub));
    starts.push_back(std::move(init));
  }

  SeesawResult result;
  result.start_value = problem.objective(canonical);

  for (std::size_t s = 0; s < starts.size(); ++s) {
    std::vector<ExtractionChannel> channels = starts[s];
    double value = problem.objective(channels);
    std::vector<double> trace = {value};
    for (int round = 0; round < opts.max_rounds; ++round) {
      const double round_start = value;
      for (int k = 0; k < parties; ++k) {
        const ComplexMatrix cost = problem.cost_operator(channels, k);
        const ComplexMatrix copt = maximize_over_choi(cost, local_dims[k], 2);
        ExtractionChannel candidate = ExtractionChannel::from_choi(
            project_to_cptp(copt, local_dims[k], 2), local_dims[k], 2);
        const ExtractionChannel previous = channels[k];
        channels[k] = candidate;
        const double after = problem.objective(channels);
        if (after + 1e-12 < value) {
          channels[k] = previous;  // exact step can only improve; keep monotone
        } else {
          value = after;
        }
      }
      trace.push_back(value);
      if (value - round_start < opts.improvement_tol) break;
    }
    if (s == 0 || trace.back() > result.xi) {
      result.xi = trace.back();
      result.channels = channels;
      result.objective_trace = trace;
    }
  }
  return result;
}

SeesawResult extractability_registered(const DensityMatrix& rho_xyab,
                                       const SeesawOptions& opts) {
  require(rho_xyab.factors() == 4, "extractability_registered: four-qubit register state");
  const DensityMatrix grouped = qcore::reorder_factors(rho_xyab, {0, 2, 1, 3});
  // Factors are now X, A, Y, B; the two labs are the consecutive pairs.
  return extractability(grouped, chsh_target(), {4, 4}, opts);
}

}  // namespace qcert::selftest
