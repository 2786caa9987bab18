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
using qcore::is_hermitian;
using qcore::pauli_x;
using qcore::pauli_y;
using qcore::pauli_z;

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

ExtractionChannel ExtractionChannel::from_choi(ComplexMatrix choi, int in_dim, int out_dim) {
  ExtractionChannel ch;
  ch.in_dim = in_dim;
  ch.out_dim = out_dim;
  ch.choi = std::move(choi);
  ch.validate();
  return ch;
}

ExtractionChannel ExtractionChannel::from_kraus(const std::vector<ComplexMatrix>& kraus) {
  require(!kraus.empty(), "from_kraus: empty operator list");
  const int out = static_cast<int>(kraus.front().rows());
  const int in = static_cast<int>(kraus.front().cols());
  ComplexMatrix choi = ComplexMatrix::Zero(in * out, in * out);
  for (const ComplexMatrix& k : kraus) {
    require(k.rows() == out && k.cols() == in, "from_kraus: inconsistent shapes");
    ComplexVector w(in * out);
    for (int i = 0; i < in; ++i) {
      for (int a = 0; a < out; ++a) w(i * out + a) = k(a, i);
    }
    choi += w * w.adjoint();
  }
  return from_choi(std::move(choi), in, out);
}

ExtractionChannel ExtractionChannel::identity(int dim) {
  return from_kraus({qcore::identity(dim)});
}

void ExtractionChannel::validate() const {
  require(choi.rows() == in_dim * out_dim && choi.cols() == choi.rows(),
          "channel: Choi matrix has wrong dimension");
  require(is_hermitian(choi, 1e-9), "channel: Choi matrix must be Hermitian");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(choi, Eigen::EigenvaluesOnly);
  require(es.eigenvalues().minCoeff() >= -tol().choi_psd,
          "channel: Choi matrix must be positive semidefinite");
  ComplexMatrix marginal = ComplexMatrix::Zero(in_dim, in_dim);
  for (int i = 0; i < in_dim; ++i) {
    for (int j = 0; j < in_dim; ++j) {
      Complex acc = 0.0;
      for (int a = 0; a < out_dim; ++a) acc += choi(i * out_dim + a, j * out_dim + a);
      marginal(i, j) = acc;
    }
  }
  require((marginal - qcore::identity(in_dim)).cwiseAbs().maxCoeff() <= tol().cptp_trace,
          "channel: partial trace over output must be the identity");
}

std::vector<ComplexMatrix> ExtractionChannel::kraus() const {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(choi);
  std::vector<ComplexMatrix> out;
  for (int k = 0; k < choi.rows(); ++k) {
    const double lam = es.eigenvalues()(k);
    if (lam <= 1e-12) continue;
    ComplexMatrix kmat(out_dim, in_dim);
    for (int i = 0; i < in_dim; ++i) {
      for (int a = 0; a < out_dim; ++a) {
        kmat(a, i) = std::sqrt(lam) * es.eigenvectors()(i * out_dim + a, k);
      }
    }
    out.push_back(std::move(kmat));
  }
  return out;
}

ComplexMatrix ExtractionChannel::apply(const ComplexMatrix& rho) const {
  require(rho.rows() == in_dim && rho.cols() == in_dim, "channel apply: dimension mismatch");
  ComplexMatrix out = ComplexMatrix::Zero(out_dim, out_dim);
  for (int a = 0; a < out_dim; ++a) {
    for (int b = 0; b < out_dim; ++b) {
      Complex acc = 0.0;
      for (int i = 0; i < in_dim; ++i) {
        for (int j = 0; j < in_dim; ++j) {
          acc += rho(i, j) * choi(i * out_dim + a, j * out_dim + b);
        }
      }
      out(a, b) = acc;
    }
  }
  return out;
}

ComplexMatrix ExtractionChannel::apply_adjoint(const ComplexMatrix& op) const {
  require(op.rows() == out_dim && op.cols() == out_dim,
          "channel apply_adjoint: dimension mismatch");
  ComplexMatrix out = ComplexMatrix::Zero(in_dim, in_dim);
  for (int i = 0; i < in_dim; ++i) {
    for (int j = 0; j < in_dim; ++j) {
      Complex acc = 0.0;
      for (int a = 0; a < out_dim; ++a) {
        for (int b = 0; b < out_dim; ++b) {
          acc += choi(j * out_dim + a, i * out_dim + b) * op(b, a);
        }
      }
      out(i, j) = acc;
    }
  }
  return out;
}

ComplexMatrix ExtractionChannel::apply_to_factor(const ComplexMatrix& rho,
                                                 const std::vector<int>& dims, int slot) const {
  const int n = static_cast<int>(dims.size());
  require(slot >= 0 && slot < n, "apply_to_factor: slot out of range");
  require(dims[slot] == in_dim, "apply_to_factor: slot dimension mismatch");
  int pre = 1, post = 1;
  for (int k = 0; k < slot; ++k) pre *= dims[k];
  for (int k = slot + 1; k < n; ++k) post *= dims[k];
  require(pre * in_dim * post == rho.rows() && rho.rows() == rho.cols(),
          "apply_to_factor: state dimension mismatch");

  const int out_full = pre * out_dim * post;
  ComplexMatrix out = ComplexMatrix::Zero(out_full, out_full);
  for (int p = 0; p < pre; ++p) {
    for (int pp = 0; pp < pre; ++pp) {
      for (int q = 0; q < post; ++q) {
        for (int qq = 0; qq < post; ++qq) {
          for (int a = 0; a < out_dim; ++a) {
            for (int b = 0; b < out_dim; ++b) {
              Complex acc = 0.0;
              for (int i = 0; i < in_dim; ++i) {
                for (int j = 0; j < in_dim; ++j) {
                  acc += choi(i * out_dim + a, j * out_dim + b) *
                         rho((p * in_dim + i) * post + q, (pp * in_dim + j) * post + qq);
                }
              }
              out((p * out_dim + a) * post + q, (pp * out_dim + b) * post + qq) = acc;
            }
          }
        }
      }
    }
  }
  return out;
}

double extraction_gain(double angle) {
  return (1.0 + std::sqrt(2.0)) * (std::cos(angle) + std::sin(angle) - 1.0);
}

ExtractionChannel extraction_channel(double angle, Plane plane) {
  double g = extraction_gain(angle);
  g = std::min(g, 1.0);
  require(g >= -1e-12, "extraction_channel: angle outside the dephasing regime");
  g = std::max(g, 0.0);
  const ComplexMatrix& gamma =
      angle < M_PI / 4.0 ? pauli_x() : (plane == Plane::XZ ? pauli_z() : pauli_y());
  std::vector<ComplexMatrix> kraus;
  kraus.push_back(std::sqrt((1.0 + g) / 2.0) * identity(2));
  kraus.push_back(std::sqrt((1.0 - g) / 2.0) * gamma);
  return ExtractionChannel::from_kraus(kraus);
}

TargetState chsh_target() {
  return TargetState{states::tau_component(states::TauLabel::k11), Scenario::CHSH};
}

TargetState mermin_target() { return TargetState{states::ghz(), Scenario::Mermin}; }

namespace {

ComplexMatrix adjoint_on_factors(const ComplexMatrix& projector, const std::vector<int>& dims,
                                 const std::vector<ExtractionChannel>& channels) {
  // (L1 (x) ... (x) Ln)^dag applied slot by slot; the adjoint of a tensor
  // product factorizes over parties.
  ComplexMatrix op = projector;
  for (std::size_t k = 0; k < channels.size(); ++k) {
    const ExtractionChannel& ch = channels[k];
    const int n = static_cast<int>(dims.size());
    int pre = 1, post = 1;
    for (int s = 0; s < static_cast<int>(k); ++s) pre *= dims[s];
    for (int s = static_cast<int>(k) + 1; s < n; ++s) post *= dims[s];
    const int in = ch.in_dim, out = ch.out_dim;
    ComplexMatrix next = ComplexMatrix::Zero(pre * in * post, pre * in * post);
    for (int p = 0; p < pre; ++p) {
      for (int pp = 0; pp < pre; ++pp) {
        for (int q = 0; q < post; ++q) {
          for (int qq = 0; qq < post; ++qq) {
            for (int i = 0; i < in; ++i) {
              for (int j = 0; j < in; ++j) {
                Complex acc = 0.0;
                for (int a = 0; a < out; ++a) {
                  for (int b = 0; b < out; ++b) {
                    acc += ch.choi(i * out + a, j * out + b) *
                           op((pp * out + b) * post + qq, (p * out + a) * post + q);
                  }
                }
                next((pp * in + j) * post + qq, (p * in + i) * post + q) = acc;
              }
            }
          }
        }
      }
    }
    op = std::move(next);
  }
  return op;
}

}  // namespace

FidelityOperator fidelity_operator_chsh(const MeasurementAngles& angles) {
  require(!angles.c.has_value(), "fidelity_operator_chsh: bipartite angles required");
  const TargetState target = chsh_target();
  std::vector<ExtractionChannel> channels = {extraction_channel(angles.a, Plane::XZ),
                                             extraction_channel(angles.b, Plane::XZ)};
  ComplexMatrix k = adjoint_on_factors(target.projector.matrix, {2, 2}, channels);
  k = (k + k.adjoint()) / 2.0;
  return FidelityOperator{std::move(k), angles, Scenario::CHSH};
}

FidelityOperator fidelity_operator_mermin(const MeasurementAngles& angles) {
  require(angles.c.has_value(), "fidelity_operator_mermin: tripartite angles required");
  const TargetState target = mermin_target();
  std::vector<ExtractionChannel> channels = {extraction_channel(angles.a, Plane::XY),
                                             extraction_channel(angles.b, Plane::XY),
                                             extraction_channel(*angles.c, Plane::XY)};
  ComplexMatrix k = adjoint_on_factors(target.projector.matrix, {2, 2, 2}, channels);
  k = (k + k.adjoint()) / 2.0;
  return FidelityOperator{std::move(k), angles, Scenario::Mermin};
}

double chsh_margin(const MeasurementAngles& angles) {
  const FidelityOperator k = fidelity_operator_chsh(angles);
  const bell::BellOperator w = bell::chsh_operator(angles);
  const ComplexMatrix m =
      k.matrix - kChshSlope * w.matrix + kChshOffset * identity(4);
  return qcore::min_eigenvalue(m);
}

double mermin_margin(const MeasurementAngles& angles) {
  const FidelityOperator k = fidelity_operator_mermin(angles);
  const bell::BellOperator w = bell::mermin_operator(angles);
  const ComplexMatrix m =
      k.matrix - kMerminSlope * w.matrix + kMerminOffset * identity(8);
  return qcore::min_eigenvalue(m);
}

BoundReport chsh_bounds(double beta) {
  const double lo = 2.0, hi = 2.0 * std::sqrt(2.0);
  require(beta >= lo - 1e-9 && beta <= hi + 1e-9, "chsh_bounds: beta outside [2, 2 sqrt(2)]");
  BoundReport report;
  report.beta = beta;
  report.scenario = Scenario::CHSH;
  report.lower = kChshSlope * beta - kChshOffset;
  report.upper = 0.5 + (beta - 2.0) / (2.0 * (hi - 2.0));
  return report;
}

BoundReport mermin_bound(double beta) {
  const double lo = 2.0 * std::sqrt(2.0), hi = 4.0;
  require(beta <= hi + 1e-9, "mermin_bound: beta above the algebraic maximum 4");
  BoundReport report;
  report.beta = beta;
  report.scenario = Scenario::Mermin;
  if (beta <= lo) {
    report.lower = 0.5;
    report.upper = 0.5;
    report.trivial = true;
    return report;
  }
  report.lower = 0.5 + 0.5 * (beta - lo) / (hi - lo);
  report.upper = report.lower;
  return report;
}

double chsh_nontrivial_threshold() { return (0.5 + kChshOffset) / kChshSlope; }

}  // namespace qcert::selftest
