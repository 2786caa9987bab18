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

#include "doctest.h"
#include "oracles.hpp"
#include "qcert/qcore.hpp"
#include "qcert/states.hpp"

using namespace qcert;
using qcore::DensityMatrix;

TEST_SUITE_BEGIN("qcore");

TEST_CASE("tensor products of Pauli matrices") {
  const ComplexMatrix i4 = qcore::tensor(qcore::identity(2), qcore::identity(2));
  CHECK((i4 - qcore::identity(4)).cwiseAbs().maxCoeff() == 0.0);

  const ComplexMatrix zz = qcore::tensor(qcore::pauli_z(), qcore::pauli_z());
  ComplexMatrix diag = ComplexMatrix::Zero(4, 4);
  diag(0, 0) = 1;
  diag(1, 1) = -1;
  diag(2, 2) = -1;
  diag(3, 3) = 1;
  CHECK((zz - diag).cwiseAbs().maxCoeff() == 0.0);

  const ComplexMatrix xx = qcore::tensor(qcore::pauli_x(), qcore::pauli_x());
  CHECK(((xx * xx) - qcore::identity(4)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("partial trace basics") {
  const DensityMatrix pair = states::partially_entangled(M_PI / 4.0);
  const DensityMatrix marginal = qcore::partial_trace(pair, {0});
  CHECK((marginal.matrix - qcore::identity(2) / 2.0).cwiseAbs().maxCoeff() <= 1e-14);

  // Product state: tracing out the second factor returns the first untouched.
  qcore::Rng rng(41);
  const DensityMatrix a = qcore::random_density({2}, rng);
  const DensityMatrix b = qcore::random_density({2}, rng);
  const DensityMatrix ab(qcore::tensor(a.matrix, b.matrix), {2, 2});
  const DensityMatrix back = qcore::partial_trace(ab, {0});
  CHECK((back.matrix - a.matrix).cwiseAbs().maxCoeff() <= 1e-13);

  // GHZ with qubit C removed leaves the classical 00/11 mixture.
  const DensityMatrix ghz_ab = qcore::partial_trace(states::ghz(), {0, 1});
  ComplexMatrix expect = ComplexMatrix::Zero(4, 4);
  expect(0, 0) = 0.5;
  expect(3, 3) = 0.5;
  CHECK((ghz_ab.matrix - expect).cwiseAbs().maxCoeff() <= 1e-14);

  CHECK_THROWS(qcore::partial_trace(pair, {}));
  CHECK_THROWS(qcore::partial_trace(pair, {2}));
  CHECK_THROWS(qcore::partial_trace(pair, {0, 0}));
}

TEST_CASE("partial trace composes") {
  qcore::Rng rng(152);
  for (int trial = 0; trial < 20; ++trial) {
    const DensityMatrix rho = qcore::random_density({2, 2, 2}, rng);
    const DensityMatrix joint = qcore::partial_trace(rho, {1});
    const DensityMatrix seq = qcore::partial_trace(qcore::partial_trace(rho, {1, 2}), {0});
    CHECK((joint.matrix - seq.matrix).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("reorder factors") {
  qcore::Rng rng(77);
  const DensityMatrix a = qcore::random_density({2}, rng);
  const DensityMatrix b = qcore::random_density({2}, rng);
  const DensityMatrix ab(qcore::tensor(a.matrix, b.matrix), {2, 2});
  const DensityMatrix swapped = qcore::reorder_factors(ab, {1, 0});
  CHECK((swapped.matrix - qcore::tensor(b.matrix, a.matrix)).cwiseAbs().maxCoeff() <= 1e-14);

  // Round trip through a 4-factor permutation (the permutation is an involution).
  const DensityMatrix rho = qcore::random_density({2, 2, 2, 2}, rng);
  const DensityMatrix fwd = qcore::reorder_factors(rho, {0, 2, 1, 3});
  const DensityMatrix back = qcore::reorder_factors(fwd, {0, 2, 1, 3});
  CHECK((back.matrix - rho.matrix).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("fidelity agrees with pure-state overlap") {
  const DensityMatrix target = states::partially_entangled(M_PI / 4.0);
  SUBCASE("self fidelity") {
    CHECK(qcore::fidelity(target, target) == doctest::Approx(1.0).epsilon(1e-10));
  }
  SUBCASE("orthogonal pure states") {
    ComplexVector zero = ComplexVector::Zero(2), one = ComplexVector::Zero(2);
    zero(0) = 1;
    one(1) = 1;
    const DensityMatrix p0 = DensityMatrix::from_pure(zero, {2});
    const DensityMatrix p1 = DensityMatrix::from_pure(one, {2});
    CHECK(qcore::fidelity(p0, p1) == doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("isotropic mixture against the pure target") {
    const double v = 0.8;
    const DensityMatrix rho = states::werner(v);
    CHECK(qcore::fidelity(rho, target) == doctest::Approx((1 + 3 * v) / 4.0).epsilon(1e-9));
  }
  SUBCASE("dimension mismatch is rejected") {
    qcore::Rng rng(5);
    const DensityMatrix small = qcore::random_density({2}, rng);
    CHECK_THROWS(qcore::fidelity(small, target));
  }
}

TEST_CASE("fidelity is symmetric on random pairs") {
  qcore::Rng rng(999);
  for (int trial = 0; trial < 100; ++trial) {
    const DensityMatrix rho = qcore::random_density({2, 2}, rng);
    const DensityMatrix sigma = qcore::random_density({2, 2}, rng);
    CHECK(qcore::fidelity(rho, sigma) ==
          doctest::Approx(qcore::fidelity(sigma, rho)).epsilon(1e-9));
  }
}

TEST_CASE("pure-sigma fidelity equals the overlap on random pairs") {
  qcore::Rng rng(1234);
  for (int trial = 0; trial < 50; ++trial) {
    const DensityMatrix rho = qcore::random_density({2, 2}, rng);
    const ComplexVector psi = qcore::random_pure(4, rng);
    const DensityMatrix sigma = DensityMatrix::from_pure(psi, {2, 2});
    const double overlap = (psi.adjoint() * rho.matrix * psi)(0).real();
    CHECK(qcore::fidelity(rho, sigma) == doctest::Approx(overlap).epsilon(1e-9));
  }
}

TEST_CASE("min eigenvalue against the Jacobi oracle") {
  CHECK(qcore::min_eigenvalue(qcore::pauli_z()) == doctest::Approx(-1.0));
  CHECK(qcore::min_eigenvalue(qcore::identity(4)) == doctest::Approx(1.0));

  qcore::Rng rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    const int dim = 2 + static_cast<int>(rng.uniform() * 7);
    ComplexMatrix g(dim, dim);
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) g(i, j) = Complex(rng.normal(), rng.normal());
    }
    const ComplexMatrix h = (g + g.adjoint()) / 2.0;
    const double reference = oracle::jacobi_min_eigenvalue(h);
    CHECK(std::abs(qcore::min_eigenvalue(h) - reference) <= 1e-10);
  }

  ComplexMatrix bad(2, 2);
  bad << 0, 1, 0, 0;
  CHECK_THROWS(qcore::min_eigenvalue(bad));
}

TEST_CASE("pauli expansion") {
  SUBCASE("identity string only") {
    const qcore::PauliExpansion e = qcore::pauli_expansion(qcore::identity(4));
    CHECK(e.coeff("II") == doctest::Approx(1.0));
    for (std::size_t s = 1; s < e.coeffs.size(); ++s) {
      CHECK(std::abs(e.coeffs[s]) <= 1e-14);
    }
  }
  SUBCASE("register component 11 matches its closed form") {
    const qcore::PauliExpansion e =
        qcore::pauli_expansion(states::tau_component(states::TauLabel::k11).matrix);
    const double r = 1.0 / (4.0 * std::sqrt(2.0));
    CHECK(e.coeff("II") == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(e.coeff("XX") == doctest::Approx(r).epsilon(1e-12));
    CHECK(e.coeff("XZ") == doctest::Approx(r).epsilon(1e-12));
    CHECK(e.coeff("ZX") == doctest::Approx(r).epsilon(1e-12));
    CHECK(e.coeff("ZZ") == doctest::Approx(-r).epsilon(1e-12));
    CHECK(e.coeff("YY") == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(std::abs(e.coeff("XY")) <= 1e-14);
    CHECK(std::abs(e.coeff("IZ")) <= 1e-14);
  }
  SUBCASE("round trip and real coefficients on random Hermitian input") {
    qcore::Rng rng(8);
    for (int trial = 0; trial < 10; ++trial) {
      ComplexMatrix g(4, 4);
      for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) g(i, j) = Complex(rng.normal(), rng.normal());
      }
      const ComplexMatrix h = (g + g.adjoint()) / 2.0;
      const qcore::PauliExpansion e = qcore::pauli_expansion(h);
      CHECK((qcore::pauli_resum(e) - h).cwiseAbs().maxCoeff() <= 1e-10);
      for (std::size_t s = 0; s < e.coeffs.size(); ++s) {
        const ComplexMatrix str = qcore::pauli_string(static_cast<int>(s), 2);
        CHECK(std::abs((h * str).trace().imag() / 4.0) <= 1e-12);
      }
    }
  }
  SUBCASE("dimension must be a power of two") {
    CHECK_THROWS(qcore::pauli_expansion(ComplexMatrix::Identity(3, 3)));
  }
}

TEST_CASE("density matrix invariants on random constructions") {
  qcore::Rng rng(4242);
  for (int trial = 0; trial < 40; ++trial) {
    const int qubits = 1 + static_cast<int>(rng.uniform() * 3);
    const DensityMatrix rho = qcore::random_density(std::vector<int>(qubits, 2), rng);
    CHECK(std::abs(rho.matrix.trace().real() - 1.0) <= 1e-10);
    CHECK(qcore::is_hermitian(rho.matrix));
    CHECK(qcore::min_eigenvalue(rho.matrix) >= -1e-10);
  }
}

TEST_CASE("invalid density matrices are rejected") {
  ComplexMatrix notrace = qcore::identity(4);
  CHECK_THROWS(DensityMatrix(notrace, {2, 2}));
  ComplexMatrix negative = qcore::identity(4) / 2.0;
  negative(3, 3) = -0.5;
  CHECK_THROWS(DensityMatrix(negative, {2, 2}));
  CHECK_THROWS(DensityMatrix(qcore::identity(4) / 4.0, {2}));
}

TEST_CASE("sqrt_psd clamps noise and rejects real negativity") {
  ComplexMatrix nearly = qcore::identity(2);
  nearly(1, 1) = -5e-11;  // numerical-noise scale
  const ComplexMatrix root = qcore::sqrt_psd(nearly);
  CHECK(std::abs(root(0, 0).real() - 1.0) <= 1e-12);
  CHECK(std::abs(root(1, 1)) <= 1e-5);

  ComplexMatrix invalid = qcore::identity(2);
  invalid(1, 1) = -1e-6;
  CHECK_THROWS(qcore::sqrt_psd(invalid));
}

TEST_SUITE_END();
