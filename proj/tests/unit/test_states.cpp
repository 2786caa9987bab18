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
#include "qcert/bell.hpp"
#include "qcert/states.hpp"

using namespace qcert;
using qcore::DensityMatrix;

TEST_SUITE_BEGIN("states");

TEST_CASE("partially entangled family") {
  const DensityMatrix product = states::partially_entangled(0.0);
  ComplexMatrix zero = ComplexMatrix::Zero(4, 4);
  zero(0, 0) = 1.0;
  CHECK((product.matrix - zero).cwiseAbs().maxCoeff() <= 1e-15);

  const DensityMatrix bell_pair = states::partially_entangled(M_PI / 4.0);
  CHECK(bell_pair.matrix(0, 3).real() == doctest::Approx(0.5));
  CHECK(bell_pair.matrix(0, 0).real() == doctest::Approx(0.5));

  for (double theta : {0.0, 0.3, M_PI / 4.0, 1.2, M_PI / 2.0}) {
    CHECK(qcore::purity(states::partially_entangled(theta)) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK_THROWS(states::partially_entangled(-0.1));
  CHECK_THROWS(states::partially_entangled(M_PI / 2.0 + 0.1));
}

TEST_CASE("werner family endpoints") {
  const DensityMatrix pure = states::werner(1.0);
  CHECK((pure.matrix - states::partially_entangled(M_PI / 4.0).matrix).cwiseAbs().maxCoeff() <=
        1e-15);
  const DensityMatrix mixed = states::werner(0.0);
  CHECK((mixed.matrix - qcore::identity(4) / 4.0).cwiseAbs().maxCoeff() <= 1e-15);
  CHECK_THROWS(states::werner(1.2));
}

TEST_CASE("dephased mixture keeps the diagonal of the pure pair") {
  const DensityMatrix rho = states::dephased_mix(0.6);
  CHECK(rho.matrix(0, 0).real() == doctest::Approx(0.5));
  CHECK(rho.matrix(3, 3).real() == doctest::Approx(0.5));
  CHECK(rho.matrix(0, 3).real() == doctest::Approx(0.3));
}

TEST_CASE("tau components") {
  SUBCASE("low components share one separable form") {
    const DensityMatrix t00 = states::tau_component(states::TauLabel::k00);
    const DensityMatrix t01 = states::tau_component(states::TauLabel::k01);
    const DensityMatrix t10 = states::tau_component(states::TauLabel::k10);
    CHECK((t00.matrix - t01.matrix).cwiseAbs().maxCoeff() == 0.0);
    CHECK((t00.matrix - t10.matrix).cwiseAbs().maxCoeff() == 0.0);

    const std::vector<double> vals = oracle::jacobi_eigenvalues(t00.matrix);
    CHECK(vals[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(vals[1] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(vals[2] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(vals[3] == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("component 11 is pure") {
    const DensityMatrix t11 = states::tau_component(states::TauLabel::k11);
    const std::vector<double> vals = oracle::jacobi_eigenvalues(t11.matrix);
    CHECK(vals[3] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(vals[2] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(qcore::purity(t11) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("pauli resum reproduces component 11 entrywise") {
    const DensityMatrix t11 = states::tau_component(states::TauLabel::k11);
    const qcore::PauliExpansion e = qcore::pauli_expansion(t11.matrix);
    CHECK((qcore::pauli_resum(e) - t11.matrix).cwiseAbs().maxCoeff() <= 1e-12);
  }
  SUBCASE("maximal CHSH values") {
    CHECK(bell::max_chsh_violation(states::tau_component(states::TauLabel::k11)).beta ==
          doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-8));
    CHECK(bell::max_chsh_violation(states::tau_component(states::TauLabel::k00)).beta ==
          doctest::Approx(2.0).epsilon(1e-8));
  }
  SUBCASE("label parsing") {
    CHECK(states::tau_label_from_string("11") == states::TauLabel::k11);
    CHECK_THROWS(states::tau_label_from_string("12"));
  }
}

TEST_CASE("register family rho_xyab") {
  const double nu = 0.35;
  const DensityMatrix rho = states::rho_xyab(nu);
  CHECK(rho.dim() == 16);
  CHECK(std::abs(rho.matrix.trace().real() - 1.0) <= 1e-12);

  SUBCASE("register populations") {
    const DensityMatrix reg = qcore::partial_trace(rho, {0, 1});
    CHECK(reg.matrix(0, 0).real() == doctest::Approx((1 - nu) / 3.0).epsilon(1e-12));
    CHECK(reg.matrix(1, 1).real() == doctest::Approx((1 - nu) / 3.0).epsilon(1e-12));
    CHECK(reg.matrix(2, 2).real() == doctest::Approx((1 - nu) / 3.0).epsilon(1e-12));
    CHECK(reg.matrix(3, 3).real() == doctest::Approx(nu).epsilon(1e-12));
    CHECK(reg.matrix.cwiseAbs().sum() ==
          doctest::Approx(1.0).epsilon(1e-12));  // diagonal register state
  }
  SUBCASE("near-unit weight concentrates the register on 11") {
    const DensityMatrix reg = qcore::partial_trace(states::rho_xyab(1.0 - 1e-9), {0, 1});
    CHECK(reg.matrix(3, 3).real() == doctest::Approx(1.0).epsilon(1e-8));
  }
  SUBCASE("domain") {
    CHECK_THROWS(states::rho_xyab(0.0));
    CHECK_THROWS(states::rho_xyab(1.0));
  }
}

TEST_CASE("ghz family") {
  const DensityMatrix g = states::ghz();
  CHECK(qcore::purity(g) == doctest::Approx(1.0).epsilon(1e-12));
  for (int q = 0; q < 3; ++q) {
    const DensityMatrix marginal = qcore::partial_trace(g, {q});
    CHECK((marginal.matrix - qcore::identity(2) / 2.0).cwiseAbs().maxCoeff() <= 1e-14);
  }
  // The default phase reaches the algebraic Mermin maximum.
  CHECK(bell::max_mermin_violation(g).beta == doctest::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("default ghz phase is where the XY family reaches 4") {
  // Scan the phase; only the stored constant gets within reach of 4.
  double best_phi = -1.0, best = -1e300;
  for (int i = 0; i < 48; ++i) {
    const double phi = 2.0 * M_PI * i / 48.0;
    const double v = oracle::mermin_grid_oracle(states::ghz(phi), 25);
    if (v > best) {
      best = v;
      best_phi = phi;
    }
  }
  CHECK(best == doctest::Approx(4.0).epsilon(1e-3));
  CHECK(best_phi == doctest::Approx(states::kGhzPhase).epsilon(1e-6));
}

TEST_CASE("tripartite mixture") {
  SUBCASE("pure endpoint") {
    CHECK((states::tripartite_mixture(1.0).matrix - states::ghz().matrix)
              .cwiseAbs()
              .maxCoeff() <= 1e-15);
  }
  SUBCASE("biseparable part is orthogonal to the GHZ pair support") {
    const DensityMatrix nu = states::biseparable_singlet();
    CHECK(bell::expectation(nu, states::ghz().matrix) == doctest::Approx(0.0).epsilon(1e-14));
  }
  SUBCASE("fixed optimal settings read the GHZ weight") {
    const bell::MeasurementAngles opt(M_PI / 4.0, M_PI / 4.0, M_PI / 4.0);
    const bell::BellOperator w = bell::mermin_operator(opt);
    for (double weight : {0.0, 0.4, 0.9, 1.0}) {
      CHECK(bell::expectation(states::tripartite_mixture(weight), w) ==
            doctest::Approx(4.0 * weight).epsilon(1e-10));
    }
  }
}

TEST_CASE("white noise admixture") {
  const DensityMatrix noisy = states::add_white_noise(states::ghz(), 0.02);
  CHECK(qcore::fidelity(noisy, states::ghz()) == doctest::Approx(0.98 + 0.02 / 8).epsilon(1e-9));
  CHECK_THROWS(states::add_white_noise(states::ghz(), 1.5));
}

TEST_CASE("every constructor output satisfies the state invariants") {
  std::vector<DensityMatrix> zoo;
  zoo.push_back(states::partially_entangled(0.7));
  zoo.push_back(states::werner(0.33));
  zoo.push_back(states::dephased_mix(0.5));
  zoo.push_back(states::tau_component(states::TauLabel::k01));
  zoo.push_back(states::tau_component(states::TauLabel::k11));
  zoo.push_back(states::rho_xyab(0.62));
  zoo.push_back(states::ghz(1.1));
  zoo.push_back(states::tripartite_mixture(0.25));
  zoo.push_back(states::biseparable_singlet());
  for (const DensityMatrix& rho : zoo) {
    CHECK(std::abs(rho.matrix.trace().real() - 1.0) <= 1e-10);
    CHECK(qcore::is_hermitian(rho.matrix));
    CHECK(oracle::jacobi_min_eigenvalue(rho.matrix) >= -1e-10);
  }
}

TEST_CASE("state spec config round trip") {
  states::StateSpec spec;
  spec.family = "rho_xyab";
  spec.nu = 0.125;
  const states::StateSpec parsed = states::StateSpec::from_config(spec.to_config());
  CHECK(parsed.family == "rho_xyab");
  CHECK(parsed.nu.value() == doctest::Approx(0.125));
  const DensityMatrix rho = states::make_state(parsed);
  CHECK(rho.dim() == 16);

  states::StateSpec partial;
  partial.family = "partial";
  partial.theta = 0.4;
  CHECK((states::make_state(partial).matrix - states::partially_entangled(0.4).matrix)
            .cwiseAbs()
            .maxCoeff() <= 1e-15);

  CHECK_THROWS(states::StateSpec::from_config("theta=0.1\n"));       // missing family
  CHECK_THROWS(states::make_state(states::StateSpec{"nope", {}, {}, {}, {}, {}}));
  states::StateSpec incomplete;
  incomplete.family = "partial";
  CHECK_THROWS(states::make_state(incomplete));
}

TEST_SUITE_END();
