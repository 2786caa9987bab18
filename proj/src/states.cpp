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

#include "qcert/states.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace qcert::states {

using qcore::identity;
using qcore::pauli_x;
using qcore::pauli_y;
using qcore::pauli_z;
using qcore::tensor;

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

ComplexVector basis(int dim, int k) {
  ComplexVector v = ComplexVector::Zero(dim);
  v(k) = 1.0;
  return v;
}

}  // namespace

DensityMatrix partially_entangled(double theta) {
  require(theta >= 0.0 && theta <= M_PI / 2.0, "partially_entangled: theta outside [0, pi/2]");
  ComplexVector psi = ComplexVector::Zero(4);
  psi(0) = std::cos(theta);
  psi(3) = std::sin(theta);
  return DensityMatrix::from_pure(psi, {2, 2});
}

DensityMatrix werner(double v) {
  require(v >= 0.0 && v <= 1.0, "werner: visibility outside [0, 1]");
  const DensityMatrix phi = partially_entangled(M_PI / 4.0);
  ComplexMatrix m = v * phi.matrix + (1.0 - v) * identity(4) / 4.0;
  return DensityMatrix(std::move(m), {2, 2});
}

DensityMatrix dephased_mix(double v) {
  require(v >= 0.0 && v <= 1.0, "dephased_mix: visibility outside [0, 1]");
  const DensityMatrix phi = partially_entangled(M_PI / 4.0);
  // Dephasing Phi+ in the computational basis leaves (|00><00| + |11><11|)/2.
  ComplexMatrix deph = ComplexMatrix::Zero(4, 4);
  deph(0, 0) = 0.5;
  deph(3, 3) = 0.5;
  ComplexMatrix m = v * phi.matrix + (1.0 - v) * deph;
  return DensityMatrix(std::move(m), {2, 2});
}

TauLabel tau_label_from_string(const std::string& s) {
  if (s == "00") return TauLabel::k00;
  if (s == "01") return TauLabel::k01;
  if (s == "10") return TauLabel::k10;
  if (s == "11") return TauLabel::k11;
  throw std::invalid_argument("tau label must be one of 00, 01, 10, 11");
}

DensityMatrix tau_component(TauLabel label) {
  const ComplexMatrix ii = identity(4);
  if (label == TauLabel::k11) {
    const double r = 1.0 / std::sqrt(2.0);
    ComplexMatrix m = ii;
    m += r * tensor(pauli_x(), pauli_x());
    m += r * tensor(pauli_x(), pauli_z());
    m += r * tensor(pauli_z(), pauli_x());
    m -= r * tensor(pauli_z(), pauli_z());
    m += tensor(pauli_y(), pauli_y());
    return DensityMatrix(m / 4.0, {2, 2});
  }
  ComplexMatrix m = (ii + tensor(pauli_x(), pauli_x())) / 4.0;
  return DensityMatrix(std::move(m), {2, 2});
}

DensityMatrix rho_xyab(double nu) {
  require(nu > 0.0 && nu < 1.0, "rho_xyab: nu outside (0, 1)");
  const double plow = (1.0 - nu) / 3.0;
  ComplexMatrix m = ComplexMatrix::Zero(16, 16);
  const TauLabel labels[4] = {TauLabel::k00, TauLabel::k01, TauLabel::k10, TauLabel::k11};
  const double weights[4] = {plow, plow, plow, nu};
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      const int idx = 2 * x + y;
      const ComplexMatrix reg_x = basis(2, x) * basis(2, x).adjoint();
      const ComplexMatrix reg_y = basis(2, y) * basis(2, y).adjoint();
      const ComplexMatrix reg = tensor(reg_x, reg_y);
      m += weights[idx] * tensor(reg, tau_component(labels[idx]).matrix);
    }
  }
  return DensityMatrix(std::move(m), {2, 2, 2, 2});
}

DensityMatrix ghz(double phi) {
  ComplexVector psi = ComplexVector::Zero(8);
  psi(0) = 1.0 / std::sqrt(2.0);
  psi(7) = std::exp(Complex(0.0, phi)) / std::sqrt(2.0);
  return DensityMatrix::from_pure(psi, {2, 2, 2});
}

DensityMatrix biseparable_singlet() {
  ComplexVector singlet = ComplexVector::Zero(4);
  singlet(1) = 1.0 / std::sqrt(2.0);
  singlet(2) = -1.0 / std::sqrt(2.0);
  const ComplexVector psi = tensor(singlet, basis(2, 0));
  return DensityMatrix::from_pure(psi, {2, 2, 2});
}

DensityMatrix tripartite_mixture(double w) {
  require(w >= 0.0 && w <= 1.0, "tripartite_mixture: weight outside [0, 1]");
  ComplexMatrix m = w * ghz().matrix + (1.0 - w) * biseparable_singlet().matrix;
  return DensityMatrix(std::move(m), {2, 2, 2});
}

DensityMatrix add_white_noise(const DensityMatrix& rho, double rate) {
  require(rate >= 0.0 && rate <= 1.0, "add_white_noise: rate outside [0, 1]");
  const int d = rho.dim();
  ComplexMatrix m = (1.0 - rate) * rho.matrix + rate * identity(d) / static_cast<double>(d);
  return DensityMatrix(std::move(m), rho.dims);
}

std::string StateSpec::to_config() const {
  std::ostringstream os;
  os.precision(17);
  os << "family=" << family << "\n";
  if (theta) os << "theta=" << *theta << "\n";
  if (weight) os << "weight=" << *weight << "\n";
  if (nu) os << "nu=" << *nu << "\n";
  if (tau) os << "tau=" << *tau << "\n";
  if (phi) os << "phi=" << *phi << "\n";
  return os.str();
}

StateSpec StateSpec::from_config(const std::string& s) {
  StateSpec spec;
  std::istringstream is(s);
  std::string line;
  std::map<std::string, std::string> kv;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    require(eq != std::string::npos, "state config line is not key=value");
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  require(kv.count("family") > 0, "state config missing family");
  spec.family = kv["family"];
  if (kv.count("theta")) spec.theta = std::stod(kv["theta"]);
  if (kv.count("weight")) spec.weight = std::stod(kv["weight"]);
  if (kv.count("nu")) spec.nu = std::stod(kv["nu"]);
  if (kv.count("tau")) spec.tau = kv["tau"];
  if (kv.count("phi")) spec.phi = std::stod(kv["phi"]);
  return spec;
}

DensityMatrix make_state(const StateSpec& spec) {
  if (spec.family == "partial") {
    require(spec.theta.has_value(), "partial state needs theta");
    return partially_entangled(*spec.theta);
  }
  if (spec.family == "singlet") {
    // The canonical maximally entangled two-qubit state in the frame of the
    // CHSH extraction target.
    return tau_component(TauLabel::k11);
  }
  if (spec.family == "werner") {
    require(spec.weight.has_value(), "werner state needs weight");
    return werner(*spec.weight);
  }
  if (spec.family == "dephased") {
    require(spec.weight.has_value(), "dephased state needs weight");
    return dephased_mix(*spec.weight);
  }
  if (spec.family == "tau") {
    require(spec.tau.has_value(), "tau state needs register label");
    return tau_component(tau_label_from_string(*spec.tau));
  }
  if (spec.family == "rho_xyab") {
    require(spec.nu.has_value(), "rho_xyab state needs nu");
    return rho_xyab(*spec.nu);
  }
  if (spec.family == "ghz") {
    return spec.phi ? ghz(*spec.phi) : ghz();
  }
  if (spec.family == "tripartite_mixture") {
    require(spec.weight.has_value(), "tripartite_mixture needs weight");
    return tripartite_mixture(*spec.weight);
  }
  throw std::invalid_argument("unknown state family: " + spec.family);
}

}  // namespace qcert::states
