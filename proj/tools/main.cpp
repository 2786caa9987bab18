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

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qcert/runners.hpp"

namespace {

using qcert::runners::Dataset;
using qcert::runners::Status;

struct CommonFlags {
  std::string state = "singlet";
  std::optional<double> theta;
  std::optional<double> nu;
  std::optional<double> w;
  std::optional<std::string> tau;
  std::optional<double> phi;
  int samples = 1000;
  long long shots = 0;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "csv";
  double tolerance = -1.0;  // negative = per-command default
};

void add_common(CLI::App* cmd, CommonFlags* flags) {
  cmd->add_option("--state", flags->state,
                  "state family: singlet|partial|werner|dephased|tau|rho_xyab|ghz|"
                  "tripartite_mixture");
  cmd->add_option("--theta", flags->theta, "angle for the partial family (radians)");
  cmd->add_option("--nu", flags->nu, "weight of the 11 register component");
  cmd->add_option("--w", flags->w, "mixture weight / visibility");
  cmd->add_option("--tau", flags->tau, "register label 00|01|10|11");
  cmd->add_option("--phi", flags->phi, "GHZ phase (radians)");
  cmd->add_option("--samples", flags->samples, "number of random angle samples")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--shots", flags->shots, "shots per measurement context (0 = exact)");
  cmd->add_option("--seed", flags->seed, "RNG seed");
  cmd->add_option("--out", flags->out, "output path (default: stdout)");
  cmd->add_option("--format", flags->format, "output format: csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--tolerance", flags->tolerance, "override the assertion tolerance");
  cmd->set_config("--config", "", "key=value config file; flags take precedence");
}

qcert::states::StateSpec make_spec(const CommonFlags& flags) {
  qcert::states::StateSpec spec;
  spec.family = flags.state;
  spec.theta = flags.theta;
  spec.nu = flags.nu;
  spec.weight = flags.w;
  spec.tau = flags.tau;
  spec.phi = flags.phi;
  return spec;
}

int emit(const Dataset& data, const CommonFlags& flags) {
  const std::string text = flags.format == "json" ? data.to_json() : data.to_csv();
  if (flags.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream file(flags.out, std::ios::binary);
    if (!file) {
      std::cerr << "error: cannot write " << flags.out << "\n";
      return static_cast<int>(Status::UsageError);
    }
    file << text;
  }
  return static_cast<int>(data.status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Robust self-testing toolkit for bipartite and tripartite entangled states"};
  app.require_subcommand(1);

  CommonFlags fig2_flags;
  CLI::App* fig2 = app.add_subcommand(
      "fig2-sweep", "random-angle CHSH operator-inequality sweep on a two-qubit state");
  add_common(fig2, &fig2_flags);

  CommonFlags band_flags;
  CLI::App* band = app.add_subcommand(
      "fig2d-band", "extractability band of the register family over a nu grid");
  add_common(band, &band_flags);
  int band_restarts = 8;
  band->add_option("--restarts", band_restarts, "random see-saw restarts");

  CommonFlags fig3_flags;
  std::string fig3_mode = "sweep";
  CLI::App* fig3 = app.add_subcommand(
      "fig3", "tripartite inequality sweep (sweep mode) or mixture tightness (band mode)");
  add_common(fig3, &fig3_flags);
  fig3->add_option("--mode", fig3_mode, "sweep|band")->check(CLI::IsMember({"sweep", "band"}));

  CommonFlags fig4_flags;
  bool fig4_inject = false;
  CLI::App* fig4 = app.add_subcommand("fig4", "no-signalling marginal verification");
  add_common(fig4, &fig4_flags);
  fig4->add_flag("--inject-signalling", fig4_inject,
                 "test fixture: bias one context before checking");

  CommonFlags bounds_flags;
  std::string bounds_scenario = "both";
  int bounds_steps = 50;
  CLI::App* bounds = app.add_subcommand("bounds", "print the analytic robustness bounds");
  add_common(bounds, &bounds_flags);
  bounds->add_option("--scenario", bounds_scenario, "chsh|mermin|both")
      ->check(CLI::IsMember({"chsh", "mermin", "both"}));
  bounds->add_option("--steps", bounds_steps, "grid points per scenario");

  CommonFlags margin_flags;
  double margin_a = 0.0, margin_b = 0.0;
  std::optional<double> margin_c;
  CLI::App* margin = app.add_subcommand("margin", "operator-inequality margin at one angle tuple");
  add_common(margin, &margin_flags);
  margin->add_option("--a", margin_a, "Alice angle (radians)")->required();
  margin->add_option("--b", margin_b, "Bob angle (radians)")->required();
  margin->add_option("--c", margin_c, "Charlie angle (radians, tripartite)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : static_cast<int>(Status::UsageError);
  }

  try {
    if (fig2->parsed()) {
      qcert::runners::SweepConfig config;
      config.state = make_spec(fig2_flags);
      if (fig2_flags.state == "partial" && !fig2_flags.theta) config.state.theta = M_PI / 4.0;
      config.samples = fig2_flags.samples;
      config.seed = fig2_flags.seed;
      if (fig2_flags.tolerance >= 0.0) config.tolerance = fig2_flags.tolerance;
      return emit(qcert::runners::run_fig2_sweep(config), fig2_flags);
    }
    if (band->parsed()) {
      qcert::runners::BandConfig config;
      if (band_flags.nu) config.nu_grid = {*band_flags.nu};
      config.seed = band_flags.seed;
      if (band_flags.tolerance >= 0.0) config.tolerance = band_flags.tolerance;
      config.seesaw.random_restarts = band_restarts;
      return emit(qcert::runners::run_fig2d_band(config), band_flags);
    }
    if (fig3->parsed()) {
      qcert::runners::Fig3Config config;
      config.band_mode = fig3_mode == "band";
      config.state = make_spec(fig3_flags);
      if (!fig3->count("--state")) config.state.family = "ghz";
      if (fig3_flags.w) config.w_grid = {*fig3_flags.w};
      config.samples = fig3_flags.samples;
      config.seed = fig3_flags.seed;
      if (fig3_flags.tolerance >= 0.0) {
        config.sweep_tolerance = fig3_flags.tolerance;
        config.band_tolerance = fig3_flags.tolerance;
      }
      return emit(qcert::runners::run_fig3(config), fig3_flags);
    }
    if (fig4->parsed()) {
      qcert::runners::Fig4Config config;
      config.state = make_spec(fig4_flags);
      if (!fig4->count("--state")) config.state.family = "singlet";
      config.shots = fig4_flags.shots;
      config.seed = fig4_flags.seed;
      if (fig4_flags.tolerance >= 0.0) config.threshold_sigma = fig4_flags.tolerance;
      config.inject_signalling = fig4_inject;
      return emit(qcert::runners::run_fig4(config), fig4_flags);
    }
    if (bounds->parsed()) {
      qcert::runners::BoundsConfig config;
      config.scenario = bounds_scenario;
      config.steps = bounds_steps;
      return emit(qcert::runners::run_bounds(config), bounds_flags);
    }
    if (margin->parsed()) {
      qcert::runners::MarginConfig config;
      config.angles = margin_c ? qcert::bell::MeasurementAngles(margin_a, margin_b, *margin_c)
                               : qcert::bell::MeasurementAngles(margin_a, margin_b);
      if (margin_flags.tolerance >= 0.0) config.tolerance = margin_flags.tolerance;
      return emit(qcert::runners::run_margin(config), margin_flags);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(Status::UsageError);
  }
  return static_cast<int>(Status::UsageError);
}
