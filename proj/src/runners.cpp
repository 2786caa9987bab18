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

#include "qcert/runners.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace qcert::runners {

using selftest::kChshOffset;
using selftest::kChshSlope;

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string Dataset::to_csv() const {
  std::ostringstream os;
  os << "# " << name << "\n";
  for (const std::string& n : notes) os << "# " << n << "\n";
  os << "# columns: ";
  for (std::size_t i = 0; i < columns.size(); ++i) {
    os << columns[i] << (i + 1 < columns.size() ? "," : "");
  }
  os << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      os << row[i] << (i + 1 < row.size() ? "," : "");
    }
    os << "\n";
  }
  return os.str();
}

std::string Dataset::to_json() const {
  nlohmann::ordered_json j;
  j["name"] = name;
  j["notes"] = notes;
  j["status"] = static_cast<int>(status);
  nlohmann::ordered_json out_rows = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < columns.size() && i < row.size(); ++i) {
      // Values were formatted as numbers; keep them numeric in JSON.
      try {
        std::size_t pos = 0;
        const double v = std::stod(row[i], &pos);
        if (pos == row[i].size()) {
          obj[columns[i]] = v;
          continue;
        }
      } catch (...) {
      }
      obj[columns[i]] = row[i];
    }
    out_rows.push_back(std::move(obj));
  }
  j["rows"] = std::move(out_rows);
  return j.dump(2) + "\n";
}

namespace {

// Bounded worker pool over independent sample indices; results land in a
// preallocated array so output order never depends on scheduling.
void parallel_for(int count, int workers, const std::function<void(int)>& body) {
  if (workers <= 0) {
    workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers <= 0) workers = 1;
  }
  workers = std::min(workers, count > 0 ? count : 1);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<int> next{0};
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace

Dataset run_fig2_sweep(const SweepConfig& config) {
  Dataset data;
  data.name = "chsh operator-inequality sweep";
  data.columns = {"index", "a", "b", "W", "K", "bound", "margin"};

  const states::DensityMatrix rho = states::make_state(config.state);
  if (rho.dim() != 4) throw std::invalid_argument("fig2 sweep needs a two-qubit state");

  struct Row {
    double a, b, w, k, bound, margin;
  };
  std::vector<Row> rows(config.samples);
  qcore::Rng base(config.seed);
  parallel_for(config.samples, config.workers, [&](int i) {
    qcore::Rng rng = base.derived(static_cast<std::uint64_t>(i) + 1);
    const double a = rng.uniform(0.0, M_PI / 2.0);
    const double b = rng.uniform(0.0, M_PI / 2.0);
    const bell::MeasurementAngles angles(a, b);
    const double w = bell::expectation(rho, bell::chsh_operator(angles));
    const double k = bell::expectation(rho, selftest::fidelity_operator_chsh(angles).matrix);
    const double bound = kChshSlope * w - kChshOffset;
    rows[i] = Row{a, b, w, k, bound, k - bound};
  });

  int violations = 0;
  for (int i = 0; i < config.samples; ++i) {
    const Row& r = rows[i];
    if (r.margin < -config.tolerance) ++violations;
    data.rows.push_back({std::to_string(i), format_value(r.a), format_value(r.b),
                         format_value(r.w), format_value(r.k), format_value(r.bound),
                         format_value(r.margin)});
  }
  data.notes.push_back("violations=" + std::to_string(violations));
  data.status = violations == 0 ? Status::Ok : Status::BoundViolation;
  return data;
}

Dataset run_fig2d_band(const BandConfig& config) {
  Dataset data;
  data.name = "register-family extractability band";
  data.columns = {"nu", "beta", "xi", "lower", "upper", "width"};

  std::vector<double> grid = config.nu_grid;
  if (grid.empty()) {
    for (int i = 1; i <= 9; ++i) grid.push_back(i / 10.0);
  }

  // Per-component maximal violations are shared across the grid.
  const double beta_high =
      bell::max_chsh_violation(states::tau_component(states::TauLabel::k11)).beta;
  const double beta_low =
      bell::max_chsh_violation(states::tau_component(states::TauLabel::k00)).beta;

  bool ok = true;
  for (double nu : grid) {
    const states::DensityMatrix rho = states::rho_xyab(nu);
    const double beta = nu * beta_high + (1.0 - nu) * beta_low;
    selftest::SeesawOptions opts = config.seesaw;
    opts.seed = config.seed;
    const selftest::SeesawResult res = selftest::extractability_registered(rho, opts);
    const selftest::BoundReport bounds = selftest::chsh_bounds(beta);
    const double upper = (1.0 + nu) / 2.0;
    const double width = upper - bounds.lower;
    if (res.xi < bounds.lower - config.tolerance || res.xi > upper + config.tolerance) {
      ok = false;
    }
    data.rows.push_back({format_value(nu), format_value(beta), format_value(res.xi),
                         format_value(bounds.lower), format_value(upper),
                         format_value(width)});
  }
  data.status = ok ? Status::Ok : Status::BoundViolation;
  return data;
}

Dataset run_fig3(const Fig3Config& config) {
  Dataset data;
  if (!config.band_mode) {
    data.name = "mermin operator-inequality sweep";
    data.columns = {"index", "a", "b", "c", "W", "K", "bound", "margin"};
    const states::DensityMatrix rho = states::make_state(config.state);
    if (rho.dim() != 8) throw std::invalid_argument("fig3 sweep needs a three-qubit state");

    struct Row {
      double a, b, c, w, k, bound, margin;
    };
    std::vector<Row> rows(config.samples);
    qcore::Rng base(config.seed);
    parallel_for(config.samples, config.workers, [&](int i) {
      qcore::Rng rng = base.derived(static_cast<std::uint64_t>(i) + 1);
      const double a = rng.uniform(0.0, M_PI / 2.0);
      const double b = rng.uniform(0.0, M_PI / 2.0);
      const double c = rng.uniform(0.0, M_PI / 2.0);
      const bell::MeasurementAngles angles(a, b, c);
      const double w = bell::expectation(rho, bell::mermin_operator(angles));
      const double k =
          bell::expectation(rho, selftest::fidelity_operator_mermin(angles).matrix);
      const double bound = selftest::kMerminSlope * w - selftest::kMerminOffset;
      rows[i] = Row{a, b, c, w, k, bound, k - bound};
    });

    int violations = 0;
    for (int i = 0; i < config.samples; ++i) {
      const Row& r = rows[i];
      if (r.margin < -config.sweep_tolerance) ++violations;
      data.rows.push_back({std::to_string(i), format_value(r.a), format_value(r.b),
                           format_value(r.c), format_value(r.w), format_value(r.k),
                           format_value(r.bound), format_value(r.margin)});
    }
    data.notes.push_back("violations=" + std::to_string(violations));
    data.status = violations == 0 ? Status::Ok : Status::BoundViolation;
    return data;
  }

  data.name = "tripartite mixture tightness";
  data.columns = {"w", "beta", "xi", "bound", "gap"};
  bool ok = true;
  for (double w : config.w_grid) {
    const states::DensityMatrix rho = states::tripartite_mixture(w);
    const double beta = bell::max_mermin_violation(rho).beta;
    selftest::SeesawOptions opts = config.seesaw;
    opts.seed = config.seed;
    const selftest::SeesawResult res =
        selftest::extractability(rho, selftest::mermin_target(), {2, 2, 2}, opts);
    const selftest::BoundReport bound = selftest::mermin_bound(beta);
    const double gap = res.xi - bound.lower;
    if (std::abs(gap) > config.band_tolerance) ok = false;
    data.rows.push_back({format_value(w), format_value(beta), format_value(res.xi),
                         format_value(bound.lower), format_value(gap)});
  }
  data.status = ok ? Status::Ok : Status::BoundViolation;
  return data;
}

Dataset run_fig4(const Fig4Config& config) {
  Dataset data;
  data.name = "no-signalling marginal check";
  data.columns = {"party", "setting", "context", "estimate", "stderr", "max_pair_sigma"};

  const states::DensityMatrix rho = states::make_state(config.state);
  bell::MeasurementAngles angles(M_PI / 4.0, M_PI / 4.0);
  if (rho.factors() == 3) angles.c = M_PI / 4.0;
  device::CorrelationTable table = device::born_table(rho, angles);
  if (config.inject_signalling) table = device::inject_signalling(table);
  if (config.shots > 0) table = device::sample_counts(table, config.shots, config.seed);

  const device::NoSignallingReport report =
      device::no_signalling_check(table, config.threshold_sigma);
  for (const auto& entry : report.entries) {
    for (std::size_t ctx = 0; ctx < entry.estimates.size(); ++ctx) {
      data.rows.push_back({std::to_string(entry.party), std::to_string(entry.setting),
                           std::to_string(ctx), format_value(entry.estimates[ctx]),
                           format_value(entry.stderrs[ctx]),
                           format_value(entry.max_sigma)});
    }
  }
  data.notes.push_back(std::string("mode=") + (table.sampled ? "sampled" : "exact"));
  data.notes.push_back("max_abs_diff=" + format_value(report.max_abs_diff));
  data.notes.push_back("max_sigma=" + format_value(report.max_sigma));
  data.notes.push_back(std::string("pass=") + (report.pass ? "true" : "false"));
  data.status = report.pass ? Status::Ok : Status::BoundViolation;
  return data;
}

Dataset run_bounds(const BoundsConfig& config) {
  Dataset data;
  data.name = "robustness bounds";
  data.columns = {"beta", "lower", "upper", "scenario"};
  const int steps = std::max(config.steps, 2);
  auto emit = [&](selftest::Scenario scenario) {
    const double lo = scenario == selftest::Scenario::CHSH ? 2.0 : 2.0 * std::sqrt(2.0);
    const double hi = scenario == selftest::Scenario::CHSH ? 2.0 * std::sqrt(2.0) : 4.0;
    for (int i = 0; i < steps; ++i) {
      const double beta = lo + (hi - lo) * i / (steps - 1);
      const selftest::BoundReport r = scenario == selftest::Scenario::CHSH
                                          ? selftest::chsh_bounds(beta)
                                          : selftest::mermin_bound(beta);
      data.rows.push_back({format_value(r.beta), format_value(r.lower),
                           format_value(r.upper.value_or(r.lower)),
                           scenario == selftest::Scenario::CHSH ? "chsh" : "mermin"});
    }
  };
  if (config.scenario == "chsh" || config.scenario == "both") emit(selftest::Scenario::CHSH);
  if (config.scenario == "mermin" || config.scenario == "both") {
    emit(selftest::Scenario::Mermin);
  }
  if (data.rows.empty()) {
    throw std::invalid_argument("bounds: scenario must be chsh, mermin or both");
  }
  return data;
}

Dataset run_margin(const MarginConfig& config) {
  Dataset data;
  data.name = "operator-inequality margin";
  data.columns = {"scenario", "a", "b", "c", "margin"};
  const bool tripartite = config.angles.c.has_value();
  const double margin = tripartite ? selftest::mermin_margin(config.angles)
                                   : selftest::chsh_margin(config.angles);
  data.rows.push_back({tripartite ? "mermin" : "chsh", format_value(config.angles.a),
                       format_value(config.angles.b),
                       tripartite ? format_value(*config.angles.c) : "",
                       format_value(margin)});
  data.status = margin >= -config.tolerance ? Status::Ok : Status::BoundViolation;
  return data;
}

}  // namespace qcert::runners
