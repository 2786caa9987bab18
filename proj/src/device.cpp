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

#include "qcert/device.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace qcert::device {

using qcore::identity;
using qcore::Rng;
using qcore::tensor;

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

double CorrelationTable::probability(int context, int outcome) const {
  const double v = values[context][outcome];
  if (!sampled) return v;
  return shots > 0 ? v / static_cast<double>(shots) : 0.0;
}

double CorrelationTable::correlator(int context) const {
  double acc = 0.0;
  for (int out = 0; out < outcomes(); ++out) {
    int sign = 1;
    for (int p = 0; p < parties; ++p) sign *= outcome_sign(out, p);
    acc += sign * probability(context, out);
  }
  return acc;
}

double CorrelationTable::marginal(int party, int setting, int others) const {
  // Unpack the other parties' settings into a full context index.
  int context = setting << party;
  int bit = 0;
  for (int p = 0; p < parties; ++p) {
    if (p == party) continue;
    context |= ((others >> bit) & 1) << p;
    ++bit;
  }
  double acc = 0.0;
  for (int out = 0; out < outcomes(); ++out) {
    acc += outcome_sign(out, party) * probability(context, out);
  }
  return acc;
}

void CorrelationTable::validate() const {
  require(parties == 2 || parties == 3, "correlation table: 2 or 3 parties");
  require(static_cast<int>(values.size()) == contexts(), "correlation table: missing contexts");
  for (const auto& row : values) {
    require(static_cast<int>(row.size()) == outcomes(), "correlation table: missing outcomes");
    double sum = 0.0;
    for (double v : row) {
      require(v >= 0.0, "correlation table: negative entry");
      sum += v;
    }
    if (sampled) {
      require(std::llround(sum) == shots, "correlation table: counts must sum to shots");
    } else {
      require(std::abs(sum - 1.0) <= 1e-12, "correlation table: distribution must sum to 1");
    }
  }
}

CorrelationTable born_table(const DensityMatrix& rho, const MeasurementAngles& angles) {
  const int parties = rho.factors();
  require(parties == 2 || parties == 3, "born_table: 2 or 3 qubits required");
  require((parties == 3) == angles.c.has_value(), "born_table: angle count mismatch");
  const bell::Plane plane = parties == 2 ? bell::Plane::XZ : bell::Plane::XY;

  // Projectors (I +- observable)/2 per party and setting.
  ComplexMatrix proj[3][2][2];
  const double angle_list[3] = {angles.a, angles.b, angles.c.value_or(0.0)};
  for (int p = 0; p < parties; ++p) {
    for (int s = 0; s < 2; ++s) {
      const ComplexMatrix obs = bell::observable(angle_list[p], s, plane);
      proj[p][s][0] = (identity(2) + obs) / 2.0;  // outcome +1
      proj[p][s][1] = (identity(2) - obs) / 2.0;  // outcome -1
    }
  }

  CorrelationTable table;
  table.parties = parties;
  table.sampled = false;
  table.values.assign(1 << parties, std::vector<double>(1 << parties, 0.0));
  for (int ctx = 0; ctx < table.contexts(); ++ctx) {
    for (int out = 0; out < table.outcomes(); ++out) {
      ComplexMatrix op = proj[0][ctx & 1][out & 1];
      for (int p = 1; p < parties; ++p) {
        op = tensor(op, proj[p][(ctx >> p) & 1][(out >> p) & 1]);
      }
      double prob = (rho.matrix * op).trace().real();
      if (prob < 0.0 && prob > -1e-13) prob = 0.0;
      table.values[ctx][out] = prob;
    }
    // Remove rounding drift so each conditional distribution sums to 1 exactly.
    double sum = 0.0;
    for (double v : table.values[ctx]) sum += v;
    for (double& v : table.values[ctx]) v /= sum;
  }
  table.validate();
  return table;
}

CorrelationTable sample_counts(const CorrelationTable& exact, long long shots,
                               std::uint64_t seed) {
  require(!exact.sampled, "sample_counts: input must be an exact table");
  require(shots >= 1, "sample_counts: shots must be positive");
  exact.validate();

  CorrelationTable out;
  out.parties = exact.parties;
  out.sampled = true;
  out.shots = shots;
  out.values.assign(exact.contexts(), std::vector<double>(exact.outcomes(), 0.0));

  Rng base(seed);
  for (int ctx = 0; ctx < exact.contexts(); ++ctx) {
    // Independent stream per measurement context, so sampling order across
    // contexts cannot change the draws.
    Rng rng = base.derived(static_cast<std::uint64_t>(ctx) + 1);
    std::vector<double> cumulative(exact.outcomes());
    double acc = 0.0;
    for (int o = 0; o < exact.outcomes(); ++o) {
      acc += exact.values[ctx][o];
      cumulative[o] = acc;
    }
    cumulative.back() = 1.0;
    for (long long shot = 0; shot < shots; ++shot) {
      const double u = rng.uniform();
      int o = 0;
      while (cumulative[o] <= u) ++o;
      out.values[ctx][o] += 1.0;
    }
  }
  out.validate();
  return out;
}

NoSignallingReport no_signalling_check(const CorrelationTable& table, double threshold_sigma) {
  table.validate();
  NoSignallingReport report;
  report.sampled = table.sampled;
  report.threshold_sigma = threshold_sigma;
  const int foreign = 1 << (table.parties - 1);
  const double n = static_cast<double>(table.shots);

  for (int party = 0; party < table.parties; ++party) {
    for (int setting = 0; setting < 2; ++setting) {
      NoSignallingReport::Entry entry;
      entry.party = party;
      entry.setting = setting;
      for (int others = 0; others < foreign; ++others) {
        const double e = table.marginal(party, setting, others);
        entry.estimates.push_back(e);
        if (table.sampled) {
          const double var = std::max(0.0, 1.0 - e * e) / n;
          entry.stderrs.push_back(std::sqrt(var));
        } else {
          entry.stderrs.push_back(0.0);
        }
      }
      for (int i = 0; i < foreign; ++i) {
        for (int j = i + 1; j < foreign; ++j) {
          const double diff = std::abs(entry.estimates[i] - entry.estimates[j]);
          entry.max_abs_diff = std::max(entry.max_abs_diff, diff);
          if (table.sampled) {
            const double se =
                std::hypot(entry.stderrs[i], entry.stderrs[j]);
            double sigma = 0.0;
            if (se > 0.0) {
              sigma = diff / se;
            } else if (diff > 1e-12) {
              sigma = std::numeric_limits<double>::infinity();
            }
            entry.max_sigma = std::max(entry.max_sigma, sigma);
          }
        }
      }
      report.max_abs_diff = std::max(report.max_abs_diff, entry.max_abs_diff);
      report.max_sigma = std::max(report.max_sigma, entry.max_sigma);
      report.entries.push_back(std::move(entry));
    }
  }
  report.pass = table.sampled ? report.max_sigma <= threshold_sigma
                              : report.max_abs_diff <= tol().no_signalling_exact;
  return report;
}

double bell_value(const CorrelationTable& table) {
  if (table.parties == 2) {
    // Contexts packed as x + 2y.
    return table.correlator(0) + table.correlator(2) + table.correlator(1) -
           table.correlator(3);
  }
  // Mermin combination A0B0C0 - A0B1C1 - A1B0C1 - A1B1C0, contexts x + 2y + 4z.
  return table.correlator(0) - table.correlator(2 + 4) - table.correlator(1 + 4) -
         table.correlator(1 + 2);
}

CorrelationTable inject_signalling(const CorrelationTable& exact, double shift) {
  require(!exact.sampled, "inject_signalling: exact table required");
  CorrelationTable out = exact;
  // Shift party 0's conditional outcome distribution in the context where all
  // other settings are 1: move `shift`/2 of probability per foreign outcome
  // block from outcome -1 to outcome +1.
  const int ctx = out.contexts() - 2;  // x = 0, all other settings 1
  const int blocks = out.outcomes() / 2;
  const double delta = shift / blocks;
  for (int rest = 0; rest < blocks; ++rest) {
    // Outcome indices with party 0 bit 0 (+1) and bit 1 (-1).
    const int plus = rest << 1;
    const int minus = plus | 1;
    const double moved = std::min(delta, out.values[ctx][minus]);
    out.values[ctx][plus] += moved;
    out.values[ctx][minus] -= moved;
  }
  out.validate();
  return out;
}

std::string to_csv(const CorrelationTable& table) {
  std::ostringstream os;
  os << "# correlation table parties=" << table.parties
     << " mode=" << (table.sampled ? "counts" : "probability");
  if (table.sampled) os << " shots=" << table.shots;
  os << "\n";
  os << "# columns: " << (table.parties == 2 ? "x,y" : "x,y,z") << ","
     << (table.parties == 2 ? "a,b" : "a,b,c") << ",value\n";
  char buf[64];
  for (int ctx = 0; ctx < table.contexts(); ++ctx) {
    for (int out = 0; out < table.outcomes(); ++out) {
      for (int p = 0; p < table.parties; ++p) os << ((ctx >> p) & 1) << ",";
      for (int p = 0; p < table.parties; ++p) {
        os << (CorrelationTable::outcome_sign(out, p) > 0 ? "+1" : "-1") << ",";
      }
      if (table.sampled) {
        std::snprintf(buf, sizeof buf, "%lld", std::llround(table.values[ctx][out]));
      } else {
        std::snprintf(buf, sizeof buf, "%.17g", table.values[ctx][out]);
      }
      os << buf << "\n";
    }
  }
  return os.str();
}

CorrelationTable from_csv(const std::string& csv) {
  std::istringstream is(csv);
  std::string line;
  CorrelationTable table;
  bool header_seen = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (!header_seen && line.find("correlation table") != std::string::npos) {
        header_seen = true;
        const auto p = line.find("parties=");
        require(p != std::string::npos, "correlation csv: missing parties field");
        table.parties = std::stoi(line.substr(p + 8));
        table.sampled = line.find("mode=counts") != std::string::npos;
        const auto sh = line.find("shots=");
        if (sh != std::string::npos) table.shots = std::stoll(line.substr(sh + 6));
        table.values.assign(1 << table.parties,
                            std::vector<double>(1 << table.parties, 0.0));
      }
      continue;
    }
    require(header_seen, "correlation csv: data before header");
    std::istringstream row(line);
    std::string tok;
    int ctx = 0, out = 0;
    for (int p = 0; p < table.parties; ++p) {
      std::getline(row, tok, ',');
      ctx |= (std::stoi(tok) & 1) << p;
    }
    for (int p = 0; p < table.parties; ++p) {
      std::getline(row, tok, ',');
      out |= (std::stoi(tok) > 0 ? 0 : 1) << p;
    }
    std::getline(row, tok, ',');
    table.values[ctx][out] = std::stod(tok);
  }
  table.validate();
  return table;
}

}  // namespace qcert::device
