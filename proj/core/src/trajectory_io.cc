// Copyright 2026 The Surgeseek Authors
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

#include "surgeseek/trajectory_io.h"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace surgeseek {

std::string format_number(double value) {
  char buffer[64];
  const int n = std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return std::string(buffer, static_cast<std::size_t>(n));
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory) {
  out << kTrajectoryCsvHeader << '\n';
  for (std::size_t i = 0; i < trajectory.size(); ++i) {
    const VehicleState& s = trajectory.states[i];
    const ControlInput& u = trajectory.inputs[i];
    const double row[] = {trajectory.times[i], s.q.x, s.q.y, s.q.theta, s.v.vx,
                          s.v.vy, s.v.omega, u.u1, u.u2, trajectory.cost[i]};
    for (std::size_t j = 0; j < std::size(row); ++j) {
      if (j > 0) out << ',';
      out << format_number(row[j]);
    }
    out << '\n';
  }
}

Trajectory read_trajectory_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kTrajectoryCsvHeader) {
    throw std::runtime_error("trajectory csv: unexpected header");
  }
  Trajectory traj;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    double row[10];
    const char* p = line.data();
    const char* end = line.data() + line.size();
    for (int j = 0; j < 10; ++j) {
      const auto [next, ec] = std::from_chars(p, end, row[j]);
      if (ec != std::errc() || (j < 9 && (next == end || *next != ','))) {
        throw std::runtime_error("trajectory csv: malformed row " +
                                 std::to_string(line_no));
      }
      p = next + (j < 9 ? 1 : 0);
    }
    traj.times.push_back(row[0]);
    traj.states.push_back({{row[1], row[2], row[3]}, {row[4], row[5], row[6]}});
    traj.inputs.push_back({row[7], row[8]});
    traj.cost.push_back(row[9]);
  }
  return traj;
}

void write_metrics_csv(std::ostream& out, std::span<const SweepRow> rows) {
  out << kMetricsCsvHeader << '\n';
  for (const SweepRow& row : rows) {
    const RunMetrics& m = row.metrics;
    out << format_number(row.value) << ',' << format_number(m.final_error) << ','
        << (m.convergence_time ? format_number(*m.convergence_time) : "never") << ','
        << format_number(m.path_length) << ',' << format_number(m.sup_deviation)
        << ',';
    // Keep the status a single CSV field.
    for (char c : row.status) out << (c == ',' || c == '\n' ? ';' : c);
    out << '\n';
  }
}

void write_double_integrator_csv(std::ostream& out,
                                 const DoubleIntegratorReport& report) {
  out << "t,xi1,xi2,z1,z2\n";
  for (std::size_t i = 0; i < report.full.times.size(); ++i) {
    out << format_number(report.full.times[i]) << ','
        << format_number(report.full.states[i](0)) << ','
        << format_number(report.full.states[i](1)) << ','
        << format_number(report.averaged.states[i](0)) << ','
        << format_number(report.averaged.states[i](1)) << '\n';
  }
}

}  // namespace surgeseek
