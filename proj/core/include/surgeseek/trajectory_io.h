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

#ifndef SURGESEEK_TRAJECTORY_IO_H_
#define SURGESEEK_TRAJECTORY_IO_H_

#include <iosfwd>
#include <span>
#include <string>

#include "surgeseek/averaging_core.h"
#include "surgeseek/ode_engine.h"
#include "surgeseek/runner.h"

namespace surgeseek {

inline constexpr const char* kTrajectoryCsvHeader =
    "t,x,y,theta,vx,vy,omega,u1,u2,rho";
inline constexpr const char* kMetricsCsvHeader =
    "param_value,final_error,conv_time_r,path_length,sup_deviation,status";

// "%.17g"; round-trips every finite double.
std::string format_number(double value);

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);

// Throws std::runtime_error on a header mismatch or malformed row.
Trajectory read_trajectory_csv(std::istream& in);

// conv_time_r is "never" when the run did not settle.
void write_metrics_csv(std::ostream& out, std::span<const SweepRow> rows);

// t,xi1,xi2,z1,z2 for the double-integrator demo.
void write_double_integrator_csv(std::ostream& out,
                                 const DoubleIntegratorReport& report);

}  // namespace surgeseek

#endif  // SURGESEEK_TRAJECTORY_IO_H_
