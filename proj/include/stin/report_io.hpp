// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <ostream>
#include <string>

#include "stin/cost_model.hpp"
#include "stin/orchestrator.hpp"

namespace stin {

/// Numbers are printed with "%.9g" so files are byte-identical across runs.
std::string format_number(double x);

/// One row per vehicle: split, bandwidth, power, delays, energies, feasibility.
void write_vehicle_report_csv(std::ostream& out, const EfficiencyReport& report,
                              const AllocationState& state);
void write_matching_csv(std::ostream& out, const AllocationState& state);
/// Per-iteration objective and block deltas. Wall time is left out.
void write_trace_csv(std::ostream& out, const AoTrace& trace);

void write_experiment_rows_csv(std::ostream& out, const ExperimentSpec& spec,
                               const ExperimentResult& result);
void write_experiment_summary_csv(std::ostream& out, const ExperimentSpec& spec,
                                  const ExperimentResult& result);
/// Mean efficiency per scheme against the sweep value.
void write_experiment_svg(std::ostream& out, const ExperimentSpec& spec,
                          const ExperimentResult& result);

}  // namespace stin
