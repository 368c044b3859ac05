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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stin/cost_model.hpp"
#include "stin/matching.hpp"
#include "stin/scenario.hpp"
#include "stin/solvers.hpp"

namespace stin {

enum class Scheme { Jtora, PriorityLocal, PriorityEdge, Random, OneToOne, WaterFilling, EqualPower };

std::string_view scheme_name(Scheme scheme);
Scheme parse_scheme(std::string_view name);
const std::vector<Scheme>& all_schemes();

enum class PowerRule { Optimize, WaterFilling, EqualPower };
enum class MatchingRule { Vsma, OneToOne };

/// Which solver each block-coordinate step uses.
struct AoPolicy {
  TaskRule task = TaskRule::MinEnergy;
  PowerRule power = PowerRule::Optimize;
  MatchingRule matching = MatchingRule::Vsma;
};

struct AoOptions {
  int max_iterations = 50;
  double tolerance = 1e-5;
  FractionalOptions inner;
  RateModel rate_model = RateModel::Approx;
};

struct AoIteration {
  int k = 0;
  double efficiency = 0;
  double energy = 0;
  double delta_task = 0, delta_power = 0, delta_matching = 0, delta_bandwidth = 0;
  int inner_power = 0, inner_bandwidth = 0;
  bool matching_accepted = false;
  double wall_seconds = 0;
};

struct AoTrace {
  std::vector<AoIteration> iterations;
  bool converged = false;
  std::string termination;
  long matching_proposals = 0;
};

struct RunResult {
  AllocationState state;
  AoTrace trace;
  EfficiencyReport report;
};

/// Initial iterate: uniform alpha, power per the rule (P_max/2 by
/// default), zero offload, eta from one VSMA (or one-to-one) round.
AllocationState initial_state(const Scenario& s, const AoPolicy& policy = {});

/// Alternating optimization: task split, power, matching, bandwidth, in that
/// order, until the relative efficiency change drops to the tolerance or
/// the iteration cap is hit. Optimizing steps are accepted only when they
/// keep the iterate feasible and do not lower the efficiency.
/// Throws InfeasibleError if the first task split is infeasible.
RunResult run_alternating(const Scenario& s, const AoPolicy& policy, const AoOptions& options = {},
                          std::optional<AllocationState> start = std::nullopt);

RunResult run_jtora(const Scenario& s, const AoOptions& options = {},
                    std::optional<AllocationState> start = std::nullopt);

/// Capped water-filling per cluster over |h|^2 mean(d^-rho') / sigma^2 with
/// a budget of K * P_max / 2.
std::vector<double> water_filling_power(const Scenario& s, const AllocationState& state);

RunResult run_scheme(const Scenario& s, Scheme scheme, const AoOptions& options = {});

EfficiencyReport run_baseline(const Scenario& s, Scheme scheme, const AoOptions& options = {});

// ------------------------------------------------------------- experiments

enum class SweepVariable { Vehicles, TaskBits, Deadline, Subchannels };

std::string_view sweep_name(SweepVariable v);
SweepVariable parse_sweep(std::string_view name);

struct ExperimentSpec {
  SweepVariable sweep = SweepVariable::Vehicles;
  std::vector<double> values;
  std::vector<Scheme> schemes;
  std::vector<std::uint64_t> seeds;
  ScenarioConfig base;
  int cluster_size = 5;  // vehicles sweep: clusters = ceil(M / cluster_size)
  bool plot = true;
  std::string output;
  AoOptions ao;

  void validate() const;
};

struct ExperimentRow {
  double value = 0;
  std::uint64_t seed = 0;
  Scheme scheme = Scheme::Jtora;
  double efficiency = 0;
  double energy = 0;
  double mean_delay = 0;
  int iterations = 0;
  std::string error;
};

struct ExperimentSummary {
  double value = 0;
  Scheme scheme = Scheme::Jtora;
  double mean = 0;
  double stddev = 0;
  int ok = 0;
  int failed = 0;
};

struct ExperimentResult {
  std::vector<ExperimentRow> rows;  // sorted by (value, seed, scheme)
  std::vector<ExperimentSummary> summary;

  const ExperimentSummary* find(double value, Scheme scheme) const;
};

/// The scenario config for one sweep point.
ScenarioConfig sweep_point(const ExperimentSpec& spec, double value, std::uint64_t seed);

enum class Parallelism { Serial, OpenMP };

ExperimentResult run_experiment(const ExperimentSpec& spec,
                                Parallelism parallelism = Parallelism::OpenMP);

}  // namespace stin
