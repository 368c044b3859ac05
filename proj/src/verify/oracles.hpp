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

// Brute-force reference computations. Slow on purpose; only for tests and
// the acceptance suite.

#include <cstdint>
#include <vector>

#include "stin/channels.hpp"
#include "stin/cost_model.hpp"
#include "stin/matching.hpp"
#include "stin/rng.hpp"
#include "stin/solvers.hpp"

namespace stin::verify {

// ------------------------------------------------------------------ P1

struct GridTaskResult {
  TaskPoint point;
  double energy = 0;
  bool feasible = false;
};

/// Scans the (theta, zeta) grid with spacing `step` and returns the
/// cheapest feasible grid point. With `boundary_points`, each grid line also
/// contributes the points where it meets the polytope boundary.
GridTaskResult grid_task(const TaskProblem& problem, double step, bool boundary_points = true);

double task_energy(const TaskCoefficients& c, const TaskPoint& p);
bool task_feasible(const TaskPolytope& r, const TaskPoint& p, double tol = 1e-12);

/// Random coefficients and polytope that always admit a feasible point.
TaskProblem random_task_problem(RngStream& rng);

// ------------------------------------------------------------------ P2 / P3

/// Best efficiency over the bandwidth simplex for a 3-vehicle instance,
/// scanning alpha on a grid with spacing `step`. Points below a vehicle's
/// lower bound are skipped. Returns 0 if none is feasible.
double grid_bandwidth_efficiency(const Scenario& s, const AllocationState& state, double step);

/// Best efficiency over a 2-vehicle power grid (`points` per axis between
/// each vehicle's minimum power and P_max).
double grid_power_efficiency(const Scenario& s, const AllocationState& state, int points);

/// Three- or two-vehicle scenario with random geometry and tasks, one
/// cluster, and a fixed relay rate. Infeasible splits are avoided by giving
/// the vehicles a generous deadline.
Scenario small_scenario(int vehicles, std::uint64_t seed);

/// A random feasible state for a small scenario: one cluster holding every
/// sub-channel, random split, power and bandwidth. Throws InfeasibleError
/// when 1000 draws all fail, e.g. when a vehicle's channel is too weak.
AllocationState random_small_state(const Scenario& s, RngStream& rng);

// ------------------------------------------------------------------ matching

/// Random strict utilities with reservation zero and a mix of acceptable
/// and unacceptable pairs.
PreferenceLists random_preferences(int clusters, int subchannels, RngStream& rng);

/// Blocking pairs straight from the definition, without rank shortcuts.
std::vector<BlockingPair> brute_force_blocking(const PreferenceLists& prefs, const Matching& m,
                                               int q_max);

/// Every complete assignment within quota that has no blocking pair.
std::vector<Matching> enumerate_stable(const PreferenceLists& prefs, int q_max);

// ------------------------------------------------------------------ channels

/// A random NOMA state whose total received SNR on every sub-channel stays
/// at or below `max_total_snr` for the whole stay.
struct LowSnrInstance {
  NomaChannelState state;
  std::vector<double> powers;
  std::vector<std::uint8_t> held;
  std::vector<double> stay;
};
LowSnrInstance random_low_snr_instance(RngStream& rng, double max_total_snr);

/// Two-sample Kolmogorov-Smirnov statistic.
double ks_statistic(std::vector<double> a, std::vector<double> b);

}  // namespace stin::verify
