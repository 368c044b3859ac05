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

#include <stdexcept>
#include <string>
#include <vector>

#include "stin/cost_model.hpp"
#include "stin/scenario.hpp"

namespace stin {

/// A subproblem has no feasible point. `constraint` names the binding
/// constraint, `vehicle` the offending vehicle (or -1).
class InfeasibleError : public std::runtime_error {
 public:
  InfeasibleError(std::string constraint, int vehicle, const std::string& what)
      : std::runtime_error(what), constraint_(std::move(constraint)), vehicle_(vehicle) {}
  const std::string& constraint() const { return constraint_; }
  int vehicle() const { return vehicle_; }

 private:
  std::string constraint_;
  int vehicle_;
};

// ------------------------------------------------------------ task split (P1)

/// E_m(theta, zeta) = local + theta * bs_slope + zeta * sat_slope.
struct TaskCoefficients {
  double local = 0;      // L phi_loc Z^2
  double bs_slope = 0;   // per-unit cost of moving work to the BS path
  double sat_slope = 0;  // per-unit cost of moving work to the satellite path
};

/// Feasible (theta, zeta): box [0, theta_max] x [0, zeta_max] cut by
/// share_min <= theta + zeta <= 1.
struct TaskPolytope {
  double theta_max = 1;
  double zeta_max = 1;
  double share_min = 0;
};

struct TaskProblem {
  TaskCoefficients cost;
  TaskPolytope region;
};

struct TaskPoint {
  double theta = 0;
  double zeta = 0;
};

enum class TaskRule {
  MinEnergy,   // the P1 optimum
  MinOffload,  // priority-local baseline
  MaxOffload,  // priority-edge baseline
};

TaskProblem task_problem(const Scenario& s, const AllocationState& state, const LinkRates& rates,
                         int m);

/// All vertices of the polytope (empty if infeasible).
std::vector<TaskPoint> task_vertices(const TaskPolytope& region);

/// Vertex enumeration. MinEnergy ties go to the larger local share.
/// Throws InfeasibleError("deadline") when the polytope is empty.
TaskPoint solve_task_vertex(const TaskProblem& problem, TaskRule rule = TaskRule::MinEnergy,
                            int vehicle = -1);

struct TaskAllocation {
  std::vector<double> theta;
  std::vector<double> zeta;
};

TaskAllocation solve_task_allocation(const Scenario& s, const AllocationState& state,
                                     TaskRule rule = TaskRule::MinEnergy);

// ------------------------------------------------- quadratic transform (P2/P3)

struct FractionalOptions {
  int max_iterations = 100;
  double tolerance = 1e-8;
};

struct FractionalResult {
  std::vector<double> values;     // alpha or P
  double auxiliary = 0;           // y or x at the last iterate
  std::vector<double> surrogate;  // surrogate objective per iterate
  int iterations = 0;
};

/// minimize sum_m weight_m / alpha_m  s.t. sum alpha = 1, alpha_m >= lower_m.
/// weight_m == 0 gets alpha_m = lower_m; all-zero weights give the uniform
/// split (clipped up to the lower bounds). Throws InfeasibleError("bandwidth_sum")
/// if the lower bounds sum past one.
std::vector<double> sqrt_weighted_simplex(const std::vector<double>& weight,
                                          const std::vector<double>& lower);

/// H_m: satellite uplink energy is H_m / alpha_m.
std::vector<double> bandwidth_weights(const Scenario& s, const AllocationState& state);
/// Smallest alpha meeting the satellite deadline and rate bound.
std::vector<double> bandwidth_lower_bounds(const Scenario& s, const AllocationState& state);

FractionalResult solve_bandwidth_allocation(const Scenario& s, const AllocationState& state,
                                            const FractionalOptions& options = {});

/// Phi_m: RSU uplink energy is Phi_m / P_m under the linear rate model.
std::vector<double> power_weights(const Scenario& s, const AllocationState& state);
/// Smallest power meeting the stay-time bound, the NOMA rate bound and the ground-path deadline.
double min_power(const Scenario& s, const AllocationState& state, int m);

FractionalResult solve_power_allocation(const Scenario& s, const AllocationState& state,
                                        const FractionalOptions& options = {});

}  // namespace stin
