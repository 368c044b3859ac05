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
#include <string>
#include <vector>

#include "stin/scenario.hpp"

namespace stin {

/// Decision variables at one iterate.
///
/// The sub-channel assignment eta is stored as an owner map: owner[f] is the
/// cluster holding sub-channel f (eta(f, n) == 1 iff owner[f] == n), or -1
/// if unassigned. A sub-channel may be assigned but idle (carrying == 0);
/// it then contributes no rate. This is how the one-to-one baseline parks
/// its surplus sub-channels.
struct AllocationState {
  std::vector<double> theta;  // BS share
  std::vector<double> zeta;   // satellite share
  std::vector<double> alpha;  // THz bandwidth share
  std::vector<double> power;  // NOMA transmit power, W
  std::vector<int> owner;
  std::vector<std::uint8_t> carrying;

  int eta(int f, int n) const { return owner[f] == n ? 1 : 0; }
  int load(int n) const;
  /// held[f] for cluster n: assigned to n and carrying.
  std::vector<std::uint8_t> held_by(int n) const;
};

/// Uniform alpha, half of P_max, zero offload, no sub-channels assigned.
AllocationState blank_state(const Scenario& s);

enum class RateModel { Approx, Exact };

struct LinkRates {
  std::vector<double> noma;       // mean vehicle->RSU rate
  std::vector<double> satellite;  // R_s
  double relay = 0.0;             // RSU->BS, per stream
};

LinkRates compute_rates(const Scenario& s, const AllocationState& state,
                        RateModel model = RateModel::Approx);

/// Slope k_m of the linear rate model, R = k_m * P_m, for the sub-channels
/// held by vehicle m's cluster.
double approx_rate_slope(const Scenario& s, const AllocationState& state, int m);

struct VehicleReport {
  int vehicle = 0;
  // delays, s
  double t_local = 0, t_rsu = 0, t_relay = 0, t_bs = 0, t_uplink_sat = 0, t_sat = 0, t_ground = 0;
  // energies, J
  double e_local = 0, e_rsu = 0, e_relay = 0, e_bs = 0, e_uplink_sat = 0, e_sat = 0;
  double energy = 0;
  double noma_rate = 0, sat_rate = 0;

  double satellite_path_delay() const { return t_uplink_sat + t_sat; }
  double completion_time() const;
};

struct Violation {
  std::string constraint;  // e.g. "stay_time"
  int index = -1;          // vehicle, sub-channel or cluster; -1 if global
  double margin = 0;       // relative slack; negative when violated
};

struct Feasibility {
  bool feasible = true;
  std::vector<Violation> violations;
  bool violates(const std::string& constraint) const;
};

struct EfficiencyReport {
  std::vector<VehicleReport> vehicles;
  double total_bits = 0;
  double total_energy = 0;
  double efficiency = 0;  // bits per joule
  Feasibility feasibility;

  double mean_completion_time() const;
};

/// Relative slack allowed before a constraint counts as violated.
inline constexpr double kFeasibilityTolerance = 1e-9;

VehicleReport evaluate_vehicle(const Scenario& s, const AllocationState& state,
                               const LinkRates& rates, int m);

EfficiencyReport evaluate(const Scenario& s, const AllocationState& state,
                          RateModel model = RateModel::Approx);

/// Objective only; skips the feasibility scan.
double efficiency(const Scenario& s, const AllocationState& state,
                  RateModel model = RateModel::Approx);

Feasibility check_feasibility(const Scenario& s, const AllocationState& state,
                              RateModel model = RateModel::Approx);

}  // namespace stin
