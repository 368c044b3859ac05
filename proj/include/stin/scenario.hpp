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
#include <stdexcept>
#include <string>
#include <vector>

namespace stin {

/// Raised when scenario parameters are inconsistent (bad ranges, cluster
/// capacity exceeded, unknown configuration keys).
class ScenarioError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct TaskSpec {
  double cycles = 0.0;    // L, CPU cycles
  double bits = 0.0;      // C, bits
  double deadline = 0.0;  // T_max, seconds
};

struct VehicleParams {
  double speed = 0.0;          // m/s
  double cpu_freq = 0.0;       // cycles/s
  double energy_coeff = 0.0;   // J s^2 / cycle^3 scale; E = L * coeff * f^2
  double tx_power = 0.0;       // W, P^H: power charged for every uplink second
  double perp_offset = 0.0;    // m, distance from RSU to the road
};

/// Static system constants. All SI.
struct InfrastructureParams {
  double rsu_radius = 250.0;
  double bs_cpu = 10e9;
  double sat_cpu = 5e9;
  double bs_energy_coeff = 1e-29;
  double sat_energy_coeff = 1e-28;
  double rsu_tx_power = 1.0;       // P_R
  double rsu_bs_bandwidth = 20e6;  // B_R
  double sat_distance = 500e3;
  double noise_sat = 1e-11;          // H^s, -80 dBm
  double noise_terrestrial = 1e-11;  // sigma^2 per sub-channel, -80 dBm
  double pathloss_exponent = 3.7;
  double thz_bandwidth = 100e9;
  double thz_carrier = 300e9;
  double molecular_absorption = 5e-6;  // 1/m
  double sat_antenna_gain = 1000.0;    // 30 dBi
  double vehicle_antenna_gain = 10.0;  // 10 dBi
  double thz_small_scale = 1.0;
  double thz_ref_gain = 5e3;
  double terrestrial_ref_gain = 1e-3;  // large-scale gain at 1 m, folded into |h|^2
  double noma_total_bandwidth = 6e6;   // split evenly over the sub-channels
  double p_max = 0.19952623149688797;  // 23 dBm
  int num_subchannels = 6;
  int num_clusters = 4;
  int cluster_cap = 5;  // q_max
  /// Sub-channels one cluster may take in a matching round; 0 means
  /// ceil(F / N). Never above q_max.
  int subchannel_quota = 0;
  int bs_antennas = 4;
  int rsu_antennas = 4;
  int relay_streams = 2;
  double relay_path_gain = 1e-9;
  int relay_realizations = 100;

  double subchannel_bandwidth() const { return noma_total_bandwidth / num_subchannels; }
  int matching_quota() const;
  /// Noise PSD consistent with a per-sub-channel noise power.
  double noise_psd() const { return noise_terrestrial / subchannel_bandwidth(); }

  void validate() const;
};

/// Distributions used to draw vehicles and tasks.
struct FleetTemplate {
  double bits_min = 3000e3;
  double bits_max = 4200e3;
  double cycles_per_bit = 300.0;
  double deadline = 1.5;
  double speed_min = 15.0;
  double speed_max = 25.0;
  double offset_min = 50.0;
  double offset_max = 200.0;
  double cpu_freq = 0.5e9;
  double local_energy_coeff = 1e-27;
  std::optional<double> tx_power;  // defaults to p_max

  void validate(const InfrastructureParams& infra) const;
};

enum class Clustering { SortedRoundRobin, Random };

struct Vehicle {
  VehicleParams params;
  TaskSpec task;
};

struct ScenarioOptions {
  int quadrature_panels = 256;
  /// Replaces the Monte Carlo relay estimate; used by tests.
  std::optional<double> relay_rate;
};

/// Immutable, fully validated problem instance.
///
/// Holds vehicles, the cluster partition, per-(vehicle, sub-channel) fading
/// power |h|^2 (large-scale reference gain included), and link quantities
/// that depend only on the instance: stay time, mean path loss over the
/// stay, THz SINR, and the RSU-to-BS relay rate.
class Scenario {
 public:
  Scenario(InfrastructureParams infra, std::vector<Vehicle> vehicles, std::vector<int> cluster_of,
           std::vector<std::vector<double>> subchannel_gain, std::uint64_t seed,
           ScenarioOptions options = {});

  const InfrastructureParams& infra() const { return infra_; }
  const std::vector<Vehicle>& vehicles() const { return vehicles_; }
  const Vehicle& vehicle(int m) const { return vehicles_.at(m); }
  int num_vehicles() const { return static_cast<int>(vehicles_.size()); }
  int num_clusters() const { return infra_.num_clusters; }
  int num_subchannels() const { return infra_.num_subchannels; }
  std::uint64_t seed() const { return seed_; }

  int cluster_of(int m) const { return cluster_of_.at(m); }
  const std::vector<int>& members(int n) const { return members_.at(n); }
  /// |h|^2 of vehicle m on sub-channel f.
  double gain(int m, int f) const { return gain_[m][f]; }
  const std::vector<double>& gains(int m) const { return gain_[m]; }

  double stay_time(int m) const { return stay_time_[m]; }
  /// (1/t_stay) * integral of d(t)^-rho' over the stay.
  double mean_pathloss(int m) const { return mean_pathloss_[m]; }
  double thz_sinr(int m) const { return thz_sinr_[m]; }
  double relay_rate() const { return relay_rate_; }
  int quadrature_panels() const { return options_.quadrature_panels; }

  double total_bits() const;

 private:
  InfrastructureParams infra_;
  std::vector<Vehicle> vehicles_;
  std::vector<int> cluster_of_;
  std::vector<std::vector<int>> members_;
  std::vector<std::vector<double>> gain_;
  std::uint64_t seed_;
  ScenarioOptions options_;
  std::vector<double> stay_time_;
  std::vector<double> mean_pathloss_;
  std::vector<double> thz_sinr_;
  double relay_rate_ = 0.0;
};

struct ScenarioConfig {
  InfrastructureParams infra;
  FleetTemplate fleet;
  int vehicles = 20;
  std::uint64_t seed = 1;
  Clustering clustering = Clustering::SortedRoundRobin;
  ScenarioOptions options;
};

/// Draws a scenario. Per-vehicle draws use streams keyed by vehicle index,
/// so vehicle m is identical across instances that differ only in size.
Scenario generate_scenario(const InfrastructureParams& infra, const FleetTemplate& fleet,
                           int m_vehicles, int n_clusters, std::uint64_t seed,
                           Clustering clustering = Clustering::SortedRoundRobin,
                           ScenarioOptions options = {});

Scenario generate_scenario(const ScenarioConfig& config);

}  // namespace stin
