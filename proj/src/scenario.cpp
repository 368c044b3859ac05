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

#include "stin/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "stin/channels.hpp"
#include "stin/kernels.hpp"
#include "stin/rng.hpp"

namespace stin {
namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw ScenarioError(message);
}

bool positive(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

int InfrastructureParams::matching_quota() const {
  const int even = (num_subchannels + num_clusters - 1) / num_clusters;
  return std::min(cluster_cap, subchannel_quota > 0 ? subchannel_quota : even);
}

void InfrastructureParams::validate() const {
  require(positive(rsu_radius), "rsu_radius must be positive");
  require(positive(bs_cpu) && positive(sat_cpu), "server CPU frequencies must be positive");
  require(positive(bs_energy_coeff) && positive(sat_energy_coeff),
          "server energy coefficients must be positive");
  require(positive(rsu_tx_power) && positive(rsu_bs_bandwidth), "relay power/bandwidth must be positive");
  require(positive(sat_distance), "sat_distance must be positive");
  require(positive(noise_sat) && positive(noise_terrestrial), "noise powers must be positive");
  require(positive(pathloss_exponent), "pathloss_exponent must be positive");
  require(positive(thz_bandwidth) && positive(thz_carrier), "THz bandwidth/carrier must be positive");
  require(std::isfinite(molecular_absorption) && molecular_absorption >= 0.0,
          "molecular_absorption must be non-negative");
  require(positive(sat_antenna_gain) && positive(vehicle_antenna_gain) && positive(thz_small_scale) &&
              positive(thz_ref_gain),
          "THz gains must be positive");
  require(positive(terrestrial_ref_gain), "terrestrial_ref_gain must be positive");
  require(positive(noma_total_bandwidth), "noma_total_bandwidth must be positive");
  require(positive(p_max), "p_max must be positive");
  require(num_subchannels >= 1, "need at least one sub-channel");
  require(num_clusters >= 1, "need at least one cluster");
  require(cluster_cap >= 1, "q_max must be at least 1");
  require(num_clusters <= num_subchannels, "more clusters than sub-channels");
  require(static_cast<long>(num_clusters) * cluster_cap >= num_subchannels,
          "clusters * q_max must cover every sub-channel");
  require(subchannel_quota >= 0, "subchannel_quota must be non-negative");
  require(static_cast<long>(num_clusters) * matching_quota() >= num_subchannels,
          "clusters * subchannel_quota must cover every sub-channel");
  require(bs_antennas >= 1 && rsu_antennas >= 1 && relay_streams >= 1, "antenna counts must be >= 1");
  require(relay_streams <= bs_antennas && relay_streams <= rsu_antennas,
          "relay_streams exceeds antenna count");
  require(positive(relay_path_gain), "relay_path_gain must be positive");
  require(relay_realizations >= 1, "relay_realizations must be >= 1");
}

void FleetTemplate::validate(const InfrastructureParams& infra) const {
  require(positive(bits_min) && bits_max >= bits_min, "bad task bit range");
  require(positive(cycles_per_bit), "cycles_per_bit must be positive");
  require(positive(deadline), "deadline must be positive");
  require(positive(speed_min) && speed_max >= speed_min, "bad speed range");
  require(positive(offset_min) && offset_max >= offset_min && offset_max < infra.rsu_radius,
          "road offset range must lie in (0, rsu_radius)");
  require(positive(cpu_freq), "vehicle cpu_freq must be positive");
  require(positive(local_energy_coeff), "vehicle energy coefficient must be positive");
  if (tx_power) require(positive(*tx_power), "vehicle tx_power must be positive");
}

Scenario::Scenario(InfrastructureParams infra, std::vector<Vehicle> vehicles,
                   std::vector<int> cluster_of, std::vector<std::vector<double>> subchannel_gain,
                   std::uint64_t seed, ScenarioOptions options)
    : infra_(infra),
      vehicles_(std::move(vehicles)),
      cluster_of_(std::move(cluster_of)),
      gain_(std::move(subchannel_gain)),
      seed_(seed),
      options_(options) {
  infra_.validate();
  const int m_count = num_vehicles();
  require(m_count >= 1, "scenario needs at least one vehicle");
  require(static_cast<int>(cluster_of_.size()) == m_count, "cluster map size mismatch");
  require(static_cast<int>(gain_.size()) == m_count, "gain table size mismatch");
  require(options_.quadrature_panels >= 2, "quadrature_panels must be >= 2");

  members_.assign(infra_.num_clusters, {});
  for (int m = 0; m < m_count; ++m) {
    const int n = cluster_of_[m];
    require(n >= 0 && n < infra_.num_clusters, "vehicle assigned to unknown cluster");
    members_[n].push_back(m);
    require(static_cast<int>(gain_[m].size()) == infra_.num_subchannels, "gain row size mismatch");
    for (double g : gain_[m]) require(std::isfinite(g) && g >= 0.0, "gains must be non-negative");

    const auto& v = vehicles_[m];
    require(positive(v.task.cycles) && positive(v.task.bits) && positive(v.task.deadline),
            "task cycles, bits and deadline must be positive");
    require(positive(v.params.speed) && positive(v.params.cpu_freq), "vehicle speed/cpu must be positive");
    require(positive(v.params.energy_coeff) && positive(v.params.tx_power),
            "vehicle energy coefficient and tx power must be positive");
    require(v.params.perp_offset > 0.0 && v.params.perp_offset < infra_.rsu_radius,
            "perp_offset must lie in (0, rsu_radius)");
  }
  for (int n = 0; n < infra_.num_clusters; ++n) {
    require(!members_[n].empty(), "cluster " + std::to_string(n) + " is empty");
    require(static_cast<int>(members_[n].size()) <= infra_.cluster_cap,
            "cluster " + std::to_string(n) + " exceeds q_max");
  }

  stay_time_.resize(m_count);
  thz_sinr_.resize(m_count);
  for (int m = 0; m < m_count; ++m) {
    const auto& v = vehicles_[m].params;
    stay_time_[m] = Geometry{infra_.rsu_radius, v.perp_offset, v.speed}.stay_time();
    thz_sinr_[m] = make_thz_link(infra_, v.tx_power).sinr;
  }
  mean_pathloss_ = kernels::serial::mean_pathloss(*this);

  if (options_.relay_rate) {
    require(positive(*options_.relay_rate), "relay_rate override must be positive");
    relay_rate_ = *options_.relay_rate;
  } else {
    const auto per_stream = kernels::serial::relay_rate(infra_, seed_, infra_.relay_realizations);
    relay_rate_ = std::accumulate(per_stream.begin(), per_stream.end(), 0.0) /
                  static_cast<double>(per_stream.size());
  }
}

double Scenario::total_bits() const {
  double total = 0.0;
  for (const auto& v : vehicles_) total += v.task.bits;
  return total;
}

Scenario generate_scenario(const InfrastructureParams& infra_in, const FleetTemplate& fleet,
                           int m_vehicles, int n_clusters, std::uint64_t seed,
                           Clustering clustering, ScenarioOptions options) {
  require(n_clusters >= 1 && m_vehicles >= n_clusters, "need m_vehicles >= n_clusters >= 1");
  InfrastructureParams infra = infra_in;
  infra.num_clusters = n_clusters;
  infra.validate();
  fleet.validate(infra);
  const int per_cluster = (m_vehicles + n_clusters - 1) / n_clusters;
  require(per_cluster <= infra.cluster_cap,
          "m_vehicles / n_clusters exceeds q_max");

  const int subchannels = infra.num_subchannels;
  std::vector<Vehicle> vehicles(m_vehicles);
  std::vector<std::vector<double>> gains(m_vehicles, std::vector<double>(subchannels));
  for (int m = 0; m < m_vehicles; ++m) {
    RngStream tasks(seed, "tasks", m);
    RngStream mobility(seed, "mobility", m);
    RngStream fading(seed, "fading", m);
    auto& v = vehicles[m];
    v.task.bits = tasks.uniform(fleet.bits_min, fleet.bits_max);
    v.task.cycles = fleet.cycles_per_bit * v.task.bits;
    v.task.deadline = fleet.deadline;
    v.params.speed = mobility.uniform(fleet.speed_min, fleet.speed_max);
    v.params.perp_offset = mobility.uniform(fleet.offset_min, fleet.offset_max);
    v.params.cpu_freq = fleet.cpu_freq;
    v.params.energy_coeff = fleet.local_energy_coeff;
    v.params.tx_power = fleet.tx_power.value_or(infra.p_max);
    for (int f = 0; f < subchannels; ++f)
      gains[m][f] = infra.terrestrial_ref_gain * std::norm(draw_rayleigh_gain(fading));
  }

  // Deal vehicles round-robin so every cluster spans strong and weak users.
  std::vector<int> order(m_vehicles);
  std::iota(order.begin(), order.end(), 0);
  if (clustering == Clustering::SortedRoundRobin) {
    std::vector<double> large_scale(m_vehicles);
    for (int m = 0; m < m_vehicles; ++m) {
      const auto& p = vehicles[m].params;
      large_scale[m] = mean_pathloss(Geometry{infra.rsu_radius, p.perp_offset, p.speed},
                                     infra.pathloss_exponent, options.quadrature_panels);
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return large_scale[a] > large_scale[b]; });
  } else {
    RngStream shuffle(seed, "clustering");
    for (int i = m_vehicles - 1; i > 0; --i)
      std::swap(order[i], order[shuffle.below(static_cast<std::uint64_t>(i) + 1)]);
  }
  std::vector<int> cluster_of(m_vehicles);
  for (int i = 0; i < m_vehicles; ++i) cluster_of[order[i]] = i % n_clusters;

  return Scenario(infra, std::move(vehicles), std::move(cluster_of), std::move(gains), seed, options);
}

Scenario generate_scenario(const ScenarioConfig& config) {
  return generate_scenario(config.infra, config.fleet, config.vehicles, config.infra.num_clusters,
                           config.seed, config.clustering, config.options);
}

}  // namespace stin
