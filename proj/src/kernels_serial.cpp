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

#include <numeric>

#include "stin/channels.hpp"
#include "stin/kernels.hpp"
#include "kernels_detail.hpp"

namespace stin::kernels {

std::vector<Eigen::MatrixXcd> draw_relay_channels(const InfrastructureParams& infra,
                                                  std::uint64_t seed, int n_realizations) {
  RngStream stream(seed, "relay");
  std::vector<Eigen::MatrixXcd> draws;
  draws.reserve(n_realizations);
  for (int r = 0; r < n_realizations; ++r) {
    // Rows beyond relay_streams are receive antennas with no dedicated stream.
    draws.push_back(draw_relay_channel(infra, stream).topRows(infra.relay_streams));
  }
  return draws;
}

namespace detail {

ClusterInputs cluster_inputs(const Scenario& s, int n, std::span<const int> owner,
                             std::span<const double> powers) {
  ClusterInputs in{make_noma_state(s, n), {}, {}};
  in.held.resize(s.num_subchannels());
  for (int f = 0; f < s.num_subchannels(); ++f) in.held[f] = owner[f] == n ? 1 : 0;
  for (int m : s.members(n)) in.powers.push_back(powers[m]);
  return in;
}

}  // namespace detail

namespace serial {

std::vector<double> relay_rate(const InfrastructureParams& infra, std::uint64_t seed,
                               int n_realizations) {
  const auto draws = draw_relay_channels(infra, seed, n_realizations);
  std::vector<double> sum(infra.relay_streams, 0.0);
  for (const auto& h : draws) {
    const auto relay = evaluate_relay(h, infra.rsu_tx_power, infra.noise_terrestrial,
                                      infra.rsu_bs_bandwidth);
    for (int i = 0; i < infra.relay_streams; ++i) sum[i] += relay.rate[i];
  }
  for (double& x : sum) x /= n_realizations;
  return sum;
}

std::vector<double> exact_noma_rates(const Scenario& s, std::span<const int> owner,
                                     std::span<const double> powers) {
  std::vector<double> rates(s.num_vehicles(), 0.0);
  for (int n = 0; n < s.num_clusters(); ++n) {
    const auto in = detail::cluster_inputs(s, n, owner, powers);
    const auto& members = s.members(n);
    for (std::size_t k = 0; k < members.size(); ++k) {
      const int m = members[k];
      rates[m] = noma_avg_rate_exact(in.state, in.held, in.powers, static_cast<int>(k),
                                     s.stay_time(m), s.quadrature_panels());
    }
  }
  return rates;
}

std::vector<double> mean_pathloss(const Scenario& s) {
  std::vector<double> out(s.num_vehicles());
  for (int m = 0; m < s.num_vehicles(); ++m) {
    const auto& p = s.vehicle(m).params;
    out[m] = stin::mean_pathloss(Geometry{s.infra().rsu_radius, p.perp_offset, p.speed},
                                 s.infra().pathloss_exponent, s.quadrature_panels());
  }
  return out;
}

}  // namespace serial
}  // namespace stin::kernels
