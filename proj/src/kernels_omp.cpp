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

#include <omp.h>

#include "stin/channels.hpp"
#include "stin/kernels.hpp"
#include "kernels_detail.hpp"

namespace stin::kernels {
namespace omp {

std::vector<double> relay_rate(const InfrastructureParams& infra, std::uint64_t seed,
                               int n_realizations) {
  const auto draws = draw_relay_channels(infra, seed, n_realizations);
  const int streams = infra.relay_streams;
  std::vector<double> per_draw(static_cast<std::size_t>(n_realizations) * streams);
#pragma omp parallel for schedule(static)
  for (int r = 0; r < n_realizations; ++r) {
    const auto relay = evaluate_relay(draws[r], infra.rsu_tx_power, infra.noise_terrestrial,
                                      infra.rsu_bs_bandwidth);
    for (int i = 0; i < streams; ++i) per_draw[static_cast<std::size_t>(r) * streams + i] = relay.rate[i];
  }
  // Reduce in draw order so the sum matches the serial loop exactly.
  std::vector<double> sum(streams, 0.0);
  for (int r = 0; r < n_realizations; ++r)
    for (int i = 0; i < streams; ++i) sum[i] += per_draw[static_cast<std::size_t>(r) * streams + i];
  for (double& x : sum) x /= n_realizations;
  return sum;
}

std::vector<double> exact_noma_rates(const Scenario& s, std::span<const int> owner,
                                     std::span<const double> powers) {
  std::vector<detail::ClusterInputs> inputs;
  inputs.reserve(s.num_clusters());
  for (int n = 0; n < s.num_clusters(); ++n) inputs.push_back(detail::cluster_inputs(s, n, owner, powers));
  std::vector<double> rates(s.num_vehicles(), 0.0);
  const int m_count = s.num_vehicles();
#pragma omp parallel for schedule(dynamic)
  for (int m = 0; m < m_count; ++m) {
    const int n = s.cluster_of(m);
    const auto& members = s.members(n);
    int k = 0;
    while (members[k] != m) ++k;
    const auto& in = inputs[n];
    rates[m] = noma_avg_rate_exact(in.state, in.held, in.powers, k, s.stay_time(m),
                                   s.quadrature_panels());
  }
  return rates;
}

std::vector<double> mean_pathloss(const Scenario& s) {
  std::vector<double> out(s.num_vehicles());
  const int m_count = s.num_vehicles();
#pragma omp parallel for schedule(static)
  for (int m = 0; m < m_count; ++m) {
    const auto& p = s.vehicle(m).params;
    out[m] = stin::mean_pathloss(Geometry{s.infra().rsu_radius, p.perp_offset, p.speed},
                                 s.infra().pathloss_exponent, s.quadrature_panels());
  }
  return out;
}

}  // namespace omp
}  // namespace stin::kernels
