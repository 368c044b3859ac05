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

#include "stin/channels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "stin/kernels.hpp"
#include "stin/units.hpp"

namespace stin {

double Geometry::chord() const { return 2.0 * std::sqrt(radius * radius - offset * offset); }

double Geometry::stay_time() const { return chord() / speed; }

double Geometry::distance(double t) const {
  const double along = 0.5 * chord() - speed * t;
  return std::sqrt(offset * offset + along * along);
}

double mean_pathloss(const Geometry& g, double exponent, int panels) {
  const double t_stay = g.stay_time();
  const double integral =
      simpson([&](double t) { return std::pow(g.distance(t), -exponent); }, 0.0, t_stay, panels);
  return integral / t_stay;
}

double thz_received_power(const InfrastructureParams& infra, double tx_power) {
  const double wavelength_term = kSpeedOfLight / (4.0 * std::numbers::pi * infra.thz_carrier);
  const double d = infra.sat_distance;
  return infra.thz_ref_gain * tx_power * wavelength_term * wavelength_term *
         infra.thz_small_scale * infra.sat_antenna_gain * infra.vehicle_antenna_gain *
         std::exp(-infra.molecular_absorption * d) / (d * d);
}

ThzLink make_thz_link(const InfrastructureParams& infra, double tx_power) {
  ThzLink link;
  link.rx_power = thz_received_power(infra, tx_power);
  link.sinr = link.rx_power / infra.noise_sat;
  return link;
}

double thz_rate(const ThzLink& link, double alpha, double bandwidth) {
  if (!(alpha > 0.0) || alpha > 1.0) throw std::domain_error("thz_rate: alpha must lie in (0, 1]");
  return alpha * bandwidth * std::log2(1.0 + link.sinr);
}

std::vector<int> NomaChannelState::sic_order(int f) const {
  std::vector<int> order(members());
  std::iota(order.begin(), order.end(), 0);
  const auto& g = gain.at(f);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return g[a] > g[b]; });
  return order;
}

NomaChannelState make_noma_state(const Scenario& s, int cluster) {
  const auto& infra = s.infra();
  const auto& members = s.members(cluster);
  NomaChannelState state;
  state.exponent = infra.pathloss_exponent;
  state.noise = infra.noise_terrestrial;
  state.subchannel_bandwidth = infra.subchannel_bandwidth();
  state.gain.assign(s.num_subchannels(), std::vector<double>(members.size()));
  for (std::size_t k = 0; k < members.size(); ++k) {
    const auto& v = s.vehicle(members[k]).params;
    state.geometry.push_back({infra.rsu_radius, v.perp_offset, v.speed});
    for (int f = 0; f < s.num_subchannels(); ++f) state.gain[f][k] = s.gain(members[k], f);
  }
  return state;
}

double noma_sinr(const NomaChannelState& state, int f, std::span<const double> powers, int k,
                 double t) {
  const double loss = std::pow(state.geometry.at(k).distance(t), -state.exponent);
  const auto& g = state.gain.at(f);
  const auto order = state.sic_order(f);
  const auto pos = std::find(order.begin(), order.end(), k) - order.begin();
  double interference = 0.0;
  for (auto j = pos + 1; j < static_cast<std::ptrdiff_t>(order.size()); ++j) {
    const int other = order[j];
    interference += powers[other] * g[other] * loss;
  }
  return powers[k] * g[k] * loss / (interference + state.noise);
}

double noma_instant_rate(const NomaChannelState& state, std::span<const std::uint8_t> held,
                         std::span<const double> powers, int k, double t) {
  double rate = 0.0;
  for (int f = 0; f < state.subchannels(); ++f) {
    if (!held[f]) continue;
    rate += state.subchannel_bandwidth * std::log2(1.0 + noma_sinr(state, f, powers, k, t));
  }
  return rate;
}

double noma_avg_rate_exact(const NomaChannelState& state, std::span<const std::uint8_t> held,
                           std::span<const double> powers, int k, double t_stay, int n_steps) {
  const double integral = simpson(
      [&](double t) { return noma_instant_rate(state, held, powers, k, t); }, 0.0, t_stay, n_steps);
  return integral / t_stay;
}

double noma_avg_rate_approx(const NomaChannelState& state, std::span<const std::uint8_t> held,
                            std::span<const double> powers, int k, double t_stay, int n_steps) {
  const double w = state.subchannel_bandwidth;
  const double n0 = state.noise / w;
  double held_gain = 0.0;
  for (int f = 0; f < state.subchannels(); ++f)
    if (held[f]) held_gain += state.gain[f][k];
  if (held_gain == 0.0 || powers[k] == 0.0) return 0.0;
  const auto& geo = state.geometry.at(k);
  const double integral = simpson(
      [&](double t) { return std::pow(geo.distance(t), -state.exponent); }, 0.0, t_stay, n_steps);
  return kLinearRateSlope * powers[k] * held_gain * integral / n0 / t_stay;
}

Eigen::MatrixXcd mmse_precoder(const Eigen::MatrixXcd& h, double regularizer) {
  const Eigen::Index rows = h.rows();
  Eigen::MatrixXcd gram = h * h.adjoint();
  gram.diagonal().array() += regularizer;
  Eigen::MatrixXcd b = h.adjoint() * gram.ldlt().solve(Eigen::MatrixXcd::Identity(rows, rows));
  for (Eigen::Index c = 0; c < b.cols(); ++c) {
    const double norm = b.col(c).norm();
    if (norm > 0.0) b.col(c) /= norm;
  }
  return b;
}

MimoRelay evaluate_relay(const Eigen::MatrixXcd& channel, double tx_power, double noise,
                         double bandwidth) {
  MimoRelay relay;
  relay.channel = channel;
  const auto streams = channel.rows();
  relay.precoder = mmse_precoder(channel, static_cast<double>(streams) * noise / tx_power);
  const Eigen::MatrixXcd effective = channel * relay.precoder;  // streams x streams
  relay.sinr.resize(streams);
  relay.rate.resize(streams);
  for (Eigen::Index m = 0; m < streams; ++m) {
    double interference = 0.0;
    for (Eigen::Index i = 0; i < streams; ++i)
      if (i != m) interference += tx_power * std::norm(effective(m, i));
    relay.sinr[m] = tx_power * std::norm(effective(m, m)) / (interference + noise);
    relay.rate[m] = bandwidth * std::log2(1.0 + relay.sinr[m]);
  }
  return relay;
}

Eigen::MatrixXcd draw_relay_channel(const InfrastructureParams& infra, RngStream& stream) {
  const double scale = std::sqrt(infra.relay_path_gain);
  Eigen::MatrixXcd h(infra.bs_antennas, infra.rsu_antennas);
  for (Eigen::Index r = 0; r < h.rows(); ++r)
    for (Eigen::Index c = 0; c < h.cols(); ++c) h(r, c) = scale * draw_rayleigh_gain(stream);
  return h;
}

std::vector<double> mimo_relay_rate(const InfrastructureParams& infra, std::uint64_t seed,
                                    int n_realizations) {
  return kernels::serial::relay_rate(infra, seed, n_realizations);
}

}  // namespace stin
