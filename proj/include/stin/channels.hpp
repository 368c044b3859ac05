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

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "stin/rng.hpp"
#include "stin/scenario.hpp"

namespace stin {

/// Straight road crossing a circular RSU coverage area.
struct Geometry {
  double radius = 0.0;
  double offset = 0.0;  // perpendicular distance RSU-road
  double speed = 0.0;

  double chord() const;      // I = 2 sqrt(r^2 - e^2)
  double stay_time() const;  // I / V
  double distance(double t) const;
};

/// Composite Simpson rule on [a, b]; `panels` is rounded up to even.
template <typename F>
double simpson(F&& f, double a, double b, int panels) {
  if (panels < 2) panels = 2;
  if (panels % 2) ++panels;
  const double h = (b - a) / panels;
  double sum = f(a) + f(b);
  for (int i = 1; i < panels; ++i) sum += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

/// Time average of d(t)^-exponent over the stay.
double mean_pathloss(const Geometry& g, double exponent, int panels);

// ---------------------------------------------------------------- THz uplink

struct ThzLink {
  double rx_power = 0.0;  // P_s
  double sinr = 0.0;
};

double thz_received_power(const InfrastructureParams& infra, double tx_power);
ThzLink make_thz_link(const InfrastructureParams& infra, double tx_power);
/// alpha * Bs * log2(1 + SINR). Throws std::domain_error unless 0 < alpha <= 1.
double thz_rate(const ThzLink& link, double alpha, double bandwidth);

// --------------------------------------------------------------- NOMA uplink

/// One cluster as seen by the RSU.
struct NomaChannelState {
  std::vector<std::vector<double>> gain;  // [sub-channel][member] |h|^2
  std::vector<Geometry> geometry;         // per member
  double exponent = 3.7;
  double noise = 1e-11;                   // sigma^2 per sub-channel
  double subchannel_bandwidth = 1e6;      // w

  int members() const { return geometry.empty() ? 0 : static_cast<int>(geometry.size()); }
  int subchannels() const { return static_cast<int>(gain.size()); }
  /// Decoding order on sub-channel f: strongest first, ties by index.
  std::vector<int> sic_order(int f) const;
};

NomaChannelState make_noma_state(const Scenario& s, int cluster);

/// SINR of member k on sub-channel f at time t, after SIC removes every
/// member decoded before k. All received powers use member k's distance.
double noma_sinr(const NomaChannelState& state, int f, std::span<const double> powers, int k,
                 double t);

/// Sum over held sub-channels of w * log2(1 + SINR).
double noma_instant_rate(const NomaChannelState& state, std::span<const std::uint8_t> held,
                         std::span<const double> powers, int k, double t);

/// Time-averaged instantaneous rate over [0, t_stay], Simpson quadrature.
double noma_avg_rate_exact(const NomaChannelState& state, std::span<const std::uint8_t> held,
                           std::span<const double> powers, int k, double t_stay, int n_steps);

/// Linear low-SNR model: 1.44 * P * sum_f w |h_f|^2 mean(d^-rho') / n0 with
/// n0 = sigma^2 / w. Interference is ignored.
double noma_avg_rate_approx(const NomaChannelState& state, std::span<const std::uint8_t> held,
                            std::span<const double> powers, int k, double t_stay, int n_steps);

// ---------------------------------------------------------------- MIMO relay

/// Regularized channel inversion H^H (H H^H + reg I)^-1, columns normalized.
Eigen::MatrixXcd mmse_precoder(const Eigen::MatrixXcd& h, double regularizer);

struct MimoRelay {
  Eigen::MatrixXcd channel;   // streams x U (rows = intended receivers)
  Eigen::MatrixXcd precoder;  // U x streams
  std::vector<double> sinr;
  std::vector<double> rate;
};

MimoRelay evaluate_relay(const Eigen::MatrixXcd& channel, double tx_power, double noise,
                         double bandwidth);

/// One J x U channel draw with i.i.d. CN(0, gain) entries.
Eigen::MatrixXcd draw_relay_channel(const InfrastructureParams& infra, RngStream& stream);

/// Per-stream Monte Carlo mean of B_R log2(1 + SINR).
std::vector<double> mimo_relay_rate(const InfrastructureParams& infra, std::uint64_t seed,
                                    int n_realizations);

}  // namespace stin
