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

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "stin/channels.hpp"
#include "stin/kernels.hpp"
#include "stin/units.hpp"
#include "verify/oracles.hpp"

using namespace stin;

TEST_CASE("Simpson is exact for cubics") {
  auto f = [](double x) { return 2 * x * x * x - x + 1; };
  CHECK(simpson(f, 0.0, 2.0, 2) == doctest::Approx(8.0));
  CHECK(simpson([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, 64) ==
        doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("mean path loss matches the closed form for exponent 2") {
  const Geometry g{250.0, 120.0, 18.0};
  const double chord = g.chord();
  const double closed = 2.0 / (chord * g.offset) * std::atan(chord / (2.0 * g.offset));
  CHECK(mean_pathloss(g, 2.0, 512) == doctest::Approx(closed).epsilon(1e-8));
}

TEST_CASE("THz link") {
  ThzLink link{0.0, 3.0};
  CHECK(thz_rate(link, 0.25, 100e9) == doctest::Approx(0.25 * 100e9 * 2.0));
  CHECK_THROWS(thz_rate(link, 0.0, 1e9));
  CHECK_THROWS(thz_rate(link, 1.5, 1e9));
  InfrastructureParams infra;
  const auto a = make_thz_link(infra, 0.1);
  const auto b = make_thz_link(infra, 0.2);
  CHECK(b.sinr == doctest::Approx(2.0 * a.sinr));
}

TEST_CASE("NOMA SIC on a two-member sub-channel") {
  NomaChannelState st;
  st.gain = {{2.0, 1.0}};
  st.geometry = {Geometry{250.0, 100.0, 20.0}, Geometry{250.0, 100.0, 20.0}};
  st.exponent = 2.0;
  st.noise = 1e-6;
  const std::vector<double> p{1.0, 1.0};
  const double t = 0.5 * st.geometry[0].stay_time();
  const double loss = 1.0 / (100.0 * 100.0);
  // Stronger member is decoded first and sees the weaker one as interference.
  CHECK(noma_sinr(st, 0, p, 0, t) == doctest::Approx(2.0 * loss / (loss + 1e-6)));
  CHECK(noma_sinr(st, 0, p, 1, t) == doctest::Approx(loss / 1e-6));
  const std::vector<std::uint8_t> none{0};
  CHECK(noma_instant_rate(st, none, p, 0, t) == 0.0);
}

TEST_CASE("linear rate model tracks the exact rate at low SNR") {
  RngStream rng(5, "test-low-snr");
  for (int i = 0; i < 30; ++i) {
    const auto x = verify::random_low_snr_instance(rng, 1e-3);
    for (int k = 0; k < x.state.members(); ++k) {
      const double exact = noma_avg_rate_exact(x.state, x.held, x.powers, k, x.stay[k], 200);
      const double approx = noma_avg_rate_approx(x.state, x.held, x.powers, k, x.stay[k], 200);
      // log2(1+x) <= x log2(e) and interference only lowers the exact rate;
      // the model's slope is log2(e) rounded down to 1.44.
      CHECK(approx * std::numbers::log2e / kLinearRateSlope >= exact);
      CHECK(std::abs(approx - exact) / exact < 2e-3);
    }
  }
}

TEST_CASE("MIMO relay: scalar and orthogonal channels") {
  Eigen::MatrixXcd h(1, 1);
  h(0, 0) = {0.6, 0.8};
  const auto one = evaluate_relay(h, 2.0, 0.5, 1e6);
  CHECK(one.sinr[0] == doctest::Approx(2.0 * 1.0 / 0.5));
  CHECK(one.rate[0] == doctest::Approx(1e6 * std::log2(5.0)));

  Eigen::MatrixXcd diag = Eigen::MatrixXcd::Identity(2, 2) * 3.0;
  const auto two = evaluate_relay(diag, 1.0, 0.1, 1e6);
  for (double s : two.sinr) CHECK(s == doctest::Approx(9.0 / 0.1));
}

TEST_CASE("MIMO relay Monte Carlo is seeded") {
  InfrastructureParams infra;
  const auto a = mimo_relay_rate(infra, 1, 200);
  const auto b = mimo_relay_rate(infra, 1, 200);
  const auto c = mimo_relay_rate(infra, 2, 200);
  CHECK(a == b);
  CHECK(a != c);
  // Two seeds estimate the same mean.
  CHECK(a[0] == doctest::Approx(c[0]).epsilon(0.05));
}

TEST_CASE("OpenMP kernels match the serial reference bit for bit") {
  InfrastructureParams infra;
  FleetTemplate fleet;
  const auto s = generate_scenario(infra, fleet, 20, 4, 17);
  CHECK(kernels::serial::relay_rate(infra, 3, 64) == kernels::omp::relay_rate(infra, 3, 64));
  CHECK(kernels::serial::mean_pathloss(s) == kernels::omp::mean_pathloss(s));
  std::vector<int> owner{0, 1, 2, 3, 0, 1};
  std::vector<double> power(20, 0.1);
  for (int m = 0; m < 20; ++m) power[m] = 0.05 + 0.005 * m;
  CHECK(kernels::serial::exact_noma_rates(s, owner, power) ==
        kernels::omp::exact_noma_rates(s, owner, power));
}
