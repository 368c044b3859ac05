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
#include <numeric>

#include "stin/cost_model.hpp"
#include "stin/orchestrator.hpp"
#include "stin/solvers.hpp"
#include "verify/oracles.hpp"

using namespace stin;

namespace {

Scenario default_scenario(std::uint64_t seed = 1) {
  return generate_scenario(InfrastructureParams{}, FleetTemplate{}, 20, 4, seed);
}

}  // namespace

TEST_CASE("sqrt-weighted simplex") {
  const auto a = sqrt_weighted_simplex({1.0, 4.0, 9.0}, {0.0, 0.0, 0.0});
  CHECK(a[0] == doctest::Approx(1.0 / 6));
  CHECK(a[1] == doctest::Approx(2.0 / 6));
  CHECK(a[2] == doctest::Approx(3.0 / 6));

  // A binding lower bound takes its floor, the rest split what is left.
  const auto b = sqrt_weighted_simplex({1.0, 4.0, 9.0}, {0.5, 0.0, 0.0});
  CHECK(b[0] == doctest::Approx(0.5));
  CHECK(b[1] == doctest::Approx(0.2));
  CHECK(b[2] == doctest::Approx(0.3));

  const auto c = sqrt_weighted_simplex({0.0, 0.0}, {0.0, 0.0});
  CHECK(c[0] == doctest::Approx(0.5));
  CHECK_THROWS_AS(sqrt_weighted_simplex({1.0, 1.0}, {0.6, 0.6}), InfeasibleError);
}

TEST_CASE("sqrt-weighted simplex beats random feasible points") {
  RngStream rng(3, "test-simplex");
  for (int i = 0; i < 50; ++i) {
    std::vector<double> h(4), lo(4);
    for (int m = 0; m < 4; ++m) {
      h[m] = rng.uniform(0.0, 5.0);
      lo[m] = rng.uniform(0.0, 0.2);
    }
    const auto a = sqrt_weighted_simplex(h, lo);
    CHECK(std::accumulate(a.begin(), a.end(), 0.0) == doctest::Approx(1.0));
    auto cost = [&](const std::vector<double>& x) {
      double c = 0.0;
      for (int m = 0; m < 4; ++m) c += h[m] / x[m];
      return c;
    };
    for (int j = 0; j < 50; ++j) {
      std::vector<double> x(lo);
      double slack = 1.0 - std::accumulate(lo.begin(), lo.end(), 0.0);
      std::vector<double> w(4);
      double ws = 0.0;
      for (auto& v : w) ws += (v = rng.uniform());
      for (int m = 0; m < 4; ++m) x[m] += slack * w[m] / ws;
      CHECK(cost(a) <= cost(x) * (1 + 1e-12));
    }
  }
}

TEST_CASE("task split vertex matches the grid oracle") {
  RngStream rng(13, "test-p1");
  for (int i = 0; i < 200; ++i) {
    const auto p = verify::random_task_problem(rng);
    const auto v = solve_task_vertex(p);
    const auto g = verify::grid_task(p, 1e-2);
    REQUIRE(g.feasible);
    CHECK(verify::task_feasible(p.region, v, 1e-9));
    CHECK(verify::task_energy(p.cost, v) <= g.energy + 1e-12);
  }
}

TEST_CASE("task split rules") {
  TaskProblem p;
  p.cost = {1.0, -0.5, -0.2};
  p.region = {0.6, 0.7, 0.3};
  const auto e = solve_task_vertex(p, TaskRule::MinEnergy);
  CHECK(e.theta == doctest::Approx(0.6));
  CHECK(e.zeta == doctest::Approx(0.4));
  const auto lo = solve_task_vertex(p, TaskRule::MinOffload);
  CHECK(lo.theta + lo.zeta == doctest::Approx(0.3));
  p.region = {0.1, 0.1, 0.5};
  CHECK_THROWS_AS(solve_task_vertex(p), InfeasibleError);
}

TEST_CASE("local energy") {
  const auto s = default_scenario();
  AllocationState st = blank_state(s);
  const auto r = evaluate(s, st);
  const auto& v = s.vehicle(0);
  CHECK(r.vehicles[0].e_local ==
        doctest::Approx(v.task.cycles * v.params.energy_coeff * v.params.cpu_freq * v.params.cpu_freq));
  CHECK(r.vehicles[0].t_local == doctest::Approx(v.task.cycles / v.params.cpu_freq));
  CHECK(r.vehicles[0].energy == doctest::Approx(r.vehicles[0].e_local));
}

TEST_CASE("cost model and channel model agree on the linear rate") {
  const auto s = default_scenario(4);
  auto st = initial_state(s);
  const auto rates = compute_rates(s, st);
  for (int n = 0; n < s.num_clusters(); ++n) {
    const auto ch = make_noma_state(s, n);
    const auto held = st.held_by(n);
    std::vector<double> powers;
    for (int m : s.members(n)) powers.push_back(st.power[m]);
    for (std::size_t k = 0; k < s.members(n).size(); ++k) {
      const int m = s.members(n)[k];
      const double direct =
          noma_avg_rate_approx(ch, held, powers, int(k), s.stay_time(m), s.quadrature_panels());
      CHECK(rates.noma[m] == doctest::Approx(direct).epsilon(1e-9));
    }
  }
}

TEST_CASE("power step gives every vehicle P_max") {
  const auto s = default_scenario();
  auto st = initial_state(s);
  const auto split = solve_task_allocation(s, st);
  st.theta = split.theta;
  st.zeta = split.zeta;
  const auto r = solve_power_allocation(s, st);
  for (double p : r.values) CHECK(p == doctest::Approx(s.infra().p_max));
  AllocationState half = st;
  half.power.assign(s.num_vehicles(), 0.5 * s.infra().p_max);
  st.power = r.values;
  if (check_feasibility(s, half).feasible) CHECK(efficiency(s, st) >= efficiency(s, half));
}

TEST_CASE("bandwidth step: surrogate rises and bounds hold") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto s = default_scenario(seed);
    auto st = initial_state(s);
    const auto split = solve_task_allocation(s, st);
    st.theta = split.theta;
    st.zeta = split.zeta;
    const auto r = solve_bandwidth_allocation(s, st);
    for (std::size_t i = 1; i < r.surrogate.size(); ++i)
      CHECK(r.surrogate[i] >= r.surrogate[i - 1] - 1e-9 * std::abs(r.surrogate[i - 1]));
    const auto lo = bandwidth_lower_bounds(s, st);
    double sum = 0.0;
    for (int m = 0; m < s.num_vehicles(); ++m) {
      CHECK(r.values[m] >= lo[m] * (1 - 1e-12));
      sum += r.values[m];
    }
    CHECK(sum == doctest::Approx(1.0));
    AllocationState c = st;
    c.alpha = r.values;
    CHECK(efficiency(s, c) >= efficiency(s, st) * (1 - 1e-12));
  }
}

TEST_CASE("feasibility scan names violated constraints") {
  const auto s = default_scenario();
  auto st = initial_state(s);
  st.theta[0] = 0.7;
  st.zeta[0] = 0.6;
  st.power[1] = 2.0 * s.infra().p_max;
  st.alpha[2] += 0.1;
  const auto f = check_feasibility(s, st);
  CHECK_FALSE(f.feasible);
  CHECK(f.violates("share_sum"));
  CHECK(f.violates("power_box"));
  CHECK(f.violates("bandwidth_sum"));
  st = initial_state(s);
  st.owner[0] = -1;
  CHECK(check_feasibility(s, st).violates("subchannel_owner"));
}
