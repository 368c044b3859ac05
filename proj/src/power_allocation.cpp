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

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "stin/solvers.hpp"

namespace stin {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double ratio(double weight, double power) {
  if (weight == 0.0) return 0.0;
  return power > 0.0 ? weight / power : kInf;
}

}  // namespace

std::vector<double> power_weights(const Scenario& s, const AllocationState& state) {
  std::vector<double> phi(s.num_vehicles(), 0.0);
  for (int m = 0; m < s.num_vehicles(); ++m) {
    if (state.theta[m] <= 0.0) continue;
    const auto& v = s.vehicle(m);
    const double k = approx_rate_slope(s, state, m);
    phi[m] = k > 0.0 ? state.theta[m] * v.task.bits * v.params.tx_power / k : kInf;
  }
  return phi;
}

double min_power(const Scenario& s, const AllocationState& state, int m) {
  const double theta = state.theta[m];
  if (theta <= 0.0) return 0.0;
  const auto& task = s.vehicle(m).task;
  const auto& infra = s.infra();
  const double bits = theta * task.bits;
  const double t_bs = theta * task.cycles / infra.bs_cpu;
  const double t_relay = s.relay_rate() > 0.0 ? bits / s.relay_rate() : kInf;

  const double rate_window = task.deadline - t_bs;
  const double path_window = task.deadline - t_bs - t_relay;
  if (rate_window <= 0.0 || path_window <= 0.0)
    throw InfeasibleError("noma_rate", m,
                          "vehicle " + std::to_string(m) + ": BS path cannot meet the deadline");
  const double need = std::max({bits / s.stay_time(m), bits / rate_window, bits / path_window});
  const double k = approx_rate_slope(s, state, m);
  if (k <= 0.0)
    throw InfeasibleError("noma_rate", m,
                          "vehicle " + std::to_string(m) + ": BS share without a sub-channel");
  const double p = need / k;
  if (p > infra.p_max * (1.0 + 1e-12))
    throw InfeasibleError("noma_rate", m,
                          "vehicle " + std::to_string(m) + ": required power exceeds P_max");
  return std::min(p, infra.p_max);
}

FractionalResult solve_power_allocation(const Scenario& s, const AllocationState& state,
                                        const FractionalOptions& options) {
  const int count = s.num_vehicles();
  const auto phi = power_weights(s, state);
  std::vector<double> floor(count);
  for (int m = 0; m < count; ++m) floor[m] = min_power(s, state, m);

  const auto rates = compute_rates(s, state, RateModel::Approx);
  std::vector<double> rest(count);
  for (int m = 0; m < count; ++m) {
    const auto r = evaluate_vehicle(s, state, rates, m);
    rest[m] = r.energy - r.e_rsu;
  }
  const double root_bits = std::sqrt(s.total_bits());
  auto denominator = [&](const std::vector<double>& p) {
    double d = 0.0;
    for (int m = 0; m < count; ++m) d += ratio(phi[m], p[m]) + rest[m];
    return d;
  };
  auto surrogate = [&](double x, const std::vector<double>& p) {
    return 2.0 * x * root_bits - x * x * denominator(p);
  };

  FractionalResult out;
  out.values = state.power;
  out.auxiliary = root_bits / denominator(out.values);
  out.surrogate.push_back(surrogate(out.auxiliary, out.values));
  for (int it = 0; it < options.max_iterations; ++it) {
    // -x^2 Phi / P is non-decreasing in P. Vehicles with no BS share are
    // indifferent; they also get P_max so the next task split can use the
    // ground path.
    for (int m = 0; m < count; ++m) out.values[m] = std::max(floor[m], s.infra().p_max);
    const double before = out.surrogate.back();
    out.surrogate.push_back(surrogate(out.auxiliary, out.values));
    out.auxiliary = root_bits / denominator(out.values);
    out.surrogate.push_back(surrogate(out.auxiliary, out.values));
    ++out.iterations;
    const double after = out.surrogate.back();
    if (std::abs(after - before) <= options.tolerance * std::abs(after)) break;
  }
  return out;
}

}  // namespace stin
