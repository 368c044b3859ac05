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
#include <numeric>

#include "stin/solvers.hpp"

namespace stin {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sum_of(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

double ratio(double weight, double share) {
  if (weight == 0.0) return 0.0;
  return share > 0.0 ? weight / share : kInf;
}

}  // namespace

std::vector<double> sqrt_weighted_simplex(const std::vector<double>& weight,
                                          const std::vector<double>& lower) {
  const std::size_t n = weight.size();
  std::vector<double> lo(n, 0.0);
  for (std::size_t m = 0; m < n && m < lower.size(); ++m) lo[m] = std::max(0.0, lower[m]);
  const double floor_sum = sum_of(lo);
  if (!(floor_sum <= 1.0 + 1e-12))
    throw InfeasibleError("bandwidth_sum", -1, "bandwidth lower bounds exceed the THz band");

  const bool all_zero = std::all_of(weight.begin(), weight.end(), [](double w) { return w == 0.0; });
  std::vector<double> slope(n);
  for (std::size_t m = 0; m < n; ++m) slope[m] = all_zero ? 1.0 : std::sqrt(std::max(0.0, weight[m]));

  // alpha_m = max(lo_m, lambda * slope_m); find lambda with sum == 1 by
  // walking the breakpoints lo_m / slope_m in increasing order.
  std::vector<std::size_t> idx;
  for (std::size_t m = 0; m < n; ++m)
    if (slope[m] > 0.0) idx.push_back(m);
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return lo[a] / slope[a] < lo[b] / slope[b]; });

  std::vector<double> alpha(lo);
  if (idx.empty() || floor_sum >= 1.0) return alpha;

  double free_slope = 0.0;
  double clamped = floor_sum;
  double lambda = 0.0;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    free_slope += slope[idx[k]];
    clamped -= lo[idx[k]];
    lambda = (1.0 - clamped) / free_slope;
    const bool last = k + 1 == idx.size();
    if (last || lambda <= lo[idx[k + 1]] / slope[idx[k + 1]]) break;
  }
  for (std::size_t m : idx) alpha[m] = std::max(lo[m], lambda * slope[m]);

  // Push rounding residue onto the largest share.
  const double residue = 1.0 - sum_of(alpha);
  auto largest = std::max_element(alpha.begin(), alpha.end());
  *largest += residue;
  return alpha;
}

std::vector<double> bandwidth_weights(const Scenario& s, const AllocationState& state) {
  std::vector<double> h(s.num_vehicles(), 0.0);
  const double band = s.infra().thz_bandwidth;
  for (int m = 0; m < s.num_vehicles(); ++m) {
    const auto& v = s.vehicle(m);
    h[m] = state.zeta[m] * v.task.bits * v.params.tx_power / (band * std::log2(1.0 + s.thz_sinr(m)));
  }
  return h;
}

std::vector<double> bandwidth_lower_bounds(const Scenario& s, const AllocationState& state) {
  std::vector<double> lb(s.num_vehicles(), 0.0);
  const double band = s.infra().thz_bandwidth;
  for (int m = 0; m < s.num_vehicles(); ++m) {
    const double zeta = state.zeta[m];
    if (zeta <= 0.0) continue;
    const auto& task = s.vehicle(m).task;
    const double window = task.deadline - zeta * task.cycles / s.infra().sat_cpu;
    lb[m] = window > 0.0 ? zeta * task.bits / (band * std::log2(1.0 + s.thz_sinr(m)) * window) : kInf;
  }
  return lb;
}

FractionalResult solve_bandwidth_allocation(const Scenario& s, const AllocationState& state,
                                            const FractionalOptions& options) {
  const int count = s.num_vehicles();
  const auto weight = bandwidth_weights(s, state);
  const auto lower = bandwidth_lower_bounds(s, state);

  // Energy terms that do not depend on alpha.
  const auto rates = compute_rates(s, state, RateModel::Approx);
  std::vector<double> rest(count);
  for (int m = 0; m < count; ++m) {
    const auto r = evaluate_vehicle(s, state, rates, m);
    rest[m] = r.energy - r.e_uplink_sat;
  }
  const double root_bits = std::sqrt(s.total_bits());

  auto denominator = [&](const std::vector<double>& alpha) {
    double d = 0.0;
    for (int m = 0; m < count; ++m) d += ratio(weight[m], alpha[m]) + rest[m];
    return d;
  };
  auto surrogate = [&](double y, const std::vector<double>& alpha) {
    return 2.0 * y * root_bits - y * y * denominator(alpha);
  };

  FractionalResult out;
  out.values = state.alpha;
  out.auxiliary = root_bits / denominator(out.values);
  out.surrogate.push_back(surrogate(out.auxiliary, out.values));
  for (int it = 0; it < options.max_iterations; ++it) {
    // With y fixed the surrogate is maximized by minimizing sum H/alpha.
    out.values = sqrt_weighted_simplex(weight, lower);
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
