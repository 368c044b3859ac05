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

#include "stin/cost_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "stin/channels.hpp"
#include "stin/kernels.hpp"
#include "stin/units.hpp"

namespace stin {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Time to push `amount` through `rate`; zero work takes no time even on a dead link.
double transfer_time(double amount, double rate) {
  if (amount <= 0.0) return 0.0;
  if (!(rate > 0.0)) return kInf;
  return amount / rate;
}

// Relative slack of value <= limit.
double upper_margin(double value, double limit) {
  if (std::isinf(value)) return -kInf;
  return (limit - value) / limit;
}

// Relative slack of 0 <= value <= hi.
double box_margin(double value, double hi) { return std::min(value, hi - value) / hi; }

bool violated(double margin) { return margin < -kFeasibilityTolerance; }

}  // namespace

int AllocationState::load(int n) const {
  return static_cast<int>(std::count(owner.begin(), owner.end(), n));
}

std::vector<std::uint8_t> AllocationState::held_by(int n) const {
  std::vector<std::uint8_t> held(owner.size());
  for (std::size_t f = 0; f < owner.size(); ++f) held[f] = owner[f] == n && carrying[f] ? 1 : 0;
  return held;
}

AllocationState blank_state(const Scenario& s) {
  const int m = s.num_vehicles();
  AllocationState state;
  state.theta.assign(m, 0.0);
  state.zeta.assign(m, 0.0);
  state.alpha.assign(m, 1.0 / m);
  state.power.assign(m, 0.5 * s.infra().p_max);
  state.owner.assign(s.num_subchannels(), -1);
  state.carrying.assign(s.num_subchannels(), 1);
  return state;
}

double approx_rate_slope(const Scenario& s, const AllocationState& state, int m) {
  const auto& infra = s.infra();
  const int n = s.cluster_of(m);
  const double w = infra.subchannel_bandwidth();
  double held_gain = 0.0;
  for (int f = 0; f < s.num_subchannels(); ++f)
    if (state.owner[f] == n && state.carrying[f]) held_gain += w * s.gain(m, f);
  return kLinearRateSlope * held_gain * s.mean_pathloss(m) / infra.noise_terrestrial;
}

LinkRates compute_rates(const Scenario& s, const AllocationState& state, RateModel model) {
  const int count = s.num_vehicles();
  LinkRates rates;
  rates.relay = s.relay_rate();
  rates.satellite.resize(count);
  for (int m = 0; m < count; ++m) {
    const double a = state.alpha[m];
    rates.satellite[m] =
        a > 0.0 ? a * s.infra().thz_bandwidth * std::log2(1.0 + s.thz_sinr(m)) : 0.0;
  }
  if (model == RateModel::Approx) {
    rates.noma.resize(count);
    for (int m = 0; m < count; ++m) rates.noma[m] = approx_rate_slope(s, state, m) * state.power[m];
  } else {
    std::vector<int> active(state.owner);
    for (std::size_t f = 0; f < active.size(); ++f)
      if (!state.carrying[f]) active[f] = -1;
    rates.noma = kernels::serial::exact_noma_rates(s, active, state.power);
  }
  return rates;
}

double VehicleReport::completion_time() const {
  return std::max({t_local, t_ground, satellite_path_delay()});
}

VehicleReport evaluate_vehicle(const Scenario& s, const AllocationState& state,
                               const LinkRates& rates, int m) {
  const auto& infra = s.infra();
  const auto& v = s.vehicle(m);
  const double theta = state.theta[m];
  const double zeta = state.zeta[m];
  const double local = 1.0 - theta - zeta;
  const double bits = v.task.bits;
  const double cycles = v.task.cycles;
  const double z_loc = v.params.cpu_freq;

  VehicleReport r;
  r.vehicle = m;
  r.noma_rate = rates.noma[m];
  r.sat_rate = rates.satellite[m];

  r.t_local = local * cycles / z_loc;
  r.t_rsu = transfer_time(theta * bits, rates.noma[m]);
  r.t_relay = transfer_time(theta * bits, rates.relay);
  r.t_bs = theta * cycles / infra.bs_cpu;
  r.t_uplink_sat = transfer_time(zeta * bits, rates.satellite[m]);
  r.t_sat = zeta * cycles / infra.sat_cpu;
  r.t_ground = r.t_rsu + r.t_relay + r.t_bs;

  r.e_local = local * cycles * v.params.energy_coeff * z_loc * z_loc;
  r.e_rsu = v.params.tx_power * r.t_rsu;
  r.e_relay = infra.rsu_tx_power * r.t_relay;
  r.e_bs = theta * cycles * infra.bs_energy_coeff * infra.bs_cpu * infra.bs_cpu;
  r.e_uplink_sat = v.params.tx_power * r.t_uplink_sat;
  r.e_sat = zeta * cycles * infra.sat_energy_coeff * infra.sat_cpu * infra.sat_cpu;
  r.energy = r.e_local + r.e_rsu + r.e_relay + r.e_bs + r.e_uplink_sat + r.e_sat;
  return r;
}

bool Feasibility::violates(const std::string& constraint) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.constraint == constraint; });
}

double EfficiencyReport::mean_completion_time() const {
  if (vehicles.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& v : vehicles) sum += v.completion_time();
  return sum / static_cast<double>(vehicles.size());
}

namespace {

Feasibility scan(const Scenario& s, const AllocationState& state, const LinkRates& rates,
                 const std::vector<VehicleReport>& reports) {
  Feasibility out;
  auto add = [&](const char* constraint, int index, double margin) {
    if (violated(margin) || std::isnan(margin)) out.violations.push_back({constraint, index, margin});
  };
  const auto& infra = s.infra();
  const double tol = kFeasibilityTolerance;

  for (int m = 0; m < s.num_vehicles(); ++m) {
    const double theta = state.theta[m];
    const double zeta = state.zeta[m];
    add("bs_share", m, box_margin(theta, 1.0));
    add("sat_share", m, box_margin(zeta, 1.0));
    add("bandwidth_share", m, box_margin(state.alpha[m], 1.0));
    add("share_sum", m, box_margin(1.0 - theta - zeta, 1.0));
    add("power_box", m, box_margin(state.power[m], infra.p_max));

    const auto& r = reports[m];
    const auto& task = s.vehicle(m).task;
    add("stay_time", m, upper_margin(r.t_rsu, s.stay_time(m)));

    if (zeta > 0.0) {
      const double window = task.deadline - r.t_sat;
      const double required = zeta * task.bits / window;
      add("sat_rate", m, window <= 0.0 ? -kInf : (rates.satellite[m] - required) / required);
    }
    if (theta > 0.0) {
      const double window = task.deadline - r.t_bs;
      const double required = theta * task.bits / window;
      add("noma_rate", m, window <= 0.0 ? -kInf : (rates.noma[m] - required) / required);
    }
    add("deadline", m, upper_margin(r.completion_time(), task.deadline));
  }

  double alpha_sum = 0.0;
  for (double a : state.alpha) alpha_sum += a;
  if (std::abs(alpha_sum - 1.0) > tol) out.violations.push_back({"bandwidth_sum", -1, -std::abs(alpha_sum - 1.0)});

  for (int f = 0; f < s.num_subchannels(); ++f) {
    const int owner = state.owner[f];
    if (owner < 0 || owner >= s.num_clusters()) out.violations.push_back({"subchannel_owner", f, -1.0});
  }
  for (int n = 0; n < s.num_clusters(); ++n) {
    const int size = static_cast<int>(s.members(n).size());
    if (size > infra.cluster_cap)
      out.violations.push_back({"cluster_size", n, double(infra.cluster_cap - size) / infra.cluster_cap});
    const int load = state.load(n);
    if (load > infra.cluster_cap)
      out.violations.push_back({"subchannel_load", n, double(infra.cluster_cap - load) / infra.cluster_cap});
  }
  out.feasible = out.violations.empty();
  return out;
}

}  // namespace

EfficiencyReport evaluate(const Scenario& s, const AllocationState& state, RateModel model) {
  const auto rates = compute_rates(s, state, model);
  EfficiencyReport report;
  report.vehicles.reserve(s.num_vehicles());
  for (int m = 0; m < s.num_vehicles(); ++m) {
    report.vehicles.push_back(evaluate_vehicle(s, state, rates, m));
    report.total_bits += s.vehicle(m).task.bits;
    report.total_energy += report.vehicles.back().energy;
  }
  report.efficiency = report.total_bits / report.total_energy;
  report.feasibility = scan(s, state, rates, report.vehicles);
  return report;
}

double efficiency(const Scenario& s, const AllocationState& state, RateModel model) {
  const auto rates = compute_rates(s, state, model);
  double energy = 0.0;
  for (int m = 0; m < s.num_vehicles(); ++m) energy += evaluate_vehicle(s, state, rates, m).energy;
  return s.total_bits() / energy;
}

Feasibility check_feasibility(const Scenario& s, const AllocationState& state, RateModel model) {
  return evaluate(s, state, model).feasibility;
}

}  // namespace stin
