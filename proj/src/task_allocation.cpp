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
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "stin/solvers.hpp"

namespace stin {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kVertexTol = 1e-12;

// a . x <= b
struct HalfPlane {
  double a0, a1, b;
};

std::array<HalfPlane, 6> half_planes(const TaskPolytope& r) {
  return {{{-1, 0, 0}, {0, -1, 0}, {1, 0, r.theta_max}, {0, 1, r.zeta_max}, {1, 1, 1},
           {-1, -1, -r.share_min}}};
}

double energy_at(const TaskCoefficients& c, const TaskPoint& p) {
  double e = c.local;
  if (p.theta > 0.0) e += p.theta * c.bs_slope;
  if (p.zeta > 0.0) e += p.zeta * c.sat_slope;
  return e;
}

bool nearly_equal(double a, double b) {
  if (a == b) return true;
  return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b));
}

}  // namespace

TaskProblem task_problem(const Scenario& s, const AllocationState& /*state*/, const LinkRates& rates,
                         int m) {
  const auto& infra = s.infra();
  const auto& v = s.vehicle(m);
  const double bits = v.task.bits;
  const double cycles = v.task.cycles;
  const double deadline = v.task.deadline;
  const double tx = v.params.tx_power;
  const double noma = rates.noma[m];
  const double sat = rates.satellite[m];

  TaskProblem p;
  p.cost.local = cycles * v.params.energy_coeff * v.params.cpu_freq * v.params.cpu_freq;
  const double bs_compute = cycles * infra.bs_energy_coeff * infra.bs_cpu * infra.bs_cpu;
  const double sat_compute = cycles * infra.sat_energy_coeff * infra.sat_cpu * infra.sat_cpu;
  const double bs_unit =
      noma > 0.0 ? bs_compute + tx * bits / noma + infra.rsu_tx_power * bits / rates.relay : kInf;
  const double sat_unit = sat > 0.0 ? sat_compute + tx * bits / sat : kInf;
  p.cost.bs_slope = bs_unit - p.cost.local;
  p.cost.sat_slope = sat_unit - p.cost.local;

  // Per unit of theta: RSU uplink, relay and BS compute all lie on the ground path.
  if (noma > 0.0) {
    const double ground_unit_time = bits / noma + bits / rates.relay + cycles / infra.bs_cpu;
    p.region.theta_max =
        std::min({1.0, s.stay_time(m) * noma / bits, deadline / ground_unit_time,
                  deadline / (bits / noma + cycles / infra.bs_cpu)});
  } else {
    p.region.theta_max = 0.0;
  }
  p.region.zeta_max = sat > 0.0 ? std::min(1.0, deadline / (bits / sat + cycles / infra.sat_cpu)) : 0.0;
  p.region.share_min = std::max(0.0, 1.0 - deadline * v.params.cpu_freq / cycles);
  return p;
}

std::vector<TaskPoint> task_vertices(const TaskPolytope& region) {
  const auto planes = half_planes(region);
  std::vector<TaskPoint> out;
  for (std::size_t i = 0; i < planes.size(); ++i) {
    for (std::size_t j = i + 1; j < planes.size(); ++j) {
      const auto& p = planes[i];
      const auto& q = planes[j];
      const double det = p.a0 * q.a1 - p.a1 * q.a0;
      if (det == 0.0) continue;
      TaskPoint x{(p.b * q.a1 - p.a1 * q.b) / det, (p.a0 * q.b - p.b * q.a0) / det};
      bool inside = true;
      for (const auto& h : planes) inside = inside && h.a0 * x.theta + h.a1 * x.zeta <= h.b + kVertexTol;
      if (!inside) continue;
      x.theta = std::clamp(x.theta, 0.0, region.theta_max);
      x.zeta = std::clamp(x.zeta, 0.0, region.zeta_max);
      out.push_back(x);
    }
  }
  return out;
}

TaskPoint solve_task_vertex(const TaskProblem& problem, TaskRule rule, int vehicle) {
  const auto vertices = task_vertices(problem.region);
  if (vertices.empty()) {
    throw InfeasibleError("deadline", vehicle,
                          "task split infeasible for vehicle " + std::to_string(vehicle) +
                              ": local share cannot meet the deadline");
  }
  auto better = [&](const TaskPoint& a, const TaskPoint& b) {
    const double ea = energy_at(problem.cost, a);
    const double eb = energy_at(problem.cost, b);
    const double sa = a.theta + a.zeta;
    const double sb = b.theta + b.zeta;
    switch (rule) {
      case TaskRule::MinEnergy:
        if (!nearly_equal(ea, eb)) return ea < eb;
        if (!nearly_equal(sa, sb)) return sa < sb;
        return a.theta < b.theta;
      case TaskRule::MinOffload:
        if (!nearly_equal(sa, sb)) return sa < sb;
        if (!nearly_equal(ea, eb)) return ea < eb;
        return a.theta < b.theta;
      case TaskRule::MaxOffload:
        if (!nearly_equal(sa, sb)) return sa > sb;
        return a.zeta > b.zeta;
    }
    return false;
  };
  TaskPoint best = vertices.front();
  for (const auto& v : vertices)
    if (better(v, best)) best = v;
  return best;
}

TaskAllocation solve_task_allocation(const Scenario& s, const AllocationState& state, TaskRule rule) {
  const auto rates = compute_rates(s, state, RateModel::Approx);
  TaskAllocation out;
  out.theta.resize(s.num_vehicles());
  out.zeta.resize(s.num_vehicles());
  for (int m = 0; m < s.num_vehicles(); ++m) {
    const auto point = solve_task_vertex(task_problem(s, state, rates, m), rule, m);
    out.theta[m] = point.theta;
    out.zeta[m] = point.zeta;
  }
  return out;
}

}  // namespace stin
