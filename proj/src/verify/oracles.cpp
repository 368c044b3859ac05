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

#include "verify/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace stin::verify {

double task_energy(const TaskCoefficients& c, const TaskPoint& p) {
  return c.local + p.theta * c.bs_slope + p.zeta * c.sat_slope;
}

bool task_feasible(const TaskPolytope& r, const TaskPoint& p, double tol) {
  const double share = p.theta + p.zeta;
  return p.theta >= -tol && p.zeta >= -tol && p.theta <= r.theta_max + tol &&
         p.zeta <= r.zeta_max + tol && share >= r.share_min - tol && share <= 1.0 + tol;
}

GridTaskResult grid_task(const TaskProblem& problem, double step, bool boundary_points) {
  const auto& r = problem.region;
  GridTaskResult best;
  auto consider = [&](TaskPoint p) {
    if (!task_feasible(r, p, 0.0)) return;
    const double e = task_energy(problem.cost, p);
    if (!best.feasible || e < best.energy) best = {p, e, true};
  };
  const int nt = static_cast<int>(std::floor(r.theta_max / step + 1e-9));
  const int nz = static_cast<int>(std::floor(r.zeta_max / step + 1e-9));
  for (int i = 0; i <= nt; ++i)
    for (int j = 0; j <= nz; ++j) consider({i * step, j * step});
  if (!boundary_points) return best;
  // Where each grid line crosses the polytope boundary. A diagonal edge
  // meeting a box edge off the lattice can otherwise leave the nearest
  // feasible lattice point two cells away.
  for (int i = 0; i <= nt; ++i) {
    const double t = i * step;
    for (double z : {r.zeta_max, r.share_min - t, 1.0 - t}) consider({t, z});
  }
  for (int j = 0; j <= nz; ++j) {
    const double z = j * step;
    for (double t : {r.theta_max, r.share_min - z, 1.0 - z}) consider({t, z});
  }
  return best;
}

TaskProblem random_task_problem(RngStream& rng) {
  TaskProblem p;
  p.cost.local = rng.uniform(0.1, 1.0);
  p.cost.bs_slope = rng.uniform(-1.0, 2.0);
  p.cost.sat_slope = rng.uniform(-1.0, 2.0);
  p.region.theta_max = rng.uniform() < 0.1 ? 0.0 : rng.uniform(0.05, 1.0);
  p.region.zeta_max = rng.uniform(0.05, 1.0);
  const double reach = std::min(1.0, p.region.theta_max + p.region.zeta_max);
  // Leave room for at least a few grid cells above share_min.
  p.region.share_min = rng.uniform() < 0.2 ? 0.0 : rng.uniform(0.0, 0.9 * reach);
  return p;
}

Scenario small_scenario(int vehicles, std::uint64_t seed) {
  InfrastructureParams infra;
  infra.num_subchannels = 2;
  infra.num_clusters = 1;
  FleetTemplate fleet;
  fleet.deadline = 3.0;
  ScenarioOptions options;
  options.relay_rate = 1e8;
  return generate_scenario(infra, fleet, vehicles, 1, seed, Clustering::SortedRoundRobin, options);
}

AllocationState random_small_state(const Scenario& s, RngStream& rng) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    AllocationState state = blank_state(s);
    std::fill(state.owner.begin(), state.owner.end(), 0);
    double total = 0.0;
    for (auto& a : state.alpha) total += (a = rng.uniform(0.2, 1.0));
    for (auto& a : state.alpha) a /= total;
    for (int m = 0; m < s.num_vehicles(); ++m) {
      state.power[m] = rng.uniform(0.5, 1.0) * s.infra().p_max;
      state.theta[m] = rng.uniform(0.05, 0.3);
      state.zeta[m] = rng.uniform(0.05, 0.4);
    }
    try {
      for (int m = 0; m < s.num_vehicles(); ++m) min_power(s, state, m);
      sqrt_weighted_simplex(bandwidth_weights(s, state), bandwidth_lower_bounds(s, state));
    } catch (const InfeasibleError&) {
      continue;
    }
    return state;
  }
  throw InfeasibleError("random", -1, "no feasible random state for this scenario");
}

double grid_bandwidth_efficiency(const Scenario& s, const AllocationState& state, double step) {
  if (s.num_vehicles() != 3) throw std::invalid_argument("grid_bandwidth_efficiency needs 3 vehicles");
  const auto lower = bandwidth_lower_bounds(s, state);
  const int n = static_cast<int>(std::lround(1.0 / step));
  double best = 0.0;
  AllocationState probe = state;
  for (int i = 1; i < n; ++i) {
    for (int j = 1; i + j < n; ++j) {
      probe.alpha = {i * step, j * step, (n - i - j) * step};
      bool ok = true;
      for (int m = 0; m < 3; ++m) ok = ok && probe.alpha[m] >= lower[m];
      if (ok) best = std::max(best, efficiency(s, probe));
    }
  }
  return best;
}

double grid_power_efficiency(const Scenario& s, const AllocationState& state, int points) {
  if (s.num_vehicles() != 2) throw std::invalid_argument("grid_power_efficiency needs 2 vehicles");
  const double p_max = s.infra().p_max;
  const double lo0 = min_power(s, state, 0);
  const double lo1 = min_power(s, state, 1);
  AllocationState probe = state;
  double best = 0.0;
  for (int i = 0; i < points; ++i) {
    for (int j = 0; j < points; ++j) {
      probe.power = {lo0 + (p_max - lo0) * i / (points - 1), lo1 + (p_max - lo1) * j / (points - 1)};
      best = std::max(best, efficiency(s, probe));
    }
  }
  return best;
}

PreferenceLists random_preferences(int clusters, int subchannels, RngStream& rng) {
  std::vector<std::vector<double>> u(clusters, std::vector<double>(subchannels));
  for (auto& row : u)
    for (auto& x : row) x = rng.uniform(-0.3, 1.0);
  return PreferenceLists::from_utilities(std::move(u), std::vector<double>(clusters, 0.0));
}

namespace {

// Tie rule shared with PreferenceLists: higher utility first, then lower index.
bool prefers(double ua, int a, double ub, int b) { return ua > ub || (ua == ub && a < b); }

}  // namespace

std::vector<BlockingPair> brute_force_blocking(const PreferenceLists& prefs, const Matching& m,
                                               int q_max) {
  const int clusters = prefs.clusters();
  const int subchannels = prefs.subchannels();
  std::vector<BlockingPair> out;
  for (int n = 0; n < clusters; ++n) {
    int load = 0;
    for (int f = 0; f < subchannels; ++f) load += m.owner[f] == n;
    for (int f = 0; f < subchannels; ++f) {
      const int holder = m.owner[f];
      if (holder == n) continue;
      if (!(prefs.utility[n][f] > prefs.reservation[n])) continue;
      if (!prefers(prefs.utility[n][f], n, prefs.utility[holder][f], holder)) continue;
      bool wants = load < q_max;
      for (int g = 0; g < subchannels && !wants; ++g) {
        if (m.owner[g] != n) continue;
        const bool g_unacceptable = !(prefs.utility[n][g] > prefs.reservation[n]);
        wants = g_unacceptable || prefers(prefs.utility[n][f], f, prefs.utility[n][g], g);
      }
      if (wants) out.push_back({n, f});
    }
  }
  return out;
}

std::vector<Matching> enumerate_stable(const PreferenceLists& prefs, int q_max) {
  const int clusters = prefs.clusters();
  const int subchannels = prefs.subchannels();
  std::vector<Matching> out;
  Matching m;
  m.owner.assign(subchannels, 0);
  m.carrying.assign(subchannels, 1);
  std::function<void(int)> rec = [&](int f) {
    if (f == subchannels) {
      for (int n = 0; n < clusters; ++n)
        if (m.load(n) > q_max) return;
      if (brute_force_blocking(prefs, m, q_max).empty()) out.push_back(m);
      return;
    }
    for (int n = 0; n < clusters; ++n) {
      m.owner[f] = n;
      rec(f + 1);
    }
  };
  rec(0);
  return out;
}

LowSnrInstance random_low_snr_instance(RngStream& rng, double max_total_snr) {
  LowSnrInstance x;
  const int members = 2 + static_cast<int>(rng.below(3));
  const int subchannels = 1 + static_cast<int>(rng.below(3));
  auto& st = x.state;
  st.exponent = 3.7;
  st.noise = 1e-11;
  st.subchannel_bandwidth = 1e6;
  for (int k = 0; k < members; ++k) {
    Geometry g;
    g.radius = 250.0;
    g.offset = rng.uniform(50.0, 200.0);
    g.speed = rng.uniform(15.0, 25.0);
    st.geometry.push_back(g);
    x.stay.push_back(g.stay_time());
    x.powers.push_back(rng.uniform(0.01, 0.2));
  }
  st.gain.assign(subchannels, std::vector<double>(members));
  for (auto& row : st.gain)
    for (auto& g : row) g = 1e-3 * -std::log1p(-rng.uniform());
  x.held.assign(subchannels, 0);
  for (auto& h : x.held) h = rng.uniform() < 0.6;
  x.held[rng.below(subchannels)] = 1;

  // Received power peaks at closest approach, distance = offset.
  double peak = 0.0;
  for (int f = 0; f < subchannels; ++f) {
    for (int k = 0; k < members; ++k) {
      double total = 0.0;
      for (int j = 0; j < members; ++j) total += x.powers[j] * st.gain[f][j];
      peak = std::max(peak, total * std::pow(st.geometry[k].offset, -st.exponent) / st.noise);
    }
  }
  const double target = rng.uniform(0.01, 1.0) * max_total_snr;
  for (auto& p : x.powers) p *= target / peak;
  return x;
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(double(i) / a.size() - double(j) / b.size()));
  }
  return d;
}

}  // namespace stin::verify
