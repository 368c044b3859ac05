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

#include "stin/matching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "stin/solvers.hpp"

namespace stin {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNegInf = -kInf;

/// Indices 0..n-1 sorted by descending score, ties to the lower index.
std::vector<int> rank_desc(int n, const auto& score) {
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return score(a) > score(b); });
  return order;
}

// Least energy of cluster n's members under the probe's sub-channel
// holding, each member re-solving its task split for that holding. Infinite
// if some member cannot meet its deadline.
double members_energy(const Scenario& s, const AllocationState& probe, RateModel model, int n) {
  const auto rates = compute_rates(s, probe, model);
  AllocationState trial = probe;
  double energy = 0.0;
  for (int m : s.members(n)) {
    try {
      const auto p = solve_task_vertex(task_problem(s, probe, rates, m), TaskRule::MinEnergy, m);
      trial.theta[m] = p.theta;
      trial.zeta[m] = p.zeta;
    } catch (const InfeasibleError&) {
      return kInf;
    }
    energy += evaluate_vehicle(s, trial, rates, m).energy;
  }
  return energy;
}

int least_loaded(const std::vector<int>& load, int q_max, const std::vector<int>& tie_rank) {
  int best = -1;
  for (int n = 0; n < static_cast<int>(load.size()); ++n) {
    if (load[n] >= q_max) continue;
    if (best < 0 || load[n] < load[best] || (load[n] == load[best] && tie_rank[n] < tie_rank[best]))
      best = n;
  }
  return best;
}

}  // namespace

int PreferenceLists::cluster_rank(int n, int f) const {
  const auto& list = cluster_prefs[n];
  auto it = std::find(list.begin(), list.end(), f);
  return it == list.end() ? -1 : static_cast<int>(it - list.begin());
}

PreferenceLists PreferenceLists::from_utilities(std::vector<std::vector<double>> utility,
                                                std::vector<double> reservation) {
  PreferenceLists p;
  p.utility = std::move(utility);
  const int clusters = p.clusters();
  const int subchannels = p.subchannels();
  for (const auto& row : p.utility)
    if (static_cast<int>(row.size()) != subchannels)
      throw std::invalid_argument("utility matrix is ragged");
  p.reservation = reservation.empty() ? std::vector<double>(clusters, kNegInf) : std::move(reservation);
  if (static_cast<int>(p.reservation.size()) != clusters)
    throw std::invalid_argument("reservation size does not match cluster count");

  p.cluster_prefs.resize(clusters);
  for (int n = 0; n < clusters; ++n) {
    for (int f : rank_desc(subchannels, [&](int g) { return p.utility[n][g]; }))
      if (p.utility[n][f] > p.reservation[n]) p.cluster_prefs[n].push_back(f);
  }
  p.subchannel_prefs.resize(subchannels);
  p.subchannel_rank.assign(subchannels, std::vector<int>(clusters, 0));
  for (int f = 0; f < subchannels; ++f) {
    p.subchannel_prefs[f] = rank_desc(clusters, [&](int n) { return p.utility[n][f]; });
    for (int r = 0; r < clusters; ++r) p.subchannel_rank[f][p.subchannel_prefs[f][r]] = r;
  }
  return p;
}

PreferenceLists build_preferences(const Scenario& s, const AllocationState& state, RateModel model) {
  const int clusters = s.num_clusters();
  const int subchannels = s.num_subchannels();
  std::vector<std::vector<double>> utility(clusters, std::vector<double>(subchannels, 0.0));

  AllocationState probe = state;
  std::fill(probe.carrying.begin(), probe.carrying.end(), 1);
  for (int n = 0; n < clusters; ++n) {
    // Probe holds exactly cluster n's current sub-channels.
    for (int f = 0; f < subchannels; ++f) probe.owner[f] = state.owner[f] == n ? n : -1;
    for (int f = 0; f < subchannels; ++f) {
      const int held = probe.owner[f];
      probe.owner[f] = n;
      const double with = members_energy(s, probe, model, n);
      probe.owner[f] = -1;
      const double without = members_energy(s, probe, model, n);
      probe.owner[f] = held;
      // A sub-channel that rescues an otherwise infeasible cluster ranks first.
      utility[n][f] = std::isinf(with) ? 0.0 : without - with;
    }
  }
  return PreferenceLists::from_utilities(std::move(utility), std::vector<double>(clusters, 0.0));
}

int Matching::load(int n) const { return static_cast<int>(std::count(owner.begin(), owner.end(), n)); }

VsmaResult run_vsma(const PreferenceLists& prefs, int q_max, RngStream& stream) {
  const int clusters = prefs.clusters();
  const int subchannels = prefs.subchannels();
  if (q_max < 1) throw std::invalid_argument("q_max must be at least 1");
  if (static_cast<long>(clusters) * q_max < subchannels)
    throw std::invalid_argument("clusters * q_max is smaller than the sub-channel count");

  VsmaResult out;
  out.matching.owner.assign(subchannels, -1);
  out.matching.carrying.assign(subchannels, 1);
  std::vector<int> load(clusters, 0);
  std::vector<std::size_t> next(clusters, 0);

  auto active = [&](int n) {
    return load[n] < q_max && next[n] < prefs.cluster_prefs[n].size();
  };
  std::vector<int> ready;
  for (;;) {
    ready.clear();
    for (int n = 0; n < clusters; ++n)
      if (active(n)) ready.push_back(n);
    if (ready.empty()) break;
    const int n = ready[stream.below(ready.size())];
    const int f = prefs.cluster_prefs[n][next[n]++];
    ++out.proposals;
    const int holder = out.matching.owner[f];
    if (holder >= 0 && prefs.subchannel_rank[f][holder] <= prefs.subchannel_rank[f][n]) continue;
    if (holder >= 0) {
      --load[holder];
      if (prefs.subchannel_rank[f][n] > prefs.subchannel_rank[f][holder])
        out.occupant_rank_monotone = false;
    }
    out.matching.owner[f] = n;
    ++load[n];
  }

  // Sub-channels nobody wanted go to the least-loaded cluster with room.
  for (int f = 0; f < subchannels; ++f) {
    if (out.matching.owner[f] >= 0) continue;
    const int n = least_loaded(load, q_max, prefs.subchannel_rank[f]);
    out.matching.owner[f] = n;
    ++load[n];
  }
  return out;
}

StabilityReport check_stability(const PreferenceLists& prefs, const Matching& matching, int q_max) {
  const int clusters = prefs.clusters();
  const int subchannels = prefs.subchannels();
  if (static_cast<int>(matching.owner.size()) != subchannels)
    throw std::invalid_argument("matching size does not match sub-channel count");
  std::vector<int> load(clusters, 0);
  for (int f = 0; f < subchannels; ++f) {
    const int n = matching.owner[f];
    if (n < 0 || n >= clusters)
      throw std::invalid_argument("sub-channel " + std::to_string(f) + " is unassigned");
    if (++load[n] > q_max)
      throw std::invalid_argument("cluster " + std::to_string(n) + " holds more than q_max");
  }

  // Worst held rank per cluster; unacceptable holdings count as worst.
  std::vector<int> worst(clusters, -1);
  for (int f = 0; f < subchannels; ++f) {
    const int n = matching.owner[f];
    const int r = prefs.cluster_rank(n, f);
    worst[n] = std::max(worst[n], r < 0 ? subchannels : r);
  }

  StabilityReport report;
  for (int n = 0; n < clusters; ++n) {
    const auto& list = prefs.cluster_prefs[n];
    for (int r = 0; r < static_cast<int>(list.size()); ++r) {
      const int f = list[r];
      const int holder = matching.owner[f];
      if (holder == n) continue;
      if (prefs.subchannel_rank[f][n] >= prefs.subchannel_rank[f][holder]) continue;
      if (load[n] < q_max || worst[n] > r) report.blocking.push_back({n, f});
    }
  }
  report.stable = report.blocking.empty();
  return report;
}

Matching one_to_one_baseline(const PreferenceLists& prefs, int q_max) {
  const int clusters = prefs.clusters();
  const int subchannels = prefs.subchannels();
  if (static_cast<long>(clusters) * q_max < subchannels)
    throw std::invalid_argument("clusters * q_max is smaller than the sub-channel count");

  std::vector<std::pair<int, int>> pairs;
  for (int n = 0; n < clusters; ++n)
    for (int f = 0; f < subchannels; ++f) pairs.emplace_back(n, f);
  std::stable_sort(pairs.begin(), pairs.end(), [&](const auto& a, const auto& b) {
    return prefs.utility[a.first][a.second] > prefs.utility[b.first][b.second];
  });

  Matching out;
  out.owner.assign(subchannels, -1);
  out.carrying.assign(subchannels, 0);
  std::vector<int> load(clusters, 0);
  for (const auto& [n, f] : pairs) {
    if (load[n] > 0 || out.owner[f] >= 0) continue;
    out.owner[f] = n;
    out.carrying[f] = 1;
    ++load[n];
  }
  const std::vector<int> by_index = [&] {
    std::vector<int> r(clusters);
    std::iota(r.begin(), r.end(), 0);
    return r;
  }();
  for (int f = 0; f < subchannels; ++f) {
    if (out.owner[f] >= 0) continue;
    const int n = least_loaded(load, q_max, by_index);
    out.owner[f] = n;
    ++load[n];
  }
  return out;
}

void apply_matching(const Matching& matching, AllocationState& state) {
  state.owner = matching.owner;
  state.carrying = matching.carrying;
}

}  // namespace stin
