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
#include <optional>
#include <stdexcept>
#include <string>

#include "stin/orchestrator.hpp"
#include "stin/rng.hpp"

namespace stin {
namespace {

constexpr std::array<std::pair<Scheme, std::string_view>, 7> kSchemeNames{{
    {Scheme::Jtora, "jtora"},
    {Scheme::PriorityLocal, "priority-local"},
    {Scheme::PriorityEdge, "priority-edge"},
    {Scheme::Random, "random"},
    {Scheme::OneToOne, "one-to-one"},
    {Scheme::WaterFilling, "water-filling"},
    {Scheme::EqualPower, "equal-power"},
}};

constexpr int kRandomAttempts = 200;
constexpr int kRejectionTries = 1000;

TaskPoint sample_task_point(const TaskProblem& problem, RngStream& stream) {
  const auto& r = problem.region;
  for (int i = 0; i < kRejectionTries; ++i) {
    const double theta = stream.uniform(0.0, r.theta_max);
    const double zeta = stream.uniform(0.0, r.zeta_max);
    const double share = theta + zeta;
    if (share >= r.share_min && share <= 1.0) return {theta, zeta};
  }
  // Thin polytope: random convex combination of its vertices.
  const auto vertices = task_vertices(r);
  std::vector<double> w(vertices.size());
  double total = 0.0;
  for (auto& x : w) total += (x = -std::log1p(-stream.uniform()));
  TaskPoint p;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    p.theta += w[i] / total * vertices[i].theta;
    p.zeta += w[i] / total * vertices[i].zeta;
  }
  return p;
}

std::optional<AllocationState> random_attempt(const Scenario& s, RngStream& stream) {
  const int count = s.num_vehicles();
  const int clusters = s.num_clusters();
  AllocationState state = blank_state(s);

  std::vector<int> load(clusters, 0);
  for (int f = 0; f < s.num_subchannels(); ++f) {
    std::vector<int> open;
    for (int n = 0; n < clusters; ++n)
      if (load[n] < s.infra().cluster_cap) open.push_back(n);
    const int n = open[stream.below(open.size())];
    state.owner[f] = n;
    ++load[n];
  }
  double total = 0.0;
  for (auto& a : state.alpha) total += (a = -std::log1p(-stream.uniform()));
  for (auto& a : state.alpha) a /= total;
  for (auto& p : state.power) p = stream.uniform(0.0, s.infra().p_max);

  const auto rates = compute_rates(s, state);
  for (int m = 0; m < count; ++m) {
    const auto problem = task_problem(s, state, rates, m);
    if (task_vertices(problem.region).empty()) return std::nullopt;
    const auto p = sample_task_point(problem, stream);
    state.theta[m] = p.theta;
    state.zeta[m] = p.zeta;
  }
  if (!check_feasibility(s, state).feasible) return std::nullopt;
  return state;
}

RunResult finish(const Scenario& s, AllocationState state, const AoOptions& options) {
  RunResult out;
  out.state = std::move(state);
  out.trace.converged = true;
  out.trace.termination = "single pass";
  out.report = evaluate(s, out.state, options.rate_model);
  return out;
}

}  // namespace

std::string_view scheme_name(Scheme scheme) {
  for (const auto& [s, name] : kSchemeNames)
    if (s == scheme) return name;
  return "unknown";
}

Scheme parse_scheme(std::string_view name) {
  for (const auto& [s, n] : kSchemeNames)
    if (n == name) return s;
  throw std::invalid_argument("unknown scheme: " + std::string(name));
}

const std::vector<Scheme>& all_schemes() {
  static const std::vector<Scheme> schemes = [] {
    std::vector<Scheme> v;
    for (const auto& entry : kSchemeNames) v.push_back(entry.first);
    return v;
  }();
  return schemes;
}

std::vector<double> water_filling_power(const Scenario& s, const AllocationState& state) {
  const auto& infra = s.infra();
  std::vector<double> power(s.num_vehicles(), 0.0);
  for (int n = 0; n < s.num_clusters(); ++n) {
    const auto& members = s.members(n);
    if (members.empty()) continue;
    const auto held = state.held_by(n);
    std::vector<double> g(members.size(), 0.0);
    for (std::size_t i = 0; i < members.size(); ++i) {
      const int m = members[i];
      double sum = 0.0;
      int used = 0;
      for (int f = 0; f < s.num_subchannels(); ++f)
        if (held[f]) {
          sum += s.gain(m, f);
          ++used;
        }
      if (used > 0) g[i] = sum / used * s.mean_pathloss(m) / infra.noise_terrestrial;
    }
    const double budget = 0.5 * infra.p_max * members.size();
    auto filled = [&](double level) {
      double total = 0.0;
      for (double gi : g)
        if (gi > 0.0) total += std::clamp(level - 1.0 / gi, 0.0, infra.p_max);
      return total;
    };
    // Bisection on the water level.
    double lo = 0.0, hi = infra.p_max;
    for (double gi : g)
      if (gi > 0.0) hi = std::max(hi, infra.p_max + 1.0 / gi);
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      (filled(mid) < budget ? lo : hi) = mid;
    }
    for (std::size_t i = 0; i < members.size(); ++i)
      if (g[i] > 0.0) power[members[i]] = std::clamp(hi - 1.0 / g[i], 0.0, infra.p_max);
  }
  return power;
}

RunResult run_scheme(const Scenario& s, Scheme scheme, const AoOptions& options) {
  switch (scheme) {
    case Scheme::Jtora:
      return run_jtora(s, options);
    case Scheme::PriorityEdge:
      return run_alternating(s, AoPolicy{TaskRule::MaxOffload, PowerRule::Optimize, MatchingRule::Vsma},
                             options);
    case Scheme::OneToOne:
      return run_alternating(s, AoPolicy{TaskRule::MinEnergy, PowerRule::Optimize, MatchingRule::OneToOne},
                             options);
    case Scheme::WaterFilling:
      return run_alternating(
          s, AoPolicy{TaskRule::MinEnergy, PowerRule::WaterFilling, MatchingRule::Vsma}, options);
    case Scheme::EqualPower:
      return run_alternating(
          s, AoPolicy{TaskRule::MinEnergy, PowerRule::EqualPower, MatchingRule::Vsma}, options);
    case Scheme::PriorityLocal: {
      AllocationState state = initial_state(s);
      const auto split = solve_task_allocation(s, state, TaskRule::MinOffload);
      state.theta = split.theta;
      state.zeta = split.zeta;
      return finish(s, std::move(state), options);
    }
    case Scheme::Random: {
      RngStream stream(s.seed(), "random-baseline");
      for (int i = 0; i < kRandomAttempts; ++i)
        if (auto state = random_attempt(s, stream)) return finish(s, std::move(*state), options);
      throw InfeasibleError("random", -1, "no feasible random allocation found");
    }
  }
  throw std::invalid_argument("unknown scheme");
}

EfficiencyReport run_baseline(const Scenario& s, Scheme scheme, const AoOptions& options) {
  return run_scheme(s, scheme, options).report;
}

}  // namespace stin
