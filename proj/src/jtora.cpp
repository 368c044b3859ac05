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

#include <chrono>
#include <cmath>
#include <optional>

#include "stin/orchestrator.hpp"
#include "stin/rng.hpp"

namespace stin {
namespace {

constexpr int kMatchingRounds = 4;

Matching match(const Scenario& s, const AllocationState& state, MatchingRule rule, std::uint64_t round,
               long* proposals) {
  const auto prefs = build_preferences(s, state);
  if (rule == MatchingRule::OneToOne) return one_to_one_baseline(prefs, s.infra().matching_quota());
  RngStream stream(s.seed(), "matching", round);
  auto result = run_vsma(prefs, s.infra().matching_quota(), stream);
  if (proposals) *proposals += result.proposals;
  return result.matching;
}

std::vector<double> rule_power(const Scenario& s, const AllocationState& state, PowerRule rule) {
  if (rule == PowerRule::WaterFilling) return water_filling_power(s, state);
  return std::vector<double>(s.num_vehicles(), 0.5 * s.infra().p_max);
}

}  // namespace

AllocationState initial_state(const Scenario& s, const AoPolicy& policy) {
  AllocationState state = blank_state(s);
  apply_matching(match(s, state, policy.matching, 0, nullptr), state);
  if (policy.power == PowerRule::WaterFilling) state.power = water_filling_power(s, state);
  return state;
}

RunResult run_alternating(const Scenario& s, const AoPolicy& policy, const AoOptions& options,
                          std::optional<AllocationState> start) {
  using Clock = std::chrono::steady_clock;
  RunResult out;
  AllocationState state = start ? std::move(*start) : initial_state(s, policy);
  double value = efficiency(s, state);
  bool feasible = check_feasibility(s, state).feasible;

  std::optional<AllocationState> best;
  double best_value = 0.0;
  auto remember = [&] {
    if (feasible && (!best || value > best_value)) {
      best = state;
      best_value = value;
    }
  };
  remember();

  // Optimizing steps must not lower the objective; rule-based steps only
  // need to keep the iterate feasible. From an infeasible iterate any
  // candidate is taken.
  auto offer = [&](AllocationState candidate, bool optimizing) {
    const double v = efficiency(s, candidate);
    const bool ok = check_feasibility(s, candidate).feasible;
    const bool take = !feasible || (ok && (!optimizing || v >= value));
    if (take) {
      state = std::move(candidate);
      value = v;
      feasible = ok;
    }
    return take;
  };

  const bool optimize_task = policy.task == TaskRule::MinEnergy;
  for (int k = 1; k <= options.max_iterations; ++k) {
    const auto t0 = Clock::now();
    AoIteration it;
    it.k = k;
    double before = value;

    {
      const auto split = solve_task_allocation(s, state, policy.task);
      AllocationState c = state;
      c.theta = split.theta;
      c.zeta = split.zeta;
      offer(std::move(c), optimize_task);
    }
    it.delta_task = value - before;
    before = value;

    try {
      AllocationState c = state;
      if (policy.power == PowerRule::Optimize) {
        auto r = solve_power_allocation(s, state, options.inner);
        c.power = std::move(r.values);
        it.inner_power = r.iterations;
      } else {
        c.power = rule_power(s, state, policy.power);
      }
      offer(std::move(c), policy.power == PowerRule::Optimize);
    } catch (const InfeasibleError&) {
    }
    it.delta_power = value - before;
    before = value;

    // Utilities assume members re-split their tasks for the new holding, so
    // the candidate carries that split too. Each round re-ranks against the
    // previous round's matching.
    for (int round = 0; round < kMatchingRounds; ++round) {
      try {
        AllocationState c = state;
        const std::uint64_t id = static_cast<std::uint64_t>(k) * kMatchingRounds + round;
        apply_matching(match(s, state, policy.matching, id, &out.trace.matching_proposals), c);
        if (c.owner == state.owner) break;
        const auto split = solve_task_allocation(s, c, policy.task);
        c.theta = split.theta;
        c.zeta = split.zeta;
        if (offer(std::move(c), policy.matching == MatchingRule::Vsma)) it.matching_accepted = true;
        else break;
      } catch (const InfeasibleError&) {
        break;
      }
    }
    it.delta_matching = value - before;
    before = value;

    try {
      auto r = solve_bandwidth_allocation(s, state, options.inner);
      AllocationState c = state;
      c.alpha = std::move(r.values);
      it.inner_bandwidth = r.iterations;
      offer(std::move(c), true);
    } catch (const InfeasibleError&) {
    }
    it.delta_bandwidth = value - before;

    remember();
    it.efficiency = value;
    it.energy = value > 0.0 ? s.total_bits() / value : 0.0;
    it.wall_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    out.trace.iterations.push_back(it);

    if (k >= 2) {
      const double prev = out.trace.iterations[k - 2].efficiency;
      if (feasible && std::abs(value - prev) <= options.tolerance * std::abs(value)) {
        out.trace.converged = true;
        out.trace.termination = "tolerance";
        break;
      }
    }
  }
  if (!out.trace.converged) out.trace.termination = "iteration cap";

  out.state = best ? std::move(*best) : std::move(state);
  out.report = evaluate(s, out.state, options.rate_model);
  return out;
}

RunResult run_jtora(const Scenario& s, const AoOptions& options,
                    std::optional<AllocationState> start) {
  return run_alternating(s, AoPolicy{}, options, std::move(start));
}

}  // namespace stin
