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
#include <stdexcept>
#include <string>

#include "stin/orchestrator.hpp"

namespace stin {
namespace {

constexpr std::array<std::pair<SweepVariable, std::string_view>, 4> kSweepNames{{
    {SweepVariable::Vehicles, "vehicles"},
    {SweepVariable::TaskBits, "task_size_kb"},
    {SweepVariable::Deadline, "deadline_s"},
    {SweepVariable::Subchannels, "subchannels"},
}};

// Task sizes are drawn uniformly within this fraction of the sweep value.
constexpr double kTaskSpread = 0.15;

bool integral(SweepVariable v) {
  return v == SweepVariable::Vehicles || v == SweepVariable::Subchannels;
}

int as_count(double value) { return static_cast<int>(std::lround(value)); }

}  // namespace

std::string_view sweep_name(SweepVariable v) {
  for (const auto& [s, name] : kSweepNames)
    if (s == v) return name;
  return "unknown";
}

SweepVariable parse_sweep(std::string_view name) {
  for (const auto& [s, n] : kSweepNames)
    if (n == name) return s;
  throw std::invalid_argument("unknown sweep variable: " + std::string(name));
}

void ExperimentSpec::validate() const {
  if (values.empty()) throw ScenarioError("sweep has no values");
  if (schemes.empty()) throw ScenarioError("sweep has no schemes");
  if (seeds.empty()) throw ScenarioError("sweep has no seeds");
  if (cluster_size < 1) throw ScenarioError("cluster_size must be at least 1");
  for (double v : values) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ScenarioError("sweep values must be positive");
    if (integral(sweep) && std::abs(v - as_count(v)) > 1e-9)
      throw ScenarioError("sweep over " + std::string(sweep_name(sweep)) + " needs integer values");
  }
  if (ao.max_iterations < 1) throw ScenarioError("max_iterations must be at least 1");
}

ScenarioConfig sweep_point(const ExperimentSpec& spec, double value, std::uint64_t seed) {
  ScenarioConfig config = spec.base;
  config.seed = seed;
  switch (spec.sweep) {
    case SweepVariable::Vehicles:
      config.vehicles = as_count(value);
      break;
    case SweepVariable::TaskBits:
      config.fleet.bits_min = value * 1e3 * (1.0 - kTaskSpread);
      config.fleet.bits_max = value * 1e3 * (1.0 + kTaskSpread);
      break;
    case SweepVariable::Deadline:
      config.fleet.deadline = value;
      break;
    case SweepVariable::Subchannels:
      config.infra.num_subchannels = as_count(value);
      break;
  }
  config.infra.num_clusters = (config.vehicles + spec.cluster_size - 1) / spec.cluster_size;
  return config;
}

const ExperimentSummary* ExperimentResult::find(double value, Scheme scheme) const {
  for (const auto& s : summary)
    if (s.scheme == scheme && std::abs(s.value - value) <= 1e-12 * std::max(1.0, std::abs(value)))
      return &s;
  return nullptr;
}

ExperimentResult run_experiment(const ExperimentSpec& spec, Parallelism parallelism) {
  spec.validate();
  const std::size_t n_values = spec.values.size();
  const std::size_t n_seeds = spec.seeds.size();
  const std::size_t n_schemes = spec.schemes.size();
  const long cells = static_cast<long>(n_values * n_seeds);

  ExperimentResult out;
  out.rows.resize(n_values * n_seeds * n_schemes);

  auto run_cell = [&](long cell) {
    const std::size_t vi = cell / n_seeds;
    const std::size_t si = cell % n_seeds;
    const double value = spec.values[vi];
    const std::uint64_t seed = spec.seeds[si];
    ExperimentRow* rows = &out.rows[cell * n_schemes];
    for (std::size_t k = 0; k < n_schemes; ++k) {
      rows[k].value = value;
      rows[k].seed = seed;
      rows[k].scheme = spec.schemes[k];
    }
    try {
      const Scenario s = generate_scenario(sweep_point(spec, value, seed));
      for (std::size_t k = 0; k < n_schemes; ++k) {
        try {
          const auto r = run_scheme(s, spec.schemes[k], spec.ao);
          if (!r.report.feasibility.feasible) {
            rows[k].error = "infeasible: " + r.report.feasibility.violations.front().constraint;
            continue;
          }
          rows[k].efficiency = r.report.efficiency;
          rows[k].energy = r.report.total_energy;
          rows[k].mean_delay = r.report.mean_completion_time();
          rows[k].iterations = static_cast<int>(r.trace.iterations.size());
        } catch (const std::exception& e) {
          rows[k].error = e.what();
        }
      }
    } catch (const std::exception& e) {
      for (std::size_t k = 0; k < n_schemes; ++k) rows[k].error = e.what();
    }
  };

  if (parallelism == Parallelism::OpenMP) {
#pragma omp parallel for schedule(dynamic)
    for (long cell = 0; cell < cells; ++cell) run_cell(cell);
  } else {
    for (long cell = 0; cell < cells; ++cell) run_cell(cell);
  }

  std::stable_sort(out.rows.begin(), out.rows.end(), [](const auto& a, const auto& b) {
    if (a.value != b.value) return a.value < b.value;
    if (a.seed != b.seed) return a.seed < b.seed;
    return static_cast<int>(a.scheme) < static_cast<int>(b.scheme);
  });

  for (double value : spec.values) {
    for (Scheme scheme : spec.schemes) {
      ExperimentSummary sum;
      sum.value = value;
      sum.scheme = scheme;
      std::vector<double> xs;
      for (const auto& r : out.rows) {
        if (r.value != value || r.scheme != scheme) continue;
        if (r.error.empty()) xs.push_back(r.efficiency);
        else ++sum.failed;
      }
      sum.ok = static_cast<int>(xs.size());
      for (double x : xs) sum.mean += x;
      if (!xs.empty()) sum.mean /= xs.size();
      for (double x : xs) sum.stddev += (x - sum.mean) * (x - sum.mean);
      if (xs.size() > 1) sum.stddev = std::sqrt(sum.stddev / (xs.size() - 1));
      else sum.stddev = 0.0;
      out.summary.push_back(sum);
    }
  }
  return out;
}

}  // namespace stin
