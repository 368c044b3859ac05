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

// Command line front end: single runs, sweeps, scheme comparison, and the
// acceptance suite.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "stin/orchestrator.hpp"
#include "stin/report_io.hpp"
#include "stin/scenario_io.hpp"
#include "verify/acceptance.hpp"

namespace {

using namespace stin;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

std::ofstream open_out(const std::string& path) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream out(path);
  if (!out) throw ScenarioError("cannot write " + path);
  return out;
}

std::vector<Scheme> parse_scheme_list(const std::string& text) {
  if (text == "all") return all_schemes();
  std::vector<Scheme> schemes;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) schemes.push_back(parse_scheme(item));
  if (schemes.empty()) throw std::invalid_argument("no schemes given");
  return schemes;
}

struct RunArgs {
  std::string scenario;
  std::string scheme = "jtora";
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string matching_out;
  std::string trace_out;
  bool exact_rates = false;
};

int cmd_run(const RunArgs& a) {
  ScenarioConfig config = load_scenario_config(a.scenario);
  if (a.seed) config.seed = *a.seed;
  const Scenario s = generate_scenario(config);
  AoOptions options;
  if (a.exact_rates) options.rate_model = RateModel::Exact;
  const auto result = run_scheme(s, parse_scheme(a.scheme), options);

  if (!a.out.empty()) {
    auto out = open_out(a.out);
    write_vehicle_report_csv(out, result.report, result.state);
  }
  if (!a.matching_out.empty()) {
    auto out = open_out(a.matching_out);
    write_matching_csv(out, result.state);
  }
  if (!a.trace_out.empty()) {
    auto out = open_out(a.trace_out);
    write_trace_csv(out, result.trace);
  }
  const auto& r = result.report;
  std::printf("scheme=%s efficiency=%s bits/J energy=%s J iterations=%zu feasible=%s\n",
              a.scheme.c_str(), format_number(r.efficiency).c_str(),
              format_number(r.total_energy).c_str(), result.trace.iterations.size(),
              r.feasibility.feasible ? "yes" : "no");
  for (const auto& v : r.feasibility.violations)
    std::fprintf(stderr, "violation %s index %d margin %s\n", v.constraint.c_str(), v.index,
                 format_number(v.margin).c_str());
  return r.feasibility.feasible ? 0 : kExitFailure;
}

struct SweepArgs {
  std::string spec;
  std::string out;
  bool serial = false;
};

int cmd_sweep(const SweepArgs& a) {
  ExperimentSpec spec = load_experiment_spec(a.spec);
  const auto result = run_experiment(spec, a.serial ? Parallelism::Serial : Parallelism::OpenMP);
  std::filesystem::create_directories(a.out);
  const std::filesystem::path dir(a.out);
  {
    auto out = open_out((dir / "rows.csv").string());
    write_experiment_rows_csv(out, spec, result);
  }
  {
    auto out = open_out((dir / "summary.csv").string());
    write_experiment_summary_csv(out, spec, result);
  }
  if (spec.plot) {
    auto out = open_out((dir / "efficiency.svg").string());
    write_experiment_svg(out, spec, result);
  }
  int failed = 0;
  for (const auto& r : result.rows) {
    if (r.error.empty()) continue;
    ++failed;
    std::fprintf(stderr, "%s=%s seed=%llu scheme=%s: %s\n", std::string(sweep_name(spec.sweep)).c_str(),
                 format_number(r.value).c_str(), static_cast<unsigned long long>(r.seed),
                 std::string(scheme_name(r.scheme)).c_str(), r.error.c_str());
  }
  for (const auto& s : result.summary)
    std::printf("%s=%s %-15s mean=%s sd=%s ok=%d failed=%d\n",
                std::string(sweep_name(spec.sweep)).c_str(), format_number(s.value).c_str(),
                std::string(scheme_name(s.scheme)).c_str(), format_number(s.mean).c_str(),
                format_number(s.stddev).c_str(), s.ok, s.failed);
  return failed == 0 ? 0 : kExitFailure;
}

struct CompareArgs {
  std::string scenario;
  std::string schemes = "all";
  int seeds = 20;
  std::string out;
};

int cmd_compare(const CompareArgs& a) {
  const ScenarioConfig config = load_scenario_config(a.scenario);
  ExperimentSpec spec;
  spec.sweep = SweepVariable::Vehicles;
  spec.values = {static_cast<double>(config.vehicles)};
  spec.schemes = parse_scheme_list(a.schemes);
  for (int i = 0; i < a.seeds; ++i) spec.seeds.push_back(config.seed + i);
  spec.base = config;
  spec.cluster_size = (config.vehicles + config.infra.num_clusters - 1) / config.infra.num_clusters;
  spec.plot = false;
  const auto result = run_experiment(spec);
  if (!a.out.empty()) {
    auto out = open_out(a.out);
    write_experiment_rows_csv(out, spec, result);
  }
  int failed = 0;
  for (const auto& s : result.summary) {
    failed += s.failed;
    std::printf("%-15s mean=%s sd=%s ok=%d failed=%d\n", std::string(scheme_name(s.scheme)).c_str(),
                format_number(s.mean).c_str(), format_number(s.stddev).c_str(), s.ok, s.failed);
  }
  return failed == 0 ? 0 : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy-efficient task offloading and resource allocation for space-terrestrial vehicular networks"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Solve one scenario with one scheme");
  run_cmd->add_option("--scenario", run.scenario, "Scenario JSON")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--scheme", run.scheme, "jtora, priority-local, priority-edge, random, one-to-one, water-filling, equal-power");
  run_cmd->add_option("--seed", run.seed, "Override the scenario seed");
  run_cmd->add_option("--out", run.out, "Per-vehicle report CSV");
  run_cmd->add_option("--matching-out", run.matching_out, "Sub-channel assignment CSV");
  run_cmd->add_option("--trace-out", run.trace_out, "Alternating-optimization trace CSV");
  run_cmd->add_flag("--exact-rates", run.exact_rates, "Report with exact NOMA rates");

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a parameter sweep");
  sweep_cmd->add_option("--spec", sweep.spec, "Sweep JSON")->required()->check(CLI::ExistingFile);
  sweep_cmd->add_option("--out", sweep.out, "Output directory")->required();
  sweep_cmd->add_flag("--serial", sweep.serial, "Run cells on one thread");

  CompareArgs compare;
  auto* compare_cmd = app.add_subcommand("compare", "Compare schemes on one configuration");
  compare_cmd->add_option("--scenario", compare.scenario, "Scenario JSON")->required()->check(CLI::ExistingFile);
  compare_cmd->add_option("--schemes", compare.schemes, "\"all\" or a comma-separated list");
  compare_cmd->add_option("--seeds", compare.seeds, "Number of seeds, counting up from the scenario seed")
      ->check(CLI::PositiveNumber);
  compare_cmd->add_option("--out", compare.out, "Per-seed rows CSV");

  stin::verify::AcceptanceOptions verify_opts;
  auto* verify_cmd = app.add_subcommand("verify", "Run the acceptance checks");
  verify_cmd->add_option("--only", verify_opts.only, "Run a single criterion (1-8)");
  verify_cmd->add_option("--config-dir", verify_opts.config_dir, "Directory with scenario_default.json and sweeps/");
  verify_cmd->add_option("--cli", verify_opts.cli_path, "Also check determinism by running this binary twice");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) return cmd_run(run);
    if (*sweep_cmd) return cmd_sweep(sweep);
    if (*compare_cmd) return cmd_compare(compare);
    if (*verify_cmd) return stin::verify::run_acceptance(verify_opts, std::cout) ? 0 : kExitFailure;
  } catch (const ScenarioError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitFailure;
  }
  return 0;
}
