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

#include "verify/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <sstream>

#include "stin/orchestrator.hpp"
#include "stin/report_io.hpp"
#include "stin/scenario_io.hpp"
#include "verify/oracles.hpp"

#ifndef STIN_CONFIG_DIR
#define STIN_CONFIG_DIR "configs"
#endif

namespace stin::verify {
namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// ------------------------------------------------------------ 1: matching

Outcome stability_suite() {
  const auto t0 = Clock::now();
  RngStream rng(20240601, "acceptance-stability");
  int blocking = 0, over_budget = 0, oracle_disagree = 0;
  long max_ratio_num = 0, max_ratio_den = 1;
  for (int i = 0; i < 1000; ++i) {
    const int n = 2 + static_cast<int>(rng.below(4));
    const int q = 1 + static_cast<int>(rng.below(4));
    const int f = 2 + static_cast<int>(rng.below(std::min(7, n * q - 1)));
    const auto prefs = random_preferences(n, f, rng);
    RngStream stream(i, "acceptance-vsma");
    const auto r = run_vsma(prefs, q, stream);
    const auto report = check_stability(prefs, r.matching, q);
    const auto brute = brute_force_blocking(prefs, r.matching, q);
    blocking += !report.stable;
    oracle_disagree += report.blocking.size() != brute.size();
    over_budget += r.proposals > long(n) * f;
    if (r.proposals * max_ratio_den > max_ratio_num * long(n) * f) {
      max_ratio_num = r.proposals;
      max_ratio_den = long(n) * f;
    }
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  Outcome o;
  o.pass = blocking == 0 && oracle_disagree == 0 && over_budget == 0 && secs < 10.0;
  o.detail = "unstable=" + std::to_string(blocking) + " oracle_mismatch=" +
             std::to_string(oracle_disagree) + " proposals>N*F=" + std::to_string(over_budget) +
             fmt(" max proposals/(N*F)=%.3f", double(max_ratio_num) / max_ratio_den) +
             fmt(" time=%.2fs (limit 10s)", secs);
  return o;
}

// ------------------------------------------------------------ 2: P2 / P3

Outcome fractional_suite() {
  const auto t0 = Clock::now();
  double worst_bw = 0.0, worst_pw = 0.0;
  int bw_infeasible = 0;
  int skipped = 0;
  // Scenarios without any feasible state are skipped and counted.
  auto draw = [&](int vehicles, std::uint64_t seed, const char* name) {
    for (;; ++seed) {
      Scenario s = small_scenario(vehicles, seed);
      RngStream rng(seed, name);
      try {
        auto state = random_small_state(s, rng);
        return std::make_pair(std::move(s), std::move(state));
      } catch (const InfeasibleError&) {
        ++skipped;
      }
    }
  };
  for (int i = 0; i < 100; ++i) {
    const auto [s, state] = draw(3, 1000 + 10 * i, "acceptance-p2");
    AllocationState solved = state;
    solved.alpha = solve_bandwidth_allocation(s, state).values;
    const auto lower = bandwidth_lower_bounds(s, state);
    for (int m = 0; m < 3; ++m) bw_infeasible += solved.alpha[m] < lower[m] * (1 - 1e-9);
    const double grid = grid_bandwidth_efficiency(s, state, 0.01);
    const double got = efficiency(s, solved);
    worst_bw = std::max(worst_bw, (grid - got) / grid);
  }
  for (int i = 0; i < 100; ++i) {
    const auto [s, state] = draw(2, 5000 + 10 * i, "acceptance-p3");
    AllocationState solved = state;
    solved.power = solve_power_allocation(s, state).values;
    const double grid = grid_power_efficiency(s, state, 101);
    const double got = efficiency(s, solved);
    worst_pw = std::max(worst_pw, (grid - got) / grid);
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  Outcome o;
  o.pass = worst_bw <= 0.01 && worst_pw <= 0.01 && bw_infeasible == 0 && secs < 60.0;
  o.detail = fmt("worst P2 gap=%.3g", worst_bw) + fmt(" worst P3 gap=%.3g (limit 0.01)", worst_pw) +
             " below_lower_bound=" + std::to_string(bw_infeasible) +
             " skipped_scenarios=" + std::to_string(skipped) +
             fmt(" time=%.2fs (limit 60s)", secs);
  return o;
}

// ------------------------------------------------------------ 3: P1

Outcome task_suite() {
  const auto t0 = Clock::now();
  constexpr double kStep = 1e-3;
  RngStream rng(7, "acceptance-p1");
  int misses = 0, infeasible = 0;
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto problem = random_task_problem(rng);
    const auto point = solve_task_vertex(problem);
    const auto grid = grid_task(problem, kStep);
    const auto lattice = grid_task(problem, kStep, false);
    if (lattice.feasible && task_energy(problem.cost, point) > lattice.energy + 1e-12) ++misses;
    if (!task_feasible(problem.region, point, 1e-9)) ++infeasible;
    const double cell = kStep * (std::abs(problem.cost.bs_slope) + std::abs(problem.cost.sat_slope));
    const double diff = task_energy(problem.cost, point) - grid.energy;
    // The vertex may beat the grid by up to a cell, never lose to it.
    if (!grid.feasible || diff > 1e-12 || -diff > cell + 1e-12) ++misses;
    worst = std::max(worst, std::abs(diff) / cell);
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  Outcome o;
  o.pass = misses == 0 && infeasible == 0 && secs < 30.0;
  o.detail = "outside_one_cell=" + std::to_string(misses) + " infeasible=" + std::to_string(infeasible) +
             fmt(" worst |gap|/cell=%.3f", worst) + fmt(" time=%.2fs (limit 30s)", secs);
  return o;
}

// ------------------------------------------------------------ 4: low-SNR rate

Outcome low_snr_suite() {
  RngStream rng(11, "acceptance-low-snr");
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto x = random_low_snr_instance(rng, 0.01);
    for (int k = 0; k < x.state.members(); ++k) {
      const double exact = noma_avg_rate_exact(x.state, x.held, x.powers, k, x.stay[k], 400);
      const double approx = noma_avg_rate_approx(x.state, x.held, x.powers, k, x.stay[k], 400);
      worst = std::max(worst, std::abs(approx - exact) / exact);
    }
  }
  return {worst < 0.01, fmt("worst relative gap=%.4g (limit 0.01) over 100 states", worst)};
}

// ------------------------------------------------------------ 5: AO behavior

struct AoStats {
  int non_monotone = 0;
  int unconverged = 0;
  int infeasible = 0;
  double mean_iterations = 0;
  double worst_drop = 0;
};

AoStats ao_stats(const ScenarioConfig& base, int subchannels) {
  AoStats st;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    ScenarioConfig c = base;
    c.vehicles = 20;
    c.infra.num_clusters = 4;
    c.infra.num_subchannels = subchannels;
    c.seed = seed;
    const auto r = run_jtora(generate_scenario(c));
    const auto& its = r.trace.iterations;
    for (std::size_t k = 1; k < its.size(); ++k) {
      const double drop = (its[k - 1].efficiency - its[k].efficiency) / its[k - 1].efficiency;
      st.worst_drop = std::max(st.worst_drop, drop);
      if (drop > 1e-9) ++st.non_monotone;
    }
    st.unconverged += !r.trace.converged;
    st.infeasible += !r.report.feasibility.feasible;
    st.mean_iterations += static_cast<double>(its.size()) / 20.0;
  }
  return st;
}

Outcome ao_suite(const std::string& dir) {
  const auto base = load_scenario_config(dir + "/scenario_default.json");
  const auto f6 = ao_stats(base, 6);
  const auto f4 = ao_stats(base, 4);
  const auto f8 = ao_stats(base, 8);
  Outcome o;
  o.pass = f6.non_monotone == 0 && f6.unconverged == 0 && f6.infeasible == 0 &&
           f8.mean_iterations <= f4.mean_iterations;
  o.detail = "F=6: non_monotone=" + std::to_string(f6.non_monotone) + fmt(" worst_drop=%.3g", f6.worst_drop) +
             " unconverged=" + std::to_string(f6.unconverged) + " infeasible=" +
             std::to_string(f6.infeasible) + fmt(" mean_iters=%.2f;", f6.mean_iterations) +
             fmt(" mean_iters F=4 %.2f", f4.mean_iterations) + fmt(" F=8 %.2f (need F=8 <= F=4)", f8.mean_iterations);
  return o;
}

// ------------------------------------------------------------ 6, 7: sweeps

struct SweepRun {
  std::string name;
  ExperimentSpec spec;
  ExperimentResult result;
};

struct SweepCache {
  std::vector<SweepRun> runs;
  double seconds = 0;
  std::string error;
};

const SweepCache& sweeps(const std::string& dir) {
  static std::map<std::string, SweepCache> cache;
  auto it = cache.find(dir);
  if (it != cache.end()) return it->second;
  SweepCache c;
  const auto t0 = Clock::now();
  try {
    for (const char* name : {"vehicles", "task_size", "deadline", "subchannels", "vehicles_3500kb",
                             "vehicles_4000kb"}) {
      SweepRun run;
      run.name = name;
      run.spec = load_experiment_spec(dir + "/sweeps/" + name + ".json");
      run.result = run_experiment(run.spec);
      c.runs.push_back(std::move(run));
    }
  } catch (const std::exception& e) {
    c.error = e.what();
  }
  c.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return cache.emplace(dir, std::move(c)).first->second;
}

const SweepRun* find_run(const SweepCache& c, const std::string& name) {
  for (const auto& r : c.runs)
    if (r.name == name) return &r;
  return nullptr;
}

std::vector<double> jtora_means(const SweepRun& run, Scheme scheme = Scheme::Jtora) {
  std::vector<double> out;
  for (double v : run.spec.values) {
    const auto* s = run.result.find(v, scheme);
    out.push_back(s && s->failed == 0 ? s->mean : std::nan(""));
  }
  return out;
}

std::string series(const std::vector<double>& xs) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? " " : "") + fmt("%.4g", xs[i]);
  return out + "]";
}

// strict: each step must drop; otherwise each step must not drop
bool monotone(const std::vector<double>& xs, bool decreasing, bool strict) {
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (std::isnan(xs[i]) || std::isnan(xs[i - 1])) return false;
    const double d = decreasing ? xs[i - 1] - xs[i] : xs[i] - xs[i - 1];
    if (strict ? !(d > 0.0) : d < 0.0) return false;
  }
  return true;
}

Outcome trend_suite(const std::string& dir) {
  const auto& c = sweeps(dir);
  if (!c.error.empty()) return {false, "sweep failed: " + c.error};
  Outcome o;
  o.pass = true;
  std::vector<std::string> parts;
  auto check = [&](const std::string& label, bool ok, const std::vector<double>& xs) {
    o.pass = o.pass && ok;
    parts.push_back(label + (ok ? " ok " : " FAILED ") + series(xs));
  };
  // Decreasing in M is claimed for every scheme except edge-first
  // computing, which is described as rising with M.
  const auto* veh = find_run(c, "vehicles");
  std::string rising;
  for (Scheme sc : veh->spec.schemes) {
    if (sc == Scheme::PriorityEdge || monotone(jtora_means(*veh, sc), true, true)) continue;
    rising += std::string(rising.empty() ? "" : ",") + std::string(scheme_name(sc)) +
              series(jtora_means(*veh, sc));
  }
  check("M decreasing(all but priority-edge" + (rising.empty() ? ")" : "; not: " + rising + ")"),
        rising.empty(), jtora_means(*veh));
  check("task size decreasing", monotone(jtora_means(*find_run(c, "task_size")), true, true),
        jtora_means(*find_run(c, "task_size")));
  check("deadline non-decreasing", monotone(jtora_means(*find_run(c, "deadline")), false, false),
        jtora_means(*find_run(c, "deadline")));
  check("F decreasing", monotone(jtora_means(*find_run(c, "subchannels")), true, true),
        jtora_means(*find_run(c, "subchannels")));
  const auto a = jtora_means(*find_run(c, "vehicles_3500kb"));
  const auto b = jtora_means(*find_run(c, "vehicles_4000kb"));
  bool above = a.size() == b.size();
  for (std::size_t i = 0; above && i < a.size(); ++i) above = a[i] > b[i];
  check("3500kb > 4000kb", above, a);
  parts.push_back(fmt("time=%.1fs (limit 600s)", c.seconds));
  o.pass = o.pass && c.seconds < 600.0;
  for (const auto& p : parts) o.detail += (o.detail.empty() ? "" : "; ") + p;
  return o;
}

Outcome dominance_suite(const std::string& dir) {
  const auto& c = sweeps(dir);
  if (!c.error.empty()) return {false, "sweep failed: " + c.error};
  int mean_losses = 0, points = 0;
  double worst_share = 1.0;
  std::string worst_where;
  for (const auto& run : c.runs) {
    // (value, seed) -> JTORA efficiency
    std::map<std::pair<double, std::uint64_t>, double> jt;
    for (const auto& r : run.result.rows)
      if (r.scheme == Scheme::Jtora) jt[{r.value, r.seed}] = r.error.empty() ? r.efficiency : 0.0;
    for (double v : run.spec.values) {
      const auto* j = run.result.find(v, Scheme::Jtora);
      for (Scheme sc : run.spec.schemes) {
        if (sc == Scheme::Jtora) continue;
        ++points;
        const auto* b = run.result.find(v, sc);
        if (!j || !b || j->mean < b->mean) ++mean_losses;
        int wins = 0, total = 0;
        for (const auto& r : run.result.rows) {
          if (r.scheme != sc || r.value != v) continue;
          ++total;
          const double base = r.error.empty() ? r.efficiency : 0.0;
          wins += jt[{r.value, r.seed}] >= base;
        }
        const double share = total ? double(wins) / total : 0.0;
        if (share < worst_share) {
          worst_share = share;
          worst_where = run.name + "=" + fmt("%g", v) + " vs " + std::string(scheme_name(sc));
        }
      }
    }
  }
  Outcome o;
  o.pass = mean_losses == 0 && worst_share >= 0.9;
  o.detail = "mean losses=" + std::to_string(mean_losses) + "/" + std::to_string(points) +
             fmt(" worst per-seed win share=%.2f (limit 0.90)", worst_share) +
             (worst_where.empty() ? "" : " at " + worst_where);
  return o;
}

// ------------------------------------------------------------ 8: determinism

std::string render_run(const Scenario& s, Scheme scheme) {
  std::ostringstream out;
  const auto r = run_scheme(s, scheme);
  write_vehicle_report_csv(out, r.report, r.state);
  write_matching_csv(out, r.state);
  write_trace_csv(out, r.trace);
  return out.str();
}

std::string render_sweep(ExperimentSpec spec, Parallelism p) {
  std::ostringstream out;
  const auto result = run_experiment(spec, p);
  write_experiment_rows_csv(out, spec, result);
  write_experiment_summary_csv(out, spec, result);
  return out.str();
}

std::string slurp(const std::filesystem::path& p) {
  try {
    return read_text_file(p.string());
  } catch (const std::exception&) {
    return "<missing>";
  }
}

Outcome determinism_suite(const std::string& dir, const std::string& cli) {
  int mismatches = 0, checks = 0;
  const auto config = load_scenario_config(dir + "/scenario_default.json");
  for (Scheme sc : all_schemes()) {
    const Scenario s1 = generate_scenario(config);
    const Scenario s2 = generate_scenario(config);
    ++checks;
    mismatches += render_run(s1, sc) != render_run(s2, sc);
  }
  auto spec = load_experiment_spec(dir + "/sweeps/subchannels.json");
  spec.seeds = {1, 2, 3};
  const auto omp1 = render_sweep(spec, Parallelism::OpenMP);
  const auto omp2 = render_sweep(spec, Parallelism::OpenMP);
  const auto serial = render_sweep(spec, Parallelism::Serial);
  checks += 2;
  mismatches += (omp1 != omp2) + (omp1 != serial);

  if (!cli.empty()) {
    namespace fs = std::filesystem;
    const fs::path tmp = fs::temp_directory_path() / "stin-determinism";
    fs::create_directories(tmp);
    for (int i = 0; i < 2; ++i) {
      const std::string cmd = "\"" + cli + "\" run --scenario \"" + dir +
                              "/scenario_default.json\" --out \"" + (tmp / ("run" + std::to_string(i) + ".csv")).string() +
                              "\" --trace-out \"" + (tmp / ("trace" + std::to_string(i) + ".csv")).string() +
                              "\" > /dev/null 2>&1";
      if (std::system(cmd.c_str()) != 0) ++mismatches;
    }
    checks += 2;
    mismatches += slurp(tmp / "run0.csv") != slurp(tmp / "run1.csv") || slurp(tmp / "run0.csv") == "<missing>";
    mismatches += slurp(tmp / "trace0.csv") != slurp(tmp / "trace1.csv");
    fs::remove_all(tmp);
  }
  return {mismatches == 0, "identical outputs " + std::to_string(checks - mismatches) + "/" +
                               std::to_string(checks) + (cli.empty() ? " (in-process only)" : " (incl. CLI)")};
}

}  // namespace

bool run_acceptance(const AcceptanceOptions& options, std::ostream& out) {
  const std::string dir = options.config_dir.empty() ? STIN_CONFIG_DIR : options.config_dir;
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "matching stability", stability_suite},
      {2, "bandwidth/power oracle", fractional_suite},
      {3, "task split oracle", task_suite},
      {4, "low-SNR rate model", low_snr_suite},
      {5, "alternating optimization", [&] { return ao_suite(dir); }},
      {6, "sweep trends", [&] { return trend_suite(dir); }},
      {7, "dominance over baselines", [&] { return dominance_suite(dir); }},
      {8, "determinism", [&] { return determinism_suite(dir, options.cli_path); }},
  };
  bool all = true;
  for (const auto& c : criteria) {
    if (options.only != 0 && options.only != c.id) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all = all && o.pass;
    out << (o.pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << ": " << o.detail << '\n';
    out.flush();
  }
  return all;
}

}  // namespace stin::verify
