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

#include "stin/report_io.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>

namespace stin {
namespace {

constexpr std::array<const char*, 7> kColors{"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                             "#ff7f0e", "#8c564b", "#17becf"};

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string format_number(double x) {
  char buf[40];
  if (x == 0.0) x = 0.0;  // no "-0" in output
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

void write_vehicle_report_csv(std::ostream& out, const EfficiencyReport& report,
                              const AllocationState& state) {
  out << "vehicle,theta,zeta,alpha,power_w,noma_rate_bps,sat_rate_bps,"
         "t_local_s,t_rsu_s,t_relay_s,t_bs_s,t_uplink_sat_s,t_sat_s,completion_s,"
         "e_local_j,e_rsu_j,e_relay_j,e_bs_j,e_uplink_sat_j,e_sat_j,energy_j\n";
  for (const auto& v : report.vehicles) {
    const int m = v.vehicle;
    out << m;
    for (double x : {state.theta[m], state.zeta[m], state.alpha[m], state.power[m], v.noma_rate,
                     v.sat_rate, v.t_local, v.t_rsu, v.t_relay, v.t_bs, v.t_uplink_sat, v.t_sat,
                     v.completion_time(), v.e_local, v.e_rsu, v.e_relay, v.e_bs, v.e_uplink_sat,
                     v.e_sat, v.energy})
      out << ',' << format_number(x);
    out << '\n';
  }
  out << "# total_bits," << format_number(report.total_bits) << '\n';
  out << "# total_energy_j," << format_number(report.total_energy) << '\n';
  out << "# efficiency_bits_per_j," << format_number(report.efficiency) << '\n';
  out << "# feasible," << (report.feasibility.feasible ? "true" : "false") << '\n';
  for (const auto& viol : report.feasibility.violations)
    out << "# violation," << viol.constraint << ',' << viol.index << ','
        << format_number(viol.margin) << '\n';
}

void write_matching_csv(std::ostream& out, const AllocationState& state) {
  out << "subchannel,cluster,carrying\n";
  for (std::size_t f = 0; f < state.owner.size(); ++f)
    out << f << ',' << state.owner[f] << ',' << int(state.carrying[f]) << '\n';
}

void write_trace_csv(std::ostream& out, const AoTrace& trace) {
  out << "k,efficiency,energy_j,delta_task,delta_power,delta_matching,delta_bandwidth,"
         "inner_power,inner_bandwidth,matching_accepted\n";
  for (const auto& it : trace.iterations) {
    out << it.k;
    for (double x : {it.efficiency, it.energy, it.delta_task, it.delta_power, it.delta_matching,
                     it.delta_bandwidth})
      out << ',' << format_number(x);
    out << ',' << it.inner_power << ',' << it.inner_bandwidth << ','
        << (it.matching_accepted ? 1 : 0) << '\n';
  }
}

void write_experiment_rows_csv(std::ostream& out, const ExperimentSpec& spec,
                               const ExperimentResult& result) {
  out << sweep_name(spec.sweep) << ",seed,scheme,efficiency_bits_per_j,energy_j,mean_delay_s,"
                                   "iterations,error\n";
  for (const auto& r : result.rows) {
    out << format_number(r.value) << ',' << r.seed << ',' << scheme_name(r.scheme) << ','
        << format_number(r.efficiency) << ',' << format_number(r.energy) << ','
        << format_number(r.mean_delay) << ',' << r.iterations << ',' << csv_escape(r.error) << '\n';
  }
}

void write_experiment_summary_csv(std::ostream& out, const ExperimentSpec& spec,
                                  const ExperimentResult& result) {
  out << sweep_name(spec.sweep) << ",scheme,mean_efficiency,stddev,ok,failed\n";
  for (const auto& s : result.summary) {
    out << format_number(s.value) << ',' << scheme_name(s.scheme) << ',' << format_number(s.mean)
        << ',' << format_number(s.stddev) << ',' << s.ok << ',' << s.failed << '\n';
  }
}

void write_experiment_svg(std::ostream& out, const ExperimentSpec& spec,
                          const ExperimentResult& result) {
  constexpr double width = 640, height = 420, left = 80, right = 170, top = 30, bottom = 60;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  double x_lo = *std::min_element(spec.values.begin(), spec.values.end());
  double x_hi = *std::max_element(spec.values.begin(), spec.values.end());
  if (x_hi == x_lo) x_hi = x_lo + 1.0;
  double y_hi = 0.0;
  for (const auto& s : result.summary) y_hi = std::max(y_hi, s.mean);
  if (y_hi <= 0.0) y_hi = 1.0;
  y_hi *= 1.05;

  auto px = [&](double x) { return left + (x - x_lo) / (x_hi - x_lo) * plot_w; };
  auto py = [&](double y) { return top + plot_h - y / y_hi * plot_h; };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\"" << left + plot_w
      << "\" y2=\"" << top + plot_h << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\""
      << top + plot_h << "\" stroke=\"black\"/>\n";
  for (double v : spec.values) {
    out << "<text x=\"" << format_number(px(v)) << "\" y=\"" << top + plot_h + 18
        << "\" text-anchor=\"middle\">" << format_number(v) << "</text>\n";
  }
  for (int i = 0; i <= 4; ++i) {
    const double y = y_hi * i / 4;
    out << "<text x=\"" << left - 6 << "\" y=\"" << format_number(py(y) + 4)
        << "\" text-anchor=\"end\">" << format_number(y / 1e6) << "</text>\n";
  }
  out << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 15
      << "\" text-anchor=\"middle\">" << sweep_name(spec.sweep) << "</text>\n";
  out << "<text x=\"20\" y=\"" << top + plot_h / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
      << top + plot_h / 2 << ")\">efficiency (Mbit/J)</text>\n";

  for (std::size_t k = 0; k < spec.schemes.size(); ++k) {
    const Scheme scheme = spec.schemes[k];
    const char* color = kColors[k % kColors.size()];
    std::string points;
    for (double v : spec.values) {
      const auto* s = result.find(v, scheme);
      if (!s || s->ok == 0) continue;
      points += format_number(px(v)) + "," + format_number(py(s->mean)) + " ";
    }
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\""
        << points << "\"/>\n";
    const double ly = top + 10 + 18.0 * k;
    out << "<line x1=\"" << left + plot_w + 15 << "\" y1=\"" << ly << "\" x2=\""
        << left + plot_w + 40 << "\" y2=\"" << ly << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << left + plot_w + 45 << "\" y=\"" << ly + 4 << "\">" << scheme_name(scheme)
        << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace stin
