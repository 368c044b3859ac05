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

#include "stin/scenario_io.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <json.hpp>

#include "stin/units.hpp"

namespace stin {
namespace {

using nlohmann::json;

double identity(double x) { return x; }
double from_kb(double x) { return kilobits(x); }

struct Field {
  std::function<void(const json&)> set;
};

/// Applies known keys of `obj` and rejects the rest.
class ObjectReader {
 public:
  ObjectReader(const json& obj, std::string where) : obj_(obj), where_(std::move(where)) {
    if (!obj_.is_object()) throw ScenarioError(where_ + " must be a JSON object");
  }

  void number(const std::string& key, double& out, double (*convert)(double) = identity) {
    fields_[key] = [&out, convert, key, this](const json& v) {
      if (!v.is_number()) throw ScenarioError(where_ + "." + key + " must be a number");
      out = convert(v.get<double>());
    };
  }
  void integer(const std::string& key, int& out) {
    fields_[key] = [&out, key, this](const json& v) {
      if (!v.is_number_integer()) throw ScenarioError(where_ + "." + key + " must be an integer");
      out = v.get<int>();
    };
  }
  void custom(const std::string& key, std::function<void(const json&)> f) { fields_[key] = std::move(f); }

  void apply() {
    for (const auto& [key, value] : obj_.items()) {
      auto it = fields_.find(key);
      if (it == fields_.end()) throw ScenarioError("unknown key " + where_ + "." + key);
      it->second(value);
    }
  }

 private:
  const json& obj_;
  std::string where_;
  std::map<std::string, std::function<void(const json&)>> fields_;
};

void read_infrastructure(const json& obj, InfrastructureParams& p) {
  ObjectReader r(obj, "infrastructure");
  r.number("rsu_radius_m", p.rsu_radius);
  r.number("bs_cpu_hz", p.bs_cpu);
  r.number("sat_cpu_hz", p.sat_cpu);
  r.number("bs_energy_coeff", p.bs_energy_coeff);
  r.number("sat_energy_coeff", p.sat_energy_coeff);
  r.number("rsu_tx_power_w", p.rsu_tx_power);
  r.number("rsu_tx_power_dbm", p.rsu_tx_power, dbm_to_watts);
  r.number("rsu_bs_bandwidth_hz", p.rsu_bs_bandwidth);
  r.number("sat_distance_m", p.sat_distance);
  r.number("noise_sat_dbm", p.noise_sat, dbm_to_watts);
  r.number("noise_terrestrial_dbm", p.noise_terrestrial, dbm_to_watts);
  r.number("pathloss_exponent", p.pathloss_exponent);
  r.number("thz_bandwidth_hz", p.thz_bandwidth);
  r.number("thz_carrier_hz", p.thz_carrier);
  r.number("molecular_absorption_per_m", p.molecular_absorption);
  r.number("sat_antenna_gain_dbi", p.sat_antenna_gain, db_to_linear);
  r.number("vehicle_antenna_gain_dbi", p.vehicle_antenna_gain, db_to_linear);
  r.number("thz_small_scale", p.thz_small_scale);
  r.number("thz_ref_gain", p.thz_ref_gain);
  r.number("terrestrial_ref_gain", p.terrestrial_ref_gain);
  r.number("noma_total_bandwidth_hz", p.noma_total_bandwidth);
  r.number("p_max_dbm", p.p_max, dbm_to_watts);
  r.number("p_max_w", p.p_max);
  r.integer("subchannels", p.num_subchannels);
  r.integer("clusters", p.num_clusters);
  r.integer("cluster_cap", p.cluster_cap);
  r.integer("subchannel_quota", p.subchannel_quota);
  r.integer("bs_antennas", p.bs_antennas);
  r.integer("rsu_antennas", p.rsu_antennas);
  r.integer("relay_streams", p.relay_streams);
  r.number("relay_path_gain", p.relay_path_gain);
  r.integer("relay_realizations", p.relay_realizations);
  r.apply();
}

void read_fleet(const json& obj, FleetTemplate& f) {
  ObjectReader r(obj, "fleet");
  r.number("task_size_min_kb", f.bits_min, from_kb);
  r.number("task_size_max_kb", f.bits_max, from_kb);
  r.number("cycles_per_bit", f.cycles_per_bit);
  r.number("deadline_s", f.deadline);
  r.number("speed_min_mps", f.speed_min);
  r.number("speed_max_mps", f.speed_max);
  r.number("offset_min_m", f.offset_min);
  r.number("offset_max_m", f.offset_max);
  r.number("cpu_freq_hz", f.cpu_freq);
  r.number("local_energy_coeff", f.local_energy_coeff);
  r.custom("tx_power_dbm", [&f](const json& v) {
    if (!v.is_number()) throw ScenarioError("fleet.tx_power_dbm must be a number");
    f.tx_power = dbm_to_watts(v.get<double>());
  });
  r.custom("tx_power_w", [&f](const json& v) {
    if (!v.is_number()) throw ScenarioError("fleet.tx_power_w must be a number");
    f.tx_power = v.get<double>();
  });
  r.apply();
}

void read_options(const json& obj, ScenarioOptions& o) {
  ObjectReader r(obj, "options");
  r.integer("quadrature_panels", o.quadrature_panels);
  r.custom("relay_rate_bps", [&o](const json& v) {
    if (!v.is_number()) throw ScenarioError("options.relay_rate_bps must be a number");
    o.relay_rate = v.get<double>();
  });
  r.apply();
}

std::uint64_t read_seed(const json& v, const std::string& where) {
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw ScenarioError(where + " must be a non-negative integer");
  return v.get<std::uint64_t>();
}

ScenarioConfig read_scenario(const json& obj) {
  ScenarioConfig c;
  ObjectReader r(obj, "scenario");
  r.custom("seed", [&c](const json& v) { c.seed = read_seed(v, "scenario.seed"); });
  r.integer("vehicles", c.vehicles);
  r.custom("clustering", [&c](const json& v) {
    const auto name = v.is_string() ? v.get<std::string>() : std::string();
    if (name == "sorted") c.clustering = Clustering::SortedRoundRobin;
    else if (name == "random") c.clustering = Clustering::Random;
    else throw ScenarioError("scenario.clustering must be \"sorted\" or \"random\"");
  });
  r.custom("infrastructure", [&c](const json& v) { read_infrastructure(v, c.infra); });
  r.custom("fleet", [&c](const json& v) { read_fleet(v, c.fleet); });
  r.custom("options", [&c](const json& v) { read_options(v, c.options); });
  r.apply();
  return c;
}

void read_ao(const json& obj, AoOptions& ao) {
  ObjectReader r(obj, "ao");
  r.integer("max_iterations", ao.max_iterations);
  r.number("tolerance", ao.tolerance);
  r.custom("rate_model", [&ao](const json& v) {
    const auto name = v.is_string() ? v.get<std::string>() : std::string();
    if (name == "approx") ao.rate_model = RateModel::Approx;
    else if (name == "exact") ao.rate_model = RateModel::Exact;
    else throw ScenarioError("ao.rate_model must be \"approx\" or \"exact\"");
  });
  r.apply();
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ScenarioError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ScenarioConfig parse_scenario_config(const std::string& json_text) {
  return read_scenario(parse(json_text));
}

ScenarioConfig load_scenario_config(const std::string& path) {
  return parse_scenario_config(read_text_file(path));
}

ExperimentSpec parse_experiment_spec(const std::string& json_text) {
  const json doc = parse(json_text);
  ExperimentSpec spec;
  ObjectReader r(doc, "sweep spec");
  r.custom("sweep", [&spec](const json& v) {
    if (!v.is_string()) throw ScenarioError("sweep must be a string");
    try {
      spec.sweep = parse_sweep(v.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ScenarioError(e.what());
    }
  });
  r.custom("values", [&spec](const json& v) {
    if (!v.is_array()) throw ScenarioError("values must be an array");
    for (const auto& x : v) {
      if (!x.is_number()) throw ScenarioError("values must be numbers");
      spec.values.push_back(x.get<double>());
    }
  });
  r.custom("schemes", [&spec](const json& v) {
    if (v.is_string() && v.get<std::string>() == "all") {
      spec.schemes = all_schemes();
      return;
    }
    if (!v.is_array()) throw ScenarioError("schemes must be \"all\" or an array of names");
    for (const auto& x : v) {
      if (!x.is_string()) throw ScenarioError("scheme names must be strings");
      try {
        spec.schemes.push_back(parse_scheme(x.get<std::string>()));
      } catch (const std::invalid_argument& e) {
        throw ScenarioError(e.what());
      }
    }
  });
  r.custom("seeds", [&spec](const json& v) {
    if (v.is_array()) {
      for (const auto& x : v) spec.seeds.push_back(read_seed(x, "seeds[]"));
      return;
    }
    if (!v.is_object()) throw ScenarioError("seeds must be an array or {first, count}");
    std::uint64_t first = 1;
    int count = 0;
    ObjectReader s(v, "seeds");
    s.custom("first", [&first](const json& x) { first = read_seed(x, "seeds.first"); });
    s.integer("count", count);
    s.apply();
    if (count < 1) throw ScenarioError("seeds.count must be positive");
    for (int i = 0; i < count; ++i) spec.seeds.push_back(first + i);
  });
  r.integer("cluster_size", spec.cluster_size);
  r.custom("plot", [&spec](const json& v) {
    if (!v.is_boolean()) throw ScenarioError("plot must be a boolean");
    spec.plot = v.get<bool>();
  });
  r.custom("scenario", [&spec](const json& v) { spec.base = read_scenario(v); });
  r.custom("ao", [&spec](const json& v) { read_ao(v, spec.ao); });
  r.apply();
  if (spec.schemes.empty()) spec.schemes = all_schemes();
  spec.validate();
  return spec;
}

ExperimentSpec load_experiment_spec(const std::string& path) {
  return parse_experiment_spec(read_text_file(path));
}

}  // namespace stin
