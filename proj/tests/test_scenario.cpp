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

#include <doctest.h>

#include "stin/scenario.hpp"
#include "stin/scenario_io.hpp"
#include "stin/channels.hpp"
#include "stin/units.hpp"

using namespace stin;

TEST_CASE("dBm conversion") {
  CHECK(dbm_to_watts(23.0) == doctest::Approx(0.19953).epsilon(1e-4));
  CHECK(dbm_to_watts(-80.0) == doctest::Approx(1e-11));
  CHECK(watts_to_dbm(dbm_to_watts(17.5)) == doctest::Approx(17.5));
}

TEST_CASE("chord and stay time") {
  const Geometry g{250.0, 150.0, 20.0};
  CHECK(g.chord() == doctest::Approx(400.0));
  CHECK(g.stay_time() == doctest::Approx(20.0));
  // Enters and leaves at the coverage edge, closest at mid-stay.
  CHECK(g.distance(0.0) == doctest::Approx(250.0));
  CHECK(g.distance(20.0) == doctest::Approx(250.0));
  CHECK(g.distance(10.0) == doctest::Approx(150.0));
}

TEST_CASE("scenario generation is seeded and size-stable") {
  InfrastructureParams infra;
  FleetTemplate fleet;
  const auto a = generate_scenario(infra, fleet, 20, 4, 9);
  const auto b = generate_scenario(infra, fleet, 20, 4, 9);
  const auto c = generate_scenario(infra, fleet, 10, 2, 9);
  const auto d = generate_scenario(infra, fleet, 20, 4, 10);
  bool differs = false;
  for (int m = 0; m < 20; ++m) {
    CHECK(a.vehicle(m).task.bits == b.vehicle(m).task.bits);
    CHECK(a.gain(m, 3) == b.gain(m, 3));
    differs = differs || a.vehicle(m).task.bits != d.vehicle(m).task.bits;
  }
  for (int m = 0; m < 10; ++m) CHECK(a.vehicle(m).task.bits == c.vehicle(m).task.bits);
  CHECK(differs);
}

TEST_CASE("clusters respect the cap and cover every vehicle") {
  InfrastructureParams infra;
  FleetTemplate fleet;
  for (auto clustering : {Clustering::SortedRoundRobin, Clustering::Random}) {
    const auto s = generate_scenario(infra, fleet, 20, 4, 3, clustering);
    int total = 0;
    for (int n = 0; n < s.num_clusters(); ++n) {
      CHECK(static_cast<int>(s.members(n).size()) <= infra.cluster_cap);
      for (int m : s.members(n)) CHECK(s.cluster_of(m) == n);
      total += static_cast<int>(s.members(n).size());
    }
    CHECK(total == 20);
  }
}

TEST_CASE("invalid infrastructure is rejected") {
  InfrastructureParams infra;
  infra.num_subchannels = 9;
  infra.num_clusters = 2;
  infra.cluster_cap = 4;  // 2 * 4 < 9
  CHECK_THROWS_AS(infra.validate(), ScenarioError);
  infra = {};
  infra.rsu_radius = -1.0;
  CHECK_THROWS_AS(infra.validate(), ScenarioError);
}

TEST_CASE("scenario config parsing") {
  const auto c = parse_scenario_config(R"({"seed": 4, "vehicles": 12,
      "infrastructure": {"subchannels": 5, "clusters": 3, "p_max_dbm": 20},
      "fleet": {"deadline_s": 2.0}})");
  CHECK(c.seed == 4);
  CHECK(c.vehicles == 12);
  CHECK(c.infra.num_subchannels == 5);
  CHECK(c.infra.p_max == doctest::Approx(0.1));
  CHECK(c.fleet.deadline == doctest::Approx(2.0));
  CHECK_THROWS_AS(parse_scenario_config(R"({"vehicels": 3})"), ScenarioError);
  CHECK_THROWS_AS(parse_scenario_config(R"({"fleet": {"deadline": 2}})"), ScenarioError);
  CHECK_THROWS_AS(parse_scenario_config(R"({"vehicles": 2.5})"), ScenarioError);
}

TEST_CASE("shipped configs load") {
  const std::string dir = STIN_CONFIG_DIR;
  CHECK_NOTHROW(load_scenario_config(dir + "/scenario_default.json"));
  for (const char* name : {"vehicles", "task_size", "deadline", "subchannels", "vehicles_3500kb",
                           "vehicles_4000kb"})
    CHECK_NOTHROW(load_experiment_spec(dir + "/sweeps/" + name + ".json"));
}
