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

#include <algorithm>

#include "stin/matching.hpp"
#include "stin/orchestrator.hpp"
#include "verify/oracles.hpp"

using namespace stin;

TEST_CASE("two clusters, two sub-channels") {
  const auto prefs = PreferenceLists::from_utilities({{3.0, 1.0}, {2.0, 4.0}}, {0.0, 0.0});
  RngStream stream(1, "test");
  const auto r = run_vsma(prefs, 1, stream);
  CHECK(r.matching.owner == std::vector<int>{0, 1});
  CHECK(check_stability(prefs, r.matching, 1).stable);
}

TEST_CASE("preference lists drop unacceptable sub-channels and break ties low") {
  const auto p = PreferenceLists::from_utilities({{1.0, -1.0, 1.0}, {1.0, 2.0, 0.0}}, {0.0, 0.0});
  CHECK(p.cluster_prefs[0] == std::vector<int>{0, 2});
  CHECK(p.cluster_prefs[1] == std::vector<int>{1, 0});
  CHECK(p.cluster_rank(1, 2) == -1);
  CHECK(p.subchannel_prefs[0] == std::vector<int>{0, 1});
  CHECK(p.subchannel_prefs[1] == std::vector<int>{1, 0});
}

TEST_CASE("VSMA output is one of the stable matchings") {
  RngStream rng(21, "test-enumerate");
  for (int i = 0; i < 200; ++i) {
    const int n = 2 + static_cast<int>(rng.below(2));
    const int q = 1 + static_cast<int>(rng.below(3));
    const int f = 2 + static_cast<int>(rng.below(std::min(4, n * q - 1)));
    const auto prefs = verify::random_preferences(n, f, rng);
    RngStream stream(i, "test-vsma");
    const auto r = run_vsma(prefs, q, stream);
    const auto stable = verify::enumerate_stable(prefs, q);
    const bool found = std::any_of(stable.begin(), stable.end(),
                                   [&](const Matching& m) { return m.owner == r.matching.owner; });
    CHECK(found);
    CHECK(r.proposals <= long(n) * f);
    CHECK(r.occupant_rank_monotone);
    for (int c = 0; c < n; ++c) CHECK(r.matching.load(c) <= q);
  }
}

TEST_CASE("stability check agrees with the brute-force oracle") {
  RngStream rng(8, "test-blocking");
  for (int i = 0; i < 300; ++i) {
    const int n = 2 + static_cast<int>(rng.below(3));
    const int q = 1 + static_cast<int>(rng.below(3));
    const int f = 2 + static_cast<int>(rng.below(std::min(5, n * q - 1)));
    const auto prefs = verify::random_preferences(n, f, rng);
    // Arbitrary matching within quota, not necessarily stable.
    Matching m;
    m.carrying.assign(f, 1);
    std::vector<int> load(n, 0);
    for (int s = 0; s < f; ++s) {
      int c = static_cast<int>(rng.below(n));
      while (load[c] >= q) c = (c + 1) % n;
      ++load[c];
      m.owner.push_back(c);
    }
    CHECK(check_stability(prefs, m, q).blocking.size() ==
          verify::brute_force_blocking(prefs, m, q).size());
  }
}

TEST_CASE("stability check rejects malformed matchings") {
  const auto prefs = PreferenceLists::from_utilities({{1.0, 1.0}, {1.0, 1.0}}, {0.0, 0.0});
  CHECK_THROWS(check_stability(prefs, Matching{{0, -1}, {1, 1}}, 2));
  CHECK_THROWS(check_stability(prefs, Matching{{0, 2}, {1, 1}}, 2));
  CHECK_THROWS(check_stability(prefs, Matching{{0, 0}, {1, 1}}, 1));
}

TEST_CASE("one-to-one baseline carries one sub-channel per cluster") {
  const auto prefs = PreferenceLists::from_utilities({{3.0, 1.0, 2.0}, {2.0, 4.0, 1.0}}, {0.0, 0.0});
  const auto m = one_to_one_baseline(prefs, 2);
  int carried[2] = {0, 0};
  for (int f = 0; f < 3; ++f) {
    REQUIRE(m.owner[f] >= 0);
    carried[m.owner[f]] += m.carrying[f];
  }
  CHECK(carried[0] == 1);
  CHECK(carried[1] == 1);
}

TEST_CASE("energy-saved utilities on a real scenario") {
  const auto s = generate_scenario(InfrastructureParams{}, FleetTemplate{}, 20, 4, 2);
  const auto st = initial_state(s);
  const auto prefs = build_preferences(s, st);
  CHECK(prefs.clusters() == 4);
  CHECK(prefs.subchannels() == 6);
  for (double r : prefs.reservation) CHECK(r == 0.0);
  for (const auto& row : prefs.utility)
    for (double u : row) CHECK(u >= 0.0);
}
