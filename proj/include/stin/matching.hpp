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

#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "stin/cost_model.hpp"
#include "stin/rng.hpp"
#include "stin/scenario.hpp"

namespace stin {

/// Two-sided preferences between clusters and sub-channels, built from a
/// scalar utility matrix (ties broken toward the lower index).
///
/// A sub-channel is acceptable to a cluster only when its utility beats the
/// cluster's reservation utility (what the cluster gets holding nothing).
struct PreferenceLists {
  std::vector<std::vector<double>> utility;    // [cluster][sub-channel]
  std::vector<double> reservation;             // [cluster]
  std::vector<std::vector<int>> cluster_prefs;     // acceptable sub-channels, best first
  std::vector<std::vector<int>> subchannel_prefs;  // all clusters, best first
  std::vector<std::vector<int>> subchannel_rank;   // [f][n] position in subchannel_prefs[f]

  int clusters() const { return static_cast<int>(utility.size()); }
  int subchannels() const { return utility.empty() ? 0 : static_cast<int>(utility[0].size()); }
  /// Position of f in cluster n's list, or -1 if unacceptable.
  int cluster_rank(int n, int f) const;

  static PreferenceLists from_utilities(std::vector<std::vector<double>> utility,
                                        std::vector<double> reservation = {});
};

/// U_n(f): energy saved by cluster n's members when the cluster holds f on
/// top of its other current sub-channels, each member re-solving its task
/// split. With the members' bits fixed this ranks sub-channels the same way
/// as the cluster's efficiency, and it is comparable across clusters, which
/// the sub-channel side needs. Reservation utility is zero, so f is
/// acceptable only if it helps.
PreferenceLists build_preferences(const Scenario& s, const AllocationState& state,
                                  RateModel model = RateModel::Approx);

struct Matching {
  std::vector<int> owner;              // [f] -> cluster, -1 if unassigned
  std::vector<std::uint8_t> carrying;  // [f]

  int load(int n) const;
};

struct VsmaResult {
  Matching matching;
  long proposals = 0;
  /// Every sub-channel's occupant only ever moved up its preference list.
  bool occupant_rank_monotone = true;
};

/// Cluster-proposing deferred acceptance with replacement. The proposing
/// cluster is drawn from `stream`. Sub-channels nobody proposed to are
/// then handed to the least-loaded cluster with spare capacity (ties by the
/// sub-channel's preference), so every sub-channel ends assigned.
VsmaResult run_vsma(const PreferenceLists& prefs, int q_max, RngStream& stream);

struct BlockingPair {
  int cluster;
  int subchannel;
};

struct StabilityReport {
  bool stable = true;
  std::vector<BlockingPair> blocking;
};

/// Throws std::invalid_argument if the matching breaks the structural
/// rules (unassigned sub-channel, bad cluster id, load above q_max).
StabilityReport check_stability(const PreferenceLists& prefs, const Matching& matching, int q_max);

/// Greedy one sub-channel per cluster by descending utility; surplus
/// sub-channels are assigned to the least-loaded cluster but left idle.
Matching one_to_one_baseline(const PreferenceLists& prefs, int q_max);

void apply_matching(const Matching& matching, AllocationState& state);

}  // namespace stin
