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
#include <span>
#include <vector>

#include "stin/channels.hpp"

namespace stin::kernels::detail {

struct ClusterInputs {
  NomaChannelState state;
  std::vector<std::uint8_t> held;
  std::vector<double> powers;
};

ClusterInputs cluster_inputs(const Scenario& s, int n, std::span<const int> owner,
                             std::span<const double> powers);

}  // namespace stin::kernels::detail
