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

#include <ostream>
#include <string>

namespace stin::verify {

struct AcceptanceOptions {
  int only = 0;            // 0 runs every criterion
  std::string config_dir;  // holds sweeps/*.json and scenario_default.json; empty = built-in path
  std::string cli_path;    // if set, determinism also runs this binary twice
};

/// Runs the acceptance criteria, printing one PASS/FAIL line each.
/// Returns true when every selected criterion passes.
bool run_acceptance(const AcceptanceOptions& options, std::ostream& out);

}  // namespace stin::verify
