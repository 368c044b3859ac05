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

#include <string>

#include "stin/orchestrator.hpp"
#include "stin/scenario.hpp"

namespace stin {

/// JSON scenario configuration. Keys carry their unit as a suffix
/// (`_hz`, `_m`, `_s`, `_kb`, `_w`, `_dbm`, `_dbi`, ...). Missing keys keep
/// their defaults; unknown keys raise ScenarioError.
ScenarioConfig parse_scenario_config(const std::string& json_text);
ScenarioConfig load_scenario_config(const std::string& path);

/// Sweep specification: sweep variable, values, schemes, seeds, and a
/// nested `scenario` object in the format above.
ExperimentSpec parse_experiment_spec(const std::string& json_text);
ExperimentSpec load_experiment_spec(const std::string& path);

std::string read_text_file(const std::string& path);

}  // namespace stin
