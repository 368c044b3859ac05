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

#include <iostream>

#include <CLI11.hpp>

#include "verify/acceptance.hpp"

int main(int argc, char** argv) {
  stin::verify::AcceptanceOptions options;
  CLI::App app{"Acceptance checks; one PASS/FAIL line per criterion"};
  app.add_option("--only", options.only, "Run a single criterion (1-8)");
  app.add_option("--cli", options.cli_path, "stin binary for the determinism check");
  CLI11_PARSE(app, argc, argv);
  return stin::verify::run_acceptance(options, std::cout) ? 0 : 1;
}
