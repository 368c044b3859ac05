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

namespace stin {

inline constexpr double kSpeedOfLight = 299792458.0;

/// Shannon low-SNR slope used by the linear rate model (log2(e) rounded to
/// two decimals, as the model prescribes).
inline constexpr double kLinearRateSlope = 1.44;

double dbm_to_watts(double dbm);
double db_to_linear(double db);
double watts_to_dbm(double watts);

inline constexpr double kilobits(double kb) { return kb * 1e3; }
inline constexpr double megahertz(double mhz) { return mhz * 1e6; }
inline constexpr double gigahertz(double ghz) { return ghz * 1e9; }

}  // namespace stin
