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

#include <Eigen/Dense>

#include "stin/scenario.hpp"

namespace stin::kernels {

/// Draws the relay channel realizations for one seed. Draws are always
/// sequential so the serial and OpenMP evaluators see identical inputs.
std::vector<Eigen::MatrixXcd> draw_relay_channels(const InfrastructureParams& infra,
                                                  std::uint64_t seed, int n_realizations);

// Serial reference implementations.
namespace serial {

std::vector<double> relay_rate(const InfrastructureParams& infra, std::uint64_t seed,
                               int n_realizations);

/// Exact (interference-aware, quadrature) mean NOMA rate per vehicle.
/// owner[f] is the cluster carrying sub-channel f, or -1.
std::vector<double> exact_noma_rates(const Scenario& s, std::span<const int> owner,
                                     std::span<const double> powers);

std::vector<double> mean_pathloss(const Scenario& s);

}  // namespace serial

// OpenMP data-parallel versions; results match the serial reference bit for bit.
namespace omp {

std::vector<double> relay_rate(const InfrastructureParams& infra, std::uint64_t seed,
                               int n_realizations);

std::vector<double> exact_noma_rates(const Scenario& s, std::span<const int> owner,
                                     std::span<const double> powers);

std::vector<double> mean_pathloss(const Scenario& s);

}  // namespace omp

}  // namespace stin::kernels
