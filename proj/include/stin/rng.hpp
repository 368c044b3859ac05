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

#include <complex>
#include <cstdint>
#include <random>
#include <string_view>

namespace stin {

/// Named, independently seeded random stream.
///
/// Streams are derived from one root seed plus a name and an index, so
/// drawing more values from one stream never shifts another. Gaussian and
/// uniform variates are produced from raw 64-bit engine output rather than
/// the std distributions, which keeps sequences identical across standard
/// library implementations.
class RngStream {
 public:
  RngStream(std::uint64_t root_seed, std::string_view name, std::uint64_t index = 0);

  /// Uniform on [0, 1).
  double uniform();
  double uniform(double lo, double hi);
  /// Uniform integer on [0, n).
  std::uint64_t below(std::uint64_t n);
  double standard_normal();

  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Circularly-symmetric CN(0,1) draw: independent real and imaginary parts
/// with variance 1/2 each.
std::complex<double> draw_rayleigh_gain(RngStream& stream);

std::uint64_t mix_seed(std::uint64_t seed, std::string_view name, std::uint64_t index);

}  // namespace stin
