// Copyright 2026 the jumpback authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
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

namespace jumpback {

// Every random draw in the library flows through engines built here, so a
// (seed, stream) pair fully determines the output no matter which worker
// runs it. Streams let independent trials share one user-facing seed.
inline std::mt19937_64 seeded_engine(std::uint64_t seed, std::uint64_t stream = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

// Standard complex Gaussian: real and imaginary parts N(0, 1/2), so
// E|z|^2 = 1. Vectors of these are isotropic, which is what makes the
// normalize-a-Gaussian recipe uniform on the unit sphere.
inline std::complex<double> standard_complex_gaussian(std::mt19937_64& engine) {
  static constexpr double kHalf = 0.5;
  std::normal_distribution<double> normal(0.0, std::sqrt(kHalf));
  const double re = normal(engine);
  const double im = normal(engine);
  return {re, im};
}

inline double uniform_unit(std::mt19937_64& engine) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  return uni(engine);
}

}  // namespace jumpback
