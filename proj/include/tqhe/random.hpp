// Copyright 2026 The tqhe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>

namespace tqhe {

/// Seeded source used everywhere randomness is needed. Distributions are
/// computed from raw engine output so results do not depend on the standard
/// library's distribution implementations.
class Rng {
  public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
        engine_.seed(seq);
    }

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform in the open interval (lo, hi).
    double uniform_open(double lo, double hi) {
        double u;
        do {
            u = uniform();
        } while (u == 0.0);
        return lo + (hi - lo) * u;
    }

    bool bit() { return (engine_() >> 63) != 0; }

    bool bernoulli(double p) { return uniform() < p; }

    /// Uniform integer in [0, n).
    std::uint64_t index(std::uint64_t n) {
        // Rejection sampling to avoid modulo bias.
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t r;
        do {
            r = engine_();
        } while (r >= limit);
        return r % n;
    }

  private:
    std::mt19937_64 engine_;
};

/// Named streams derived from one scenario seed.
namespace stream {
inline constexpr std::uint64_t kKeygen = 1;
inline constexpr std::uint64_t kClient = 2;
inline constexpr std::uint64_t kEavesdropper = 3;
inline constexpr std::uint64_t kScenario = 4;
inline constexpr std::uint64_t kEvaluatorBase = 100;
}  // namespace stream

}  // namespace tqhe
