// Copyright 2026 The fcqst Authors
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

#include <cstdint>

namespace fcqst {

std::uint64_t splitmix64(std::uint64_t& state) noexcept;

/// xorshift64* (Vigna): x ^= x >> 12; x ^= x << 25; x ^= x >> 27;
/// output x * 0x2545F4914F6CDD1D. Seeded through splitmix64 so that any seed,
/// including zero, gives a nonzero state.
class Rng {
public:
    explicit Rng(std::uint64_t seed) noexcept;

    /// Independent stream for (seed, index), e.g. one per trial or restart.
    static Rng stream(std::uint64_t seed, std::uint64_t index) noexcept;

    std::uint64_t next() noexcept;
    /// Uniform in [0, 1) with 53 random bits.
    double uniform() noexcept;
    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
    /// Standard normal by Box-Muller; the second variate is cached.
    double normal() noexcept;

private:
    std::uint64_t state_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

}  // namespace fcqst
