// Copyright 2026 The qknoise Authors
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
#include <limits>

namespace qknoise {

// SplitMix64. Small, fast, and fully deterministic across platforms, which
// std::shuffle / std::uniform_*_distribution are not. Every reproducible
// stream in the project (shot sampling, splits, synthetic data, concept
// circuits) is derived from this generator.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1), 53-bit resolution.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform double in [-1, 1).
    double next_symmetric() { return 2.0 * next_unit() - 1.0; }

    // Unbiased integer in [0, bound) by rejection.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t threshold = -bound % bound;  // 2^64 mod bound
        for (;;) {
            const std::uint64_t u = next_u64();
            if (u >= threshold) return u % bound;
        }
    }

private:
    std::uint64_t state_;
};

namespace detail {
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}
}  // namespace detail

// Counter-style key for an independent substream identified by a pair of
// indices. Keys are stable under any evaluation order, so parallel assembly
// of a sampled kernel matrix reproduces the serial result bit for bit.
inline std::uint64_t pair_stream_key(std::uint64_t master_seed, std::uint64_t i, std::uint64_t j) {
    std::uint64_t h = detail::mix64(master_seed);
    h = detail::mix64(h ^ (0x9e3779b97f4a7c15ull * (i + 1)));
    h = detail::mix64(h ^ (0xd1b54a32d192ed03ull * (j + 1)));
    return h;
}

// Derived master seed for a tagged sub-experiment (e.g. one L value of a
// sweep), so that repeated shot experiments do not share streams.
inline std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t tag) {
    return detail::mix64(detail::mix64(master_seed) ^ (0x94d049bb133111ebull * (tag + 1)));
}

}  // namespace qknoise
