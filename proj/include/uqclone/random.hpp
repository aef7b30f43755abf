// Copyright 2026 The uqclone Authors
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

/**
 * @file
 * Reproducible random numbers.
 *
 * The engine is std::mt19937_64, whose output sequence is fixed by the C++
 * standard. The distributions in <random> are not, so every variate used by
 * the simulator is drawn here from raw engine output.
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>

namespace uqclone {

/// SplitMix64 finalizer; used to derive independent stream seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed for sub-stream `index` of `seed`.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(seed ^ splitmix64(index));
}

class Rng {
   public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Poisson variate; large means are split into chunks of at most 16 so the
    /// product-of-uniforms method stays accurate.
    std::int64_t poisson(double mean) {
        if (!(mean > 0.0)) return 0;
        std::int64_t total = 0;
        const auto chunks = static_cast<std::int64_t>(std::ceil(mean / 16.0));
        const double part = mean / static_cast<double>(chunks);
        const double limit = std::exp(-part);
        for (std::int64_t c = 0; c < chunks; ++c) {
            double prod = uniform();
            while (prod > limit) {
                ++total;
                prod *= uniform();
            }
        }
        return total;
    }

    /// First k with u < cumulative[k] for a uniform u; cumulative.size() when
    /// u lands past the last entry (total weight below one).
    std::size_t categorical(std::span<const double> cumulative) {
        const double u = uniform();
        std::size_t lo = 0, hi = cumulative.size();
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            if (u < cumulative[mid]) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        return lo;
    }

   private:
    std::mt19937_64 engine_;
};

}  // namespace uqclone
