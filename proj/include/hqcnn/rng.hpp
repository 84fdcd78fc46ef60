// Copyright 2026 The hqcnn Authors
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
/**
 * @file
 * Portable seeded randomness.
 *
 * The engine is std::mt19937_64 (its output sequence is fixed by the C++
 * standard). The standard distributions are implementation-defined, so the
 * real and integer draws are done here by hand: a uniform double takes the
 * top 53 bits of one engine output, and bounded integers use rejection
 * sampling. Sub-streams are seeded with splitmix64(seed ^ stream_tag).
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace hqcnn {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Independent streams derived from one experiment seed.
enum class Stream : std::uint64_t {
    DataSplit = 0x5350'4C49'54ULL,
    Init = 0x494E'4954ULL,
    Shuffle = 0x5348'5546ULL,
    RReLU = 0x5252'454CULL,
    Test = 0x5445'5354ULL,
};

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    Rng(std::uint64_t seed, Stream stream)
        : engine_(splitmix64(seed ^ static_cast<std::uint64_t>(stream))) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

    /// Fisher-Yates, walking from the back.
    template <typename T> void shuffle(std::span<T> items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            const std::size_t j = below(i);
            std::swap(items[i - 1], items[j]);
        }
    }

  private:
    std::mt19937_64 engine_;
};

} // namespace hqcnn
