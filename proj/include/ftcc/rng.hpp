// Copyright 2026 The ftcc-lab Authors
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

namespace ftcc {

/// Counter-based 64-bit generator: word i of stream (seed, id) is a SplitMix64
/// finalizer applied to a key derived from both plus i. Streams are
/// independent of each other and of the order in which they are consumed,
/// and the output is identical on every platform.
class RngStream {
   public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t next() { return mix(key_ + (counter_++) * kGolden); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return double(next() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n) from a single word (multiply-shift).
    std::uint32_t below(std::uint32_t n) { return std::uint32_t(((next() >> 32) * std::uint64_t(n)) >> 32); }

    RngStream split(std::uint64_t child) const { return RngStream(key_, child); }

    std::uint64_t words_consumed() const { return counter_; }

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

   private:
    static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
    std::uint64_t key_;
    std::uint64_t counter_{0};
};

/// A probability frozen into an integer threshold so that a Bernoulli draw is
/// one word and one integer comparison.
class Bernoulli {
   public:
    Bernoulli() = default;
    explicit Bernoulli(double p);
    bool operator()(std::uint64_t word) const { return certain_ || word < threshold_; }
    bool operator()(RngStream &rng) const { return (*this)(rng.next()); }

   private:
    std::uint64_t threshold_{0};
    bool certain_{false};
};

}  // namespace ftcc
