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

#include "ftcc/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace ftcc {

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : key_(mix(mix(seed ^ 0x6a09e667f3bcc909ULL) + mix(stream_id + kGolden))) {}

Bernoulli::Bernoulli(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("Bernoulli: probability outside [0, 1]");
    if (p >= 1.0) {
        certain_ = true;
        return;
    }
    threshold_ = std::uint64_t(std::ldexp(p, 64));
}

}  // namespace ftcc
