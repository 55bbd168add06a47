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

#include <array>
#include <bit>
#include <cstdint>

// Level-2 corrector as nine incipient-error slots: three level-1 MAJs of three
// slots each. From state B every level-1 MAJ also carries one propagated error.
namespace ftcc_oracle {

inline int failed_lines(std::uint32_t incipient, bool propagated) {
    int failed = 0;
    for (int line = 0; line < 3; ++line) {
        const int wrong = std::popcount((incipient >> (3 * line)) & 7u) + (propagated ? 1 : 0);
        // A propagated error occupies slot 0; an incipient error there adds nothing.
        const int overlap = propagated && ((incipient >> (3 * line)) & 1u) ? 1 : 0;
        failed += (wrong - overlap) >= 2;
    }
    return failed;
}

// coeffs[from][to][k]: number of incipient patterns with k errors taking
// state `from` (0 = A, 1 = B) to `to` (0 = A, 1 = B, 2 = logical).
inline std::array<std::array<std::array<std::int64_t, 10>, 3>, 2> level2_pattern_counts() {
    std::array<std::array<std::array<std::int64_t, 10>, 3>, 2> c{};
    for (int from = 0; from < 2; ++from) {
        for (std::uint32_t mask = 0; mask < 512; ++mask) {
            const int f = failed_lines(mask, from == 1);
            ++c[from][f >= 2 ? 2 : f][std::popcount(mask)];
        }
    }
    return c;
}

// Placements of four incipient errors among the nine slots that fail exactly
// two level-1 MAJs from state A.
inline int two_failure_placements() {
    int n = 0;
    for (std::uint32_t mask = 0; mask < 512; ++mask) {
        if (std::popcount(mask) == 4 && failed_lines(mask, false) == 2) ++n;
    }
    return n;
}

inline int placements_of_four() {
    int n = 0;
    for (std::uint32_t mask = 0; mask < 512; ++mask) n += std::popcount(mask) == 4;
    return n;
}

}  // namespace ftcc_oracle
