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
#include <cstddef>
#include <cstdint>
#include <vector>

#include "ftcc/netsim.hpp"

namespace ftcc {

/// Upper bound on the probability that the AMP cascade hands the 81-bit
/// corrector a state it will not correct.
struct EncodeBound {
    double p_fail{0};
    /// Addends of p_fail: the control error q_i, then (1 - q_i) times each of
    /// two level-0 errors, one level-0 error completed to a logical error
    /// downstream, and a clean level 0 with nested level-1/2 failures.
    std::array<double, 4> terms{};
    double alpha{0};                // 3(ap)^2 - 2(ap)^3
    double p_logical_given_one{0};  // P(L | one error at level zero)
    double q_i{0};
    double ap{0};
};

EncodeBound pfail_bound(double p);

/// p at which the bound crosses p itself; below it encoding beats a bare gate.
double p_crit(double tolerance = 1e-6);

/// Four levels of AMP fan-out: 1 -> 3 -> 9 -> 27 -> 81 bits.
struct CascadeSpec {
    static constexpr int kDepth = 4;
    static constexpr std::size_t kOutputs = 81;

    /// Register index of leaf (block b, level-1 j, level-2 k, level-3 l), with
    /// leaves enumerated as b*27 + j*9 + k*3 + l. The block (level-0 branch)
    /// is the coordinate along axis 0, the first corrector axis, so every MAJ3
    /// of the first phase draws one input from each third of the code.
    std::array<std::size_t, kOutputs> leaf_to_bit{};

    static CascadeSpec standard();
};

struct CascadeOptions {
    int correction_phases = 12;
    int workers = 1;
    std::uint64_t chunk_trials = 1u << 14;
    Bit input = 0;
};

/// Monte Carlo of encode-then-correct: componentwise AMP cascade, then
/// `correction_phases` idealized hypercube phases at eps(p); a failure is a
/// final register majority differing from the encoded bit.
TrialStats cascade_mc(double p, std::uint64_t seed, std::uint64_t trials, const CascadeOptions &opts = {});

/// Encodes `input` once through the cascade into `out` (81 bits, register order).
void run_cascade(Bit input, const GateSampler &amp, const CascadeSpec &spec, RngStream &rng, std::vector<Bit> &out);

}  // namespace ftcc
