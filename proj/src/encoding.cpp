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

#include "ftcc/encoding.hpp"

#include <cmath>
#include <stdexcept>

#include "ftcc/analysis.hpp"

namespace ftcc {

EncodeBound pfail_bound(double p) {
    if (!(p >= 0 && p <= 0.2)) throw std::invalid_argument("pfail_bound: p must lie in [0, 0.2]");
    const auto rates = derive_rates(p).encoding;
    const double a = rates.ap;
    const double b = 1.0 - a;
    EncodeBound e;
    e.q_i = rates.q_i;
    e.ap = a;
    e.alpha = a * a * (3.0 - 2.0 * a);
    // 1 - b^6 - 6ab^5 - 3a^2b^4 rewritten as the majority of two-location rates;
    // the expanded form cancels catastrophically for small a.
    const double pair = a * (2.0 - a);
    e.p_logical_given_one = pair * pair * (3.0 - 2.0 * pair);
    const double rest = 1.0 - e.q_i;
    e.terms[0] = e.q_i;
    e.terms[1] = rest * e.alpha;
    e.terms[2] = rest * 3.0 * a * b * b * e.p_logical_given_one;
    e.terms[3] = rest * b * b * b * e.alpha * e.alpha * (3.0 - 2.0 * e.alpha);
    e.p_fail = e.terms[0] + e.terms[1] + e.terms[2] + e.terms[3];
    return e;
}

double p_crit(double tolerance) {
    auto excess = [](double p) { return pfail_bound(p).p_fail - p; };
    const double root = bisect(excess, 1e-6, 0.2, tolerance).value();
    constexpr int kGrid = 200;
    for (int i = 1; i < kGrid; ++i) {
        const double p = root * i / kGrid;
        if (!(excess(p) < 0)) throw std::logic_error("p_crit: bound not below p under the root");
    }
    return root;
}

CascadeSpec CascadeSpec::standard() {
    CascadeSpec s;
    for (std::size_t b = 0; b < 3; ++b) {
        for (std::size_t j = 0; j < 3; ++j) {
            for (std::size_t k = 0; k < 3; ++k) {
                for (std::size_t l = 0; l < 3; ++l) s.leaf_to_bit[b * 27 + j * 9 + k * 3 + l] = b + 3 * l + 9 * k + 27 * j;
            }
        }
    }
    return s;
}

void run_cascade(Bit input, const GateSampler &amp, const CascadeSpec &spec, RngStream &rng, std::vector<Bit> &out) {
    std::array<Bit, CascadeSpec::kOutputs> front{};
    std::array<Bit, CascadeSpec::kOutputs> next{};
    front[0] = input;
    std::size_t width = 1;
    for (int depth = 0; depth < CascadeSpec::kDepth; ++depth) {
        for (std::size_t i = 0; i < width; ++i) {
            const Triple t = amp.amp(front[i], rng);
            next[3 * i] = t[0];
            next[3 * i + 1] = t[1];
            next[3 * i + 2] = t[2];
        }
        width *= 3;
        front = next;
    }
    out.resize(CascadeSpec::kOutputs);
    for (std::size_t leaf = 0; leaf < CascadeSpec::kOutputs; ++leaf) out[spec.leaf_to_bit[leaf]] = front[leaf];
}

TrialStats cascade_mc(double p, std::uint64_t seed, std::uint64_t trials, const CascadeOptions &opts) {
    if (trials == 0) throw std::invalid_argument("cascade_mc: trials must be positive");
    if (opts.chunk_trials == 0) throw std::invalid_argument("cascade_mc: chunk_trials must be positive");
    if (opts.correction_phases < 0) throw std::invalid_argument("cascade_mc: negative correction phases");
    if (opts.input > 1) throw std::invalid_argument("cascade_mc: input must be a bit");
    const GateNoise encode_noise = Componentwise::from_p(p);
    const GateNoise correct_noise = Idealized{epsilon_of(p)};
    const CascadeSpec spec = CascadeSpec::standard();
    constexpr int kLevel = 3;

    const std::uint64_t chunk_count = (trials + opts.chunk_trials - 1) / opts.chunk_trials;
    auto run_chunk = [&](std::size_t chunk) {
        const std::uint64_t begin = chunk * opts.chunk_trials;
        const std::uint64_t count = std::min(opts.chunk_trials, trials - begin);
        RngStream rng(seed, chunk);
        const GateSampler amp(encode_noise);
        PhaseEngine engine(kLevel, correct_noise);
        CodeRegister reg = CodeRegister::filled(kLevel, opts.input);
        std::uint64_t failures = 0;
        for (std::uint64_t t = 0; t < count; ++t) {
            run_cascade(opts.input, amp, spec, rng, reg.bits);
            Schedule sched = Schedule::hypercube(kLevel);
            for (int k = 0; k < opts.correction_phases; ++k) engine.run(reg, sched, rng);
            if (majority_value(reg.bits) != opts.input) ++failures;
        }
        return failures;
    };

    const auto tallies = run_chunks<std::uint64_t>(0, chunk_count, opts.workers, run_chunk);
    std::uint64_t failures = 0;
    for (auto f : tallies) failures += f;
    return make_trial_stats(trials, failures);
}

}  // namespace ftcc
