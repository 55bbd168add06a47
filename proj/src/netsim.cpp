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

#include "ftcc/netsim.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ftcc {

namespace {

std::uint32_t below3(std::uint64_t word) { return std::uint32_t(((word >> 32) * 3u) >> 32); }

}  // namespace

GateSampler::GateSampler(const GateNoise &noise) {
    if (const auto *ideal = std::get_if<Idealized>(&noise)) {
        idealized_ = true;
        all_flip_ = Bernoulli(ideal->epsilon);
        return;
    }
    const auto &cw = std::get<Componentwise>(noise).noise;
    idealized_ = false;
    one_wrong_ = Bernoulli(3.0 / 7.0 * cw.p_c);
    two_wrong_ = Bernoulli(6.0 / 7.0 * cw.p_c);
    three_wrong_ = Bernoulli(cw.p_c);
    location_ = Bernoulli(cw.wire_prep);
}

std::uint8_t GateSampler::intrinsic_mask(RngStream &rng) const {
    const std::uint64_t cls = rng.next();
    const std::uint64_t which = rng.next();
    if (one_wrong_(cls)) return std::uint8_t(1u << below3(which));
    if (two_wrong_(cls)) return std::uint8_t(7u ^ (1u << below3(which)));
    if (three_wrong_(cls)) return 7u;
    return 0u;
}

Triple GateSampler::maj3(Triple in, RngStream &rng) const {
    const Bit m = majority(in);
    if (idealized_) {
        const Bit out = Bit(m ^ (all_flip_(rng) ? 1u : 0u));
        return {out, out, out};
    }
    // MAJ1: only line 0 carries the vote.
    const Bit vote = Bit(m ^ (intrinsic_mask(rng) & 1u));
    const std::uint8_t amp_mask = intrinsic_mask(rng);
    Triple out{vote, vote, vote};
    for (int k = 0; k < 3; ++k) {
        if (location_(rng)) out[k] ^= 1u;  // |0> preparation (also charged to the control line)
    }
    for (int k = 0; k < 3; ++k) {
        if (location_(rng)) out[k] ^= 1u;  // output wire
        out[k] ^= Bit((amp_mask >> k) & 1u);
    }
    return out;
}

Triple GateSampler::amp(Bit control, RngStream &rng) const {
    if (idealized_) {
        const Bit out = Bit(control ^ (all_flip_(rng) ? 1u : 0u));
        return {out, out, out};
    }
    const std::uint8_t mask = intrinsic_mask(rng);
    Triple out{control, control, control};
    for (int k = 1; k < 3; ++k) {
        if (location_(rng)) out[k] ^= 1u;
    }
    for (int k = 0; k < 3; ++k) {
        if (location_(rng)) out[k] ^= 1u;
        out[k] ^= Bit((mask >> k) & 1u);
    }
    return out;
}

Triple apply_maj3(Triple in, const GateNoise &noise, RngStream &rng) { return GateSampler(noise).maj3(in, rng); }

std::size_t code_size(int level) {
    if (level < 0 || level > 12) throw std::invalid_argument("code level must lie in [0, 12]");
    std::size_t n = 3;
    for (int i = 0; i < level; ++i) n *= 3;
    return n;
}

CodeRegister CodeRegister::filled(int level, Bit value) {
    CodeRegister r;
    r.level = level;
    r.bits.assign(code_size(level), value);
    r.logical = value;
    return r;
}

std::vector<std::array<std::size_t, 3>> hypercube_triples(int level, int axis) {
    const std::size_t n = code_size(level);
    if (axis < 0 || axis > level) throw std::invalid_argument("hypercube_triples: axis out of range");
    std::size_t stride = 1;
    for (int i = 0; i < axis; ++i) stride *= 3;
    std::vector<std::array<std::size_t, 3>> out;
    out.reserve(n / 3);
    for (std::size_t block = 0; block < n; block += 3 * stride) {
        for (std::size_t inner = 0; inner < stride; ++inner) {
            const std::size_t base = block + inner;
            out.push_back({base, base + stride, base + 2 * stride});
        }
    }
    return out;
}

PhaseEngine::PhaseEngine(int level, const GateNoise &noise) : level_(level), sampler_(noise), perm_(code_size(level)) {
    for (int a = 0; a <= level; ++a) axis_triples_.push_back(hypercube_triples(level, a));
}

void PhaseEngine::run(CodeRegister &reg, Schedule &sched, RngStream &rng) {
    if (sched.kind == ScheduleKind::kHypercube) {
        for (const auto &t : axis_triples_[sched.next_axis]) apply(reg.bits, t[0], t[1], t[2], rng);
        sched.next_axis = (sched.next_axis + 1) % sched.axes;
        return;
    }
    // Fisher-Yates, one word per swap, then consecutive triples.
    std::iota(perm_.begin(), perm_.end(), std::size_t{0});
    for (std::size_t i = perm_.size() - 1; i > 0; --i) {
        std::swap(perm_[i], perm_[rng.below(std::uint32_t(i + 1))]);
    }
    for (std::size_t g = 0; g < perm_.size(); g += 3) apply(reg.bits, perm_[g], perm_[g + 1], perm_[g + 2], rng);
}

Bit PhaseEngine::readout(const CodeRegister &reg, const Schedule &sched, Readout mode) const {
    if (mode == Readout::kMajority) return majority_value(reg.bits);
    return corrected_value(reg.bits, level_, sched.next_axis);
}

void PhaseEngine::apply(std::vector<Bit> &bits, std::size_t i, std::size_t j, std::size_t k, RngStream &rng) const {
    const Triple out = sampler_.maj3({bits[i], bits[j], bits[k]}, rng);
    bits[i] = out[0];
    bits[j] = out[1];
    bits[k] = out[2];
}

void restorative_phase(CodeRegister &reg, Schedule &sched, const GateNoise &noise, RngStream &rng) {
    if (reg.bits.size() != code_size(reg.level)) throw std::invalid_argument("restorative_phase: malformed register");
    if (sched.axes != reg.axes()) throw std::invalid_argument("restorative_phase: schedule built for another level");
    PhaseEngine(reg.level, noise).run(reg, sched, rng);
}

Bit corrected_value(const std::vector<Bit> &bits, int level, int start_axis) {
    const int axes = level + 1;
    std::vector<Bit> values = bits;
    std::vector<int> remaining(axes);
    std::iota(remaining.begin(), remaining.end(), 0);
    for (int step = 0; step < axes; ++step) {
        const int axis = (start_axis + step) % axes;
        std::size_t pos = 0;
        while (remaining[pos] != axis) ++pos;
        std::size_t stride = 1;
        for (std::size_t i = 0; i < pos; ++i) stride *= 3;
        std::vector<Bit> reduced(values.size() / 3);
        for (std::size_t block = 0, out = 0; block < values.size(); block += 3 * stride) {
            for (std::size_t inner = 0; inner < stride; ++inner, ++out) {
                const std::size_t b = block + inner;
                reduced[out] = majority({values[b], values[b + stride], values[b + 2 * stride]});
            }
        }
        values = std::move(reduced);
        remaining.erase(remaining.begin() + std::ptrdiff_t(pos));
    }
    return values.front();
}

Bit majority_value(const std::vector<Bit> &bits) {
    std::size_t ones = 0;
    for (Bit b : bits) ones += b;
    return Bit(2 * ones > bits.size() ? 1 : 0);
}

double TrialStats::std_error() const {
    if (phases == 0) return 0.0;
    return std::sqrt(p_hat * (1.0 - p_hat) / double(phases));
}

TrialStats make_trial_stats(std::uint64_t trials, std::uint64_t flips) {
    if (trials == 0) throw std::invalid_argument("make_trial_stats: no trials");
    if (flips > trials) throw std::invalid_argument("make_trial_stats: more flips than trials");
    constexpr double z = 1.959963984540054;
    const double n = double(trials);
    const double p = double(flips) / n;
    const double denom = 1.0 + z * z / n;
    const double center = (p + z * z / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n)) / denom;
    TrialStats s;
    s.phases = trials;
    s.flips = flips;
    s.p_hat = p;
    s.ci_lo = flips == 0 ? 0.0 : std::max(0.0, center - half);
    s.ci_hi = std::min(1.0, center + half);
    s.upper_bound_only = flips == 0;
    return s;
}

namespace {

struct ChunkTally {
    std::uint64_t phases{0};
    std::uint64_t flips{0};
};

}  // namespace

TrialStats estimate_logical_rate(int level, ScheduleKind kind, const GateNoise &noise, std::uint64_t seed,
                                 const StopRule &stop, const McOptions &opts) {
    if (stop.max_phases == 0) throw std::invalid_argument("estimate_logical_rate: max_phases must be positive");
    if (opts.chunk_phases == 0) throw std::invalid_argument("estimate_logical_rate: chunk_phases must be positive");
    if (opts.warmup < 0) throw std::invalid_argument("estimate_logical_rate: negative warm-up");
    if (kind == ScheduleKind::kRandomized && opts.readout == Readout::kCorrected) {
        throw std::invalid_argument("estimate_logical_rate: corrected readout needs the hypercube schedule");
    }
    code_size(level);

    const std::uint64_t chunk_count = (stop.max_phases + opts.chunk_phases - 1) / opts.chunk_phases;
    auto run_chunk = [&](std::size_t chunk) {
        const std::uint64_t begin = chunk * opts.chunk_phases;
        const std::uint64_t phases = std::min(opts.chunk_phases, stop.max_phases - begin);
        RngStream rng(seed, chunk);
        PhaseEngine runner(level, noise);
        CodeRegister reg = CodeRegister::filled(level, 0);
        Schedule sched{kind, level + 1, 0};
        for (int w = 0; w < opts.warmup; ++w) {
            runner.run(reg, sched, rng);
            reg.logical = runner.readout(reg, sched, opts.readout);
        }
        ChunkTally tally;
        tally.phases = phases;
        for (std::uint64_t i = 0; i < phases; ++i) {
            runner.run(reg, sched, rng);
            const Bit value = runner.readout(reg, sched, opts.readout);
            if (value != reg.logical) {
                ++tally.flips;
                reg.logical = value;
            }
        }
        return tally;
    };

    const int workers = std::max(opts.workers, 1);
    std::uint64_t phases = 0, flips = 0;
    for (std::uint64_t next = 0; next < chunk_count;) {
        const std::uint64_t wave = std::min<std::uint64_t>(std::uint64_t(workers), chunk_count - next);
        const auto tallies = run_chunks<ChunkTally>(next, wave, workers, run_chunk);
        for (const auto &t : tallies) {
            phases += t.phases;
            flips += t.flips;
            if (stop.min_flips > 0 && flips >= stop.min_flips) return make_trial_stats(phases, flips);
        }
        next += wave;
    }
    return make_trial_stats(phases, flips);
}

}  // namespace ftcc
