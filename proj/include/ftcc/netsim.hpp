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
#include <variant>
#include <vector>

#include "ftcc/error_model.hpp"
#include "ftcc/rng.hpp"

namespace ftcc {

using Bit = std::uint8_t;
using Triple = std::array<Bit, 3>;

inline Bit majority(Triple t) { return Bit((t[0] & t[1]) | (t[0] & t[2]) | (t[1] & t[2])); }

/// MAJ3 outputs majority(inputs) on all three lines; with probability epsilon
/// all three are flipped together.
struct Idealized {
    double epsilon{0};
};

/// MAJ3 = MAJ1 then AMP, each drawing an intrinsic error class (exactly one,
/// two or three outputs wrong with (3/7, 3/7, 1/7) p_c), plus independent
/// (2/3)p flips for every |0> preparation and every output wire.
struct Componentwise {
    PhysicalNoise<double> noise;
    static Componentwise from_p(double p) { return {derive_rates(p).noise}; }
};

using GateNoise = std::variant<Idealized, Componentwise>;

/// Number of RNG words one MAJ3 draws under each model. Fixed so a schedule
/// consumes the same words regardless of which errors occur.
inline constexpr int kIdealizedWordsPerGate = 1;
inline constexpr int kComponentwiseWordsPerGate = 10;
inline constexpr int kAmpWordsPerGate = 7;

/// Precomputed thresholds for one GateNoise.
class GateSampler {
   public:
    explicit GateSampler(const GateNoise &noise);

    Triple maj3(Triple in, RngStream &rng) const;
    /// AMP fan-out of `control` onto two prepared |0> targets.
    Triple amp(Bit control, RngStream &rng) const;

   private:
    /// Flip mask over three lines for one intrinsic 3-bit gate error.
    std::uint8_t intrinsic_mask(RngStream &rng) const;

    bool idealized_{true};
    Bernoulli all_flip_;
    // Componentwise: cumulative class thresholds over one word.
    Bernoulli one_wrong_, two_wrong_, three_wrong_;
    Bernoulli location_;
};

Triple apply_maj3(Triple in, const GateNoise &noise, RngStream &rng);

/// 3^(n+1) code bits and the logical value they are tracked against.
struct CodeRegister {
    int level{0};
    std::vector<Bit> bits;
    Bit logical{0};

    static CodeRegister filled(int level, Bit value);
    std::size_t size() const { return bits.size(); }
    int axes() const { return level + 1; }
};

std::size_t code_size(int level);

enum class ScheduleKind { kHypercube, kRandomized };

/// Wiring of successive restorative phases. The hypercube cycles through its
/// n+1 axes; the randomized schedule redraws a permutation every phase.
struct Schedule {
    ScheduleKind kind{ScheduleKind::kHypercube};
    int axes{1};
    int next_axis{0};

    static Schedule hypercube(int level) { return {ScheduleKind::kHypercube, level + 1, 0}; }
    static Schedule randomized(int level) { return {ScheduleKind::kRandomized, level + 1, 0}; }
};

/// The 3^n MAJ3 input triples of one hypercube phase along `axis`.
std::vector<std::array<std::size_t, 3>> hypercube_triples(int level, int axis);

enum class Readout;

/// Wiring tables and sampler for repeated phases on one register size.
class PhaseEngine {
   public:
    PhaseEngine(int level, const GateNoise &noise);

    /// One restorative phase in place; advances the schedule.
    void run(CodeRegister &reg, Schedule &sched, RngStream &rng);
    Bit readout(const CodeRegister &reg, const Schedule &sched, Readout mode) const;

   private:
    void apply(std::vector<Bit> &bits, std::size_t i, std::size_t j, std::size_t k, RngStream &rng) const;

    int level_;
    GateSampler sampler_;
    std::vector<std::vector<std::array<std::size_t, 3>>> axis_triples_;
    std::vector<std::size_t> perm_;
};

/// One restorative phase in place; advances the schedule.
void restorative_phase(CodeRegister &reg, Schedule &sched, const GateNoise &noise, RngStream &rng);

/// Value every bit would settle on if the hypercube phases continued
/// noiselessly from `start_axis`: the recursive majority over the axes in
/// schedule order.
Bit corrected_value(const std::vector<Bit> &bits, int level, int start_axis);
Bit majority_value(const std::vector<Bit> &bits);

/// How a phase decides the current logical value.
///  kCorrected: noiseless continuation of the hypercube schedule (a logical
///    error is a pattern that perfect subsequent correction would not undo).
///  kMajority: strict majority of the raw bits.
enum class Readout { kCorrected, kMajority };

struct TrialStats {
    std::uint64_t phases{0};
    std::uint64_t flips{0};
    double p_hat{0};
    double ci_lo{0};
    double ci_hi{0};
    bool upper_bound_only{false};  // no flips observed; only ci_hi is informative

    double std_error() const;
    friend bool operator==(const TrialStats &, const TrialStats &) = default;
};

/// Wilson 95% interval for flips out of trials.
TrialStats make_trial_stats(std::uint64_t trials, std::uint64_t flips);

struct StopRule {
    std::uint64_t min_flips{300};
    std::uint64_t max_phases{10'000'000};
};

struct McOptions {
    int warmup = 50;
    Readout readout = Readout::kCorrected;
    int workers = 1;
    /// Tallied phases per independent chunk. Each chunk owns a fresh register
    /// and RNG substream (seed, chunk index); chunks are merged in index order,
    /// so the result does not depend on `workers`.
    std::uint64_t chunk_phases = 1u << 16;
};

/// Per-phase logical flip rate of a level-n code.
TrialStats estimate_logical_rate(int level, ScheduleKind kind, const GateNoise &noise, std::uint64_t seed,
                                 const StopRule &stop, const McOptions &opts = {});

/// Runs jobs first .. first+count-1 on up to `workers` threads; each job
/// writes only its own result slot.
template <typename Result, typename Job>
std::vector<Result> run_chunks(std::size_t first, std::size_t count, int workers, Job job);

}  // namespace ftcc

#include "ftcc/detail/run_chunks.hpp"
