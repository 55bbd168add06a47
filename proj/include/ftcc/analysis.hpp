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

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ftcc/error_model.hpp"
#include "ftcc/markov.hpp"
#include "ftcc/netsim.hpp"

namespace ftcc {

/// Final bracket of a bisection: f changes sign between lo and hi.
struct BracketedRoot {
    double lo{0};
    double hi{0};
    double value() const { return 0.5 * (lo + hi); }
};

/// Bisection on f over [lo, hi]; f(lo) and f(hi) must differ in sign
/// (f(lo) < 0 <= f(hi) or the reverse). Stops once hi - lo <= tolerance.
BracketedRoot bisect(const std::function<double(double)> &f, double lo, double hi, double tolerance);

struct ThresholdOptions {
    double lo = 0.0;
    double hi = 0.25;
    double tolerance = 1e-6;
    double scan_step = 0.005;
};

class NoCrossingError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Largest epsilon in (lo, hi) below which the code suppresses errors,
/// p_ss(eps) < eps, and at which p_ss(eps) - eps changes sign.
BracketedRoot correction_threshold_bracket(const ErrorChain &chain, const ThresholdOptions &opts = {});
double correction_threshold(const ErrorChain &chain, const ThresholdOptions &opts = {});

/// Error budget of one logical MAJ1 in the computational phase.
struct UniversalPoint {
    double p{0};
    double epsilon{0};
    double epsilon_prime{0};
    double eta{0};       // propagated bit error of the coded inputs
    double p_in{0};      // error of each physical input to the target MAJ3
    double p_target{0};  // error of each target MAJ3 output
};

UniversalPoint universal_point(const ErrorChain &level3, double p,
                               EpsilonConstant constant = EpsilonConstant::kComponentSum);

struct UniversalThreshold {
    double p_star{0};
    double eps_star{0};
    BracketedRoot bracket;
};

/// Largest p with p_target(p) < 1/2, searched on (0, 0.2).
UniversalThreshold universal_threshold(const ErrorChain &level3,
                                       EpsilonConstant constant = EpsilonConstant::kComponentSum,
                                       double tolerance = 1e-6);

/// Logical error t^(2^L - 1) eps^(2^L) of an L-level concatenated code whose
/// threshold is 1/t.
double concat_baseline(int t, int levels, double eps);

struct FeedbackConstants {
    double meas{0};
    double fb{0};
};

/// Asymptotic error of an all-unitary measurement, (32/63)p, and of the
/// feedback it drives, p + (32/63)p.
FeedbackConstants feedback_constants(double p);

enum class ModelKind { kLevel2, kLevel3, kConcat, kVnMc, kHypercubeMc };

struct McSettings {
    std::uint64_t seed{1};
    StopRule stop{};
    McOptions options{};
    /// Componentwise gates need a p grid (ModelSpec::x_is_p).
    bool componentwise{false};
};

struct ModelSpec {
    ModelKind kind{ModelKind::kLevel3};
    int t{6};      // concat threshold denominator
    int level{3};  // concat levels, or MC code level n
    /// Grid values are p; epsilon = epsilon_of(p) wherever the model needs it.
    bool x_is_p{false};
    McSettings mc{};
};

std::string model_tag(const ModelSpec &spec);

struct SweepRecord {
    double x{0};
    double y{0};
    double y_lo{0};
    double y_hi{0};
    std::string model;
    int n{0};
    std::string warning;  // non-empty: point skipped, y meaningless
    bool ok() const { return warning.empty(); }
};

/// Evaluates the model at every grid point. The grid must be strictly
/// increasing; points outside the model's domain yield warning records.
std::vector<SweepRecord> sweep(const ModelSpec &spec, std::span<const double> grid);

/// Seed used for the MC point at x; depends only on (seed, x).
std::uint64_t point_seed(std::uint64_t seed, double x);

}  // namespace ftcc
