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

#include "ftcc/analysis.hpp"

#include <bit>
#include <cmath>
#include <optional>
#include <stdexcept>

namespace ftcc {

BracketedRoot bisect(const std::function<double(double)> &f, double lo, double hi, double tolerance) {
    if (!(lo < hi) || !(tolerance > 0)) throw std::invalid_argument("bisect: need lo < hi and tolerance > 0");
    const bool lo_negative = f(lo) < 0;
    if (lo_negative == (f(hi) < 0)) throw NoCrossingError("bisect: no sign change on the interval");
    while (hi - lo > tolerance) {
        const double mid = 0.5 * (lo + hi);
        if ((f(mid) < 0) == lo_negative) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return {lo, hi};
}

namespace {

/// Scans down from hi for the first grid cell with f(lower) < 0 <= f(upper)
/// and bisects it.
BracketedRoot highest_upcrossing(const std::function<double(double)> &f, double lo, double hi, double step,
                                 double tolerance, const char *what) {
    double upper = hi;
    double f_upper = f(upper);
    for (int i = 1;; ++i) {
        const double lower = std::max(lo, hi - i * step);
        if (lower <= lo) break;
        const double f_lower = f(lower);
        if (f_lower < 0 && f_upper >= 0) return bisect(f, lower, upper, tolerance);
        upper = lower;
        f_upper = f_lower;
    }
    throw NoCrossingError(std::string(what) + ": no crossing in range");
}

}  // namespace

BracketedRoot correction_threshold_bracket(const ErrorChain &chain, const ThresholdOptions &opts) {
    auto excess = [&](double eps) { return steady_state<double>(chain, eps).p_ss - eps; };
    return highest_upcrossing(excess, opts.lo, opts.hi, opts.scan_step, opts.tolerance, "correction_threshold");
}

double correction_threshold(const ErrorChain &chain, const ThresholdOptions &opts) {
    return correction_threshold_bracket(chain, opts).value();
}

UniversalPoint universal_point(const ErrorChain &level3, double p, EpsilonConstant constant) {
    const auto rates = derive_rates(p, constant);
    UniversalPoint u;
    u.p = p;
    u.epsilon = rates.maj3.epsilon;
    u.epsilon_prime = rates.maj3.epsilon_prime;
    u.eta = propagated_bit_error<double>(level3, u.epsilon);
    u.p_in = u.epsilon_prime + (1.0 - u.epsilon_prime) * u.eta;
    // Target MAJ3 output: either physical input wrong, its |0> prep, or the gate.
    u.p_target = 1.0 - (1.0 - u.p_in) * (1.0 - u.p_in) * (1.0 - u.epsilon) * (1.0 - rates.noise.wire_prep);
    return u;
}

UniversalThreshold universal_threshold(const ErrorChain &level3, EpsilonConstant constant, double tolerance) {
    auto excess = [&](double p) { return universal_point(level3, p, constant).p_target - 0.5; };
    UniversalThreshold out;
    out.bracket = highest_upcrossing(excess, 0.0, 0.2, 0.005, tolerance, "universal_threshold");
    out.p_star = out.bracket.value();
    out.eps_star = derive_rates(out.p_star, constant).maj3.epsilon;
    return out;
}

double concat_baseline(int t, int levels, double eps) {
    if (t != 6 && t != 7) throw std::invalid_argument("concat_baseline: t must be 6 or 7");
    if (levels < 2 || levels > 4) throw std::invalid_argument("concat_baseline: levels must lie in [2, 4]");
    if (!(eps >= 0 && eps <= 1)) throw std::invalid_argument("concat_baseline: epsilon outside [0, 1]");
    const int power = 1 << levels;
    return std::pow(double(t), power - 1) * std::pow(eps, power);
}

FeedbackConstants feedback_constants(double p) {
    if (!(p >= 0)) throw std::invalid_argument("feedback_constants: p must be non-negative");
    const double meas = 32.0 / 63.0 * p;
    return {meas, p + meas};
}

std::string model_tag(const ModelSpec &spec) {
    switch (spec.kind) {
        case ModelKind::kLevel2:
            return "level2";
        case ModelKind::kLevel3:
            return "level3";
        case ModelKind::kConcat:
            return "concat_t" + std::to_string(spec.t) + "_L" + std::to_string(spec.level);
        case ModelKind::kVnMc:
            return "vn_mc";
        case ModelKind::kHypercubeMc:
            return "hypercube_mc";
    }
    return "unknown";
}

std::uint64_t point_seed(std::uint64_t seed, double x) {
    return RngStream::mix(seed ^ RngStream::mix(std::bit_cast<std::uint64_t>(x)));
}

namespace {

double model_epsilon(const ModelSpec &spec, double x) { return spec.x_is_p ? epsilon_of(x) : x; }

bool in_domain(const ModelSpec &spec, double x) {
    if (!(x >= 0 && x <= 1)) return false;
    const double eps = model_epsilon(spec, x);
    if (spec.kind == ModelKind::kLevel2 || spec.kind == ModelKind::kLevel3) return eps < 1;
    return eps <= 1;
}

}  // namespace

std::vector<SweepRecord> sweep(const ModelSpec &spec, std::span<const double> grid) {
    if (spec.mc.componentwise && !spec.x_is_p) {
        throw std::invalid_argument("sweep: componentwise gates are parameterized by p");
    }
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) throw std::invalid_argument("sweep: grid must be strictly increasing");
    }
    std::vector<SweepRecord> out;
    if (grid.empty()) return out;

    const std::string tag = model_tag(spec);
    std::optional<ErrorChain> chain;
    if (spec.kind == ModelKind::kLevel2) chain = build_level2_chain();
    if (spec.kind == ModelKind::kLevel3) chain = build_level3_chain();

    for (double x : grid) {
        SweepRecord r;
        r.x = x;
        r.model = tag;
        switch (spec.kind) {
            case ModelKind::kLevel2:
            case ModelKind::kLevel3:
                r.n = spec.kind == ModelKind::kLevel2 ? 2 : 3;
                if (!in_domain(spec, x)) {
                    r.warning = "parameter outside the model's domain";
                    break;
                }
                r.y = r.y_lo = r.y_hi = steady_state<double>(*chain, model_epsilon(spec, x)).p_ss;
                break;
            case ModelKind::kConcat:
                r.n = spec.level;
                if (!in_domain(spec, x)) {
                    r.warning = "parameter outside the model's domain";
                    break;
                }
                r.y = r.y_lo = r.y_hi = concat_baseline(spec.t, spec.level, model_epsilon(spec, x));
                break;
            case ModelKind::kVnMc:
            case ModelKind::kHypercubeMc: {
                r.n = spec.level;
                if (!in_domain(spec, x)) {
                    r.warning = "parameter outside the model's domain";
                    break;
                }
                const GateNoise noise = spec.mc.componentwise ? GateNoise(Componentwise::from_p(x))
                                                              : GateNoise(Idealized{model_epsilon(spec, x)});
                const auto kind = spec.kind == ModelKind::kVnMc ? ScheduleKind::kRandomized : ScheduleKind::kHypercube;
                McOptions opts = spec.mc.options;
                if (kind == ScheduleKind::kRandomized) opts.readout = Readout::kMajority;
                const auto stats = estimate_logical_rate(spec.level, kind, noise, point_seed(spec.mc.seed, x), spec.mc.stop, opts);
                r.y = stats.p_hat;
                r.y_lo = stats.ci_lo;
                r.y_hi = stats.ci_hi;
                break;
            }
        }
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace ftcc
