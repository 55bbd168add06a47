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

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace ftcc {

/// Thrown when a MAJ3 error rate is too large for the single-triple map to
/// have a stable low-error fixed point.
class AboveThresholdError : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

/// Which constant converts the 3-bit gate error p into the MAJ3 output error.
///
/// kComponentSum is the canonical one: (2/3)p + (2/3)p + (4/7 + 4/7)(8/9)p
/// = (148/63)p. kMainText is the rounded (52/21)p figure, kept so headline
/// numbers quoted against it can be reproduced.
enum class EpsilonConstant { kComponentSum, kMainText };

inline constexpr double kClassicalShare = 8.0 / 9.0;
inline constexpr double kWirePrepShare = 2.0 / 3.0;
inline constexpr double kEpsilonPerP = 148.0 / 63.0;
inline constexpr double kEpsilonPerPMainText = 52.0 / 21.0;
inline constexpr double kEpsilonPrimePerP = 74.0 / 63.0;
/// Per-output intrinsic error of a MAJ1 or AMP, as a fraction of p_c.
inline constexpr double kSingleOutputShare = 4.0 / 7.0;

template <typename Scalar = double>
struct PhysicalNoise {
    Scalar p{0};
    Scalar p_c{0};        // classical (non-Z) share of the 3-bit gate error
    Scalar wire_prep{0};  // per wire or |0> preparation location
};

template <typename Scalar = double>
struct Maj3Rates {
    Scalar epsilon{0};        // per-output error of a full MAJ3
    Scalar epsilon_prime{0};  // MAJ1 output fed into a computation (no final AMP)
    Scalar epsilon_zero{0};   // incipient rate seen by the corrector right after encoding
};

template <typename Scalar = double>
struct EncodingRates {
    Scalar q_i{0};  // AMP control-input error
    Scalar q_o{0};  // independent per-output AMP error
    Scalar ap{0};   // q_i + q_o
};

template <typename Scalar = double>
struct DerivedRates {
    PhysicalNoise<Scalar> noise;
    Maj3Rates<Scalar> maj3;
    EncodingRates<Scalar> encoding;
    bool clamped{false};  // set when epsilon was projected onto [0, 1]
};

namespace detail {
template <typename Scalar>
Scalar clamp_unit(Scalar x, bool &clamped) {
    if (x > Scalar(1)) {
        clamped = true;
        return Scalar(1);
    }
    return x;
}
}  // namespace detail

/// Maps the 3-bit gate error probability p onto every per-location rate.
template <typename Scalar = double>
DerivedRates<Scalar> derive_rates(Scalar p, EpsilonConstant constant = EpsilonConstant::kComponentSum) {
    if (!(p >= Scalar(0) && p <= Scalar(1))) {
        throw std::invalid_argument("derive_rates: p must lie in [0, 1], got " + std::to_string(double(p)));
    }
    DerivedRates<Scalar> r;
    r.noise.p = p;
    r.noise.p_c = Scalar(kClassicalShare) * p;
    r.noise.wire_prep = Scalar(kWirePrepShare) * p;

    const Scalar per_p = constant == EpsilonConstant::kComponentSum ? Scalar(kEpsilonPerP) : Scalar(kEpsilonPerPMainText);
    const Scalar eps = per_p * p;
    // eps - (2/3)p - (4/7)p_c; for the canonical constant this is eps / 2 exactly.
    const Scalar eps_prime = constant == EpsilonConstant::kComponentSum
                                 ? Scalar(kEpsilonPrimePerP) * p
                                 : eps - Scalar(kWirePrepShare) * p - Scalar(kSingleOutputShare) * r.noise.p_c;

    r.encoding.q_i = Scalar(kSingleOutputShare) * r.noise.p_c;
    r.encoding.q_o = Scalar(4.0 / 3.0) * p + Scalar(1.0 / 7.0) * r.noise.p_c;
    r.encoding.ap = r.encoding.q_i + r.encoding.q_o;

    r.maj3.epsilon = detail::clamp_unit(eps, r.clamped);
    r.maj3.epsilon_prime = detail::clamp_unit(eps_prime, r.clamped);
    r.maj3.epsilon_zero = detail::clamp_unit(r.encoding.ap + Scalar(2) * r.noise.wire_prep, r.clamped);
    return r;
}

template <typename Scalar = double>
Scalar epsilon_of(Scalar p, EpsilonConstant constant = EpsilonConstant::kComponentSum) {
    return derive_rates<Scalar>(p, constant).maj3.epsilon;
}

/// Probability that the strict majority of three independent bits, each wrong
/// with probability eta, is wrong.
template <typename Scalar>
Scalar majority_wrong(Scalar eta) {
    return eta * eta * (Scalar(3) - Scalar(2) * eta);
}

/// One restorative step of the per-bit error probability for a MAJ3 whose
/// inputs carry independent errors eta and whose outputs all flip with epsilon.
template <typename Scalar>
Scalar single_triple_map(Scalar eta, Scalar epsilon) {
    const Scalar m = majority_wrong(eta);
    return (Scalar(1) - epsilon) * m + epsilon * (Scalar(1) - m);
}

/// Stable fixed points (low, high) of single_triple_map.
/// Throws AboveThresholdError for epsilon > 1/6.
template <typename Scalar>
std::pair<Scalar, Scalar> jvn_stable_eta(Scalar epsilon) {
    if (!(epsilon >= Scalar(0) && epsilon <= Scalar(1))) {
        throw std::invalid_argument("jvn_stable_eta: epsilon must lie in [0, 1]");
    }
    const Scalar num = Scalar(1) - Scalar(6) * epsilon;
    if (num < Scalar(0)) {
        throw AboveThresholdError("jvn_stable_eta: epsilon above 1/6 has no stable low-error fixed point");
    }
    using std::sqrt;
    const Scalar root = sqrt(num / (Scalar(1) - Scalar(2) * epsilon));
    return {Scalar(0.5) * (Scalar(1) - root), Scalar(0.5) * (Scalar(1) + root)};
}

}  // namespace ftcc
