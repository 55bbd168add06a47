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

#include <cmath>

#include "gtest/gtest.h"

#include "ftcc/error_model.hpp"

using namespace ftcc;

TEST(error_model, zero_noise) {
    const auto r = derive_rates(0.0);
    EXPECT_EQ(r.noise.p_c, 0.0);
    EXPECT_EQ(r.noise.wire_prep, 0.0);
    EXPECT_EQ(r.maj3.epsilon, 0.0);
    EXPECT_EQ(r.maj3.epsilon_prime, 0.0);
    EXPECT_EQ(r.maj3.epsilon_zero, 0.0);
    EXPECT_EQ(r.encoding.q_i, 0.0);
    EXPECT_EQ(r.encoding.q_o, 0.0);
    EXPECT_EQ(r.encoding.ap, 0.0);
    EXPECT_FALSE(r.clamped);
}

TEST(error_model, component_sum_epsilon) {
    const double p = 0.01;
    const auto r = derive_rates(p);
    // (2/3)p + (2/3)p + (4/7 + 4/7) p_c with p_c = (8/9)p.
    const double by_components = 2.0 / 3.0 * p + 2.0 / 3.0 * p + 8.0 / 7.0 * (8.0 / 9.0 * p);
    EXPECT_NEAR(r.maj3.epsilon, by_components, 1e-15);
    EXPECT_NEAR(r.maj3.epsilon, 0.02349, 1e-5);
    EXPECT_EQ(r.noise.p_c, 8.0 / 9.0 * p);
    EXPECT_EQ(r.noise.wire_prep, 2.0 / 3.0 * p);
}

TEST(error_model, encoding_rates) {
    const auto r = derive_rates(0.028);
    EXPECT_NEAR(r.encoding.ap, 0.0551, 5e-5);
    EXPECT_NEAR(r.encoding.q_i, 0.01422, 5e-6);
    EXPECT_NEAR(r.encoding.ap, r.encoding.q_i + r.encoding.q_o, 1e-17);
    EXPECT_NEAR(r.encoding.ap / 0.028, 4.0 / 3.0 + 5.0 / 7.0 * 8.0 / 9.0, 1e-12);
}

TEST(error_model, epsilon_prime_is_half_epsilon) {
    for (double p : {1e-6, 1e-3, 0.004, 0.01, 0.05, 0.1, 0.3}) {
        const auto r = derive_rates(p);
        EXPECT_EQ(r.maj3.epsilon_prime, r.maj3.epsilon / 2) << p;
        const double by_definition = r.maj3.epsilon - 2.0 / 3.0 * p - 4.0 / 7.0 * r.noise.p_c;
        EXPECT_NEAR(r.maj3.epsilon_prime, by_definition, 1e-15) << p;
    }
}

TEST(error_model, epsilon_zero) {
    const double p = 0.01;
    const auto r = derive_rates(p);
    EXPECT_NEAR(r.maj3.epsilon_zero, r.encoding.ap + 4.0 / 3.0 * p, 1e-16);
    EXPECT_NEAR(r.maj3.epsilon_zero / p, 3.3, 0.01);
    EXPECT_NEAR(r.maj3.epsilon_zero / r.maj3.epsilon, 1.4, 0.01);
}

TEST(error_model, linear_and_increasing) {
    double last = -1;
    for (int i = 0; i <= 100; ++i) {
        const double p = i * 0.004;
        const double eps = epsilon_of(p);
        EXPECT_GT(eps, last);
        EXPECT_NEAR(eps, 148.0 / 63.0 * p, 1e-15);
        last = eps;
    }
}

TEST(error_model, ap_below_two_p) {
    for (int i = 1; i <= 100; ++i) {
        const double p = i * 0.01;
        EXPECT_LT(derive_rates(p).encoding.ap, 2 * p);
    }
}

TEST(error_model, main_text_constant) {
    const auto r = derive_rates(0.01, EpsilonConstant::kMainText);
    EXPECT_NEAR(r.maj3.epsilon, 52.0 / 21.0 * 0.01, 1e-16);
    EXPECT_NEAR(r.maj3.epsilon_prime, r.maj3.epsilon - 2.0 / 3.0 * 0.01 - 4.0 / 7.0 * r.noise.p_c, 1e-16);
}

TEST(error_model, clamping_is_reported) {
    const auto r = derive_rates(0.9);
    EXPECT_EQ(r.maj3.epsilon, 1.0);
    EXPECT_TRUE(r.clamped);
    EXPECT_FALSE(derive_rates(0.2).clamped);
}

TEST(error_model, rejects_out_of_range) {
    EXPECT_THROW(derive_rates(-0.01), std::invalid_argument);
    EXPECT_THROW(derive_rates(1.01), std::invalid_argument);
    EXPECT_THROW(derive_rates(std::nan("")), std::invalid_argument);
}

TEST(error_model, jvn_fixed_points) {
    const auto [lo0, hi0] = jvn_stable_eta(0.0);
    EXPECT_EQ(lo0, 0.0);
    EXPECT_EQ(hi0, 1.0);

    const auto [lo, hi] = jvn_stable_eta(0.1);
    EXPECT_NEAR(lo, 0.5 * (1 - std::sqrt(0.5)), 1e-15);
    EXPECT_NEAR(lo, 0.14645, 1e-5);
    EXPECT_LE(lo, hi);

    const auto [lo6, hi6] = jvn_stable_eta(1.0 / 6.0);
    EXPECT_NEAR(lo6, 0.5, 1e-7);
    EXPECT_NEAR(hi6, 0.5, 1e-7);

    EXPECT_THROW(jvn_stable_eta(0.17), AboveThresholdError);
    EXPECT_THROW(jvn_stable_eta(-0.1), std::invalid_argument);
}

TEST(error_model, jvn_points_are_fixed) {
    for (int i = 0; i < 166; ++i) {
        const double eps = i * 0.001;
        const auto [lo, hi] = jvn_stable_eta(eps);
        EXPECT_NEAR(single_triple_map(lo, eps), lo, 1e-12) << eps;
        EXPECT_NEAR(single_triple_map(hi, eps), hi, 1e-12) << eps;
    }
}

TEST(error_model, single_triple_map_values) {
    EXPECT_EQ(single_triple_map(0.0, 0.0), 0.0);
    for (double eps : {0.0, 0.1, 0.3, 1.0}) EXPECT_NEAR(single_triple_map(0.5, eps), 0.5, 1e-16);
    EXPECT_NEAR(single_triple_map(0.2, 0.1), 0.9 * 0.104 + 0.1 * 0.896, 1e-15);
    EXPECT_NEAR(single_triple_map(0.2, 0.1), 0.1832, 1e-12);
}

TEST(error_model, iteration_reaches_low_branch) {
    double eta = 0.3;
    for (int i = 0; i < 200; ++i) eta = single_triple_map(eta, 0.05);
    EXPECT_NEAR(eta, jvn_stable_eta(0.05).first, 1e-10);
}

TEST(error_model, long_double_scalar) {
    const auto r = derive_rates<long double>(0.01L);
    EXPECT_NEAR(double(r.maj3.epsilon), 148.0 / 63.0 * 0.01, 1e-15);
}
