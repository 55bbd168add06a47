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

#include <cstdint>
#include <string>
#include <vector>

namespace ftcc {

/// Homogeneous polynomial of fixed degree d in (x, 1 - x):
///
///     f(x) = sum_k c_k x^k (1 - x)^(d - k),   c_k >= 0 integer.
///
/// Every probability built from products of "fails" / "does not fail" factors
/// stays in this form, so evaluation is a sum of non-negative terms and keeps
/// full relative precision at any x in [0, 1]. Complements are taken against
/// (x + (1 - x))^d, whose coefficients are the binomials C(d, k).
class BernsteinPoly {
   public:
    BernsteinPoly() = default;
    /// Zero polynomial of the given degree.
    explicit BernsteinPoly(int degree);
    BernsteinPoly(int degree, std::vector<std::int64_t> coeffs);

    static BernsteinPoly one(int degree);
    static BernsteinPoly zero(int degree) { return BernsteinPoly(degree); }
    /// x^k (1-x)^(d-k)
    static BernsteinPoly monomial(int degree, int k);

    int degree() const { return degree_; }
    const std::vector<std::int64_t> &coeffs() const { return coeffs_; }
    bool is_zero() const;

    /// Same function written at a higher degree (multiplied by (x + 1 - x)^m).
    BernsteinPoly elevated(int new_degree) const;
    /// one(degree) - *this; throws if a coefficient would go negative.
    BernsteinPoly complement() const;

    BernsteinPoly &operator+=(const BernsteinPoly &other);
    friend BernsteinPoly operator+(BernsteinPoly a, const BernsteinPoly &b) { return a += b; }
    friend BernsteinPoly operator*(const BernsteinPoly &a, const BernsteinPoly &b);
    friend BernsteinPoly operator*(std::int64_t s, BernsteinPoly a);
    friend bool operator==(const BernsteinPoly &a, const BernsteinPoly &b) = default;

    /// Composition f(g(x)) where g is itself in (x, 1-x) form.
    BernsteinPoly compose(const BernsteinPoly &inner) const;

    template <typename Scalar>
    Scalar operator()(Scalar x) const {
        const Scalar y = Scalar(1) - x;
        // Powers built incrementally; terms are all non-negative.
        std::vector<Scalar> ypow(degree_ + 1);
        ypow[0] = Scalar(1);
        for (int k = 1; k <= degree_; ++k) ypow[k] = ypow[k - 1] * y;
        Scalar xpow = Scalar(1);
        Scalar sum = Scalar(0);
        for (int k = 0; k <= degree_; ++k) {
            if (coeffs_[k] != 0) sum += Scalar(coeffs_[k]) * xpow * ypow[degree_ - k];
            xpow *= x;
        }
        return sum;
    }

    /// Lowest k with a nonzero coefficient: the order of the zero at x = 0.
    int low_order() const;

    std::string str() const;

   private:
    int degree_{0};
    std::vector<std::int64_t> coeffs_{0};
};

std::int64_t binomial(int n, int k);

}  // namespace ftcc
