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

#include "ftcc/bernstein.hpp"

#include <sstream>
#include <stdexcept>

namespace ftcc {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("BernsteinPoly: coefficient overflow");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("BernsteinPoly: coefficient overflow");
    return r;
}

}  // namespace

std::int64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::int64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

BernsteinPoly::BernsteinPoly(int degree) : degree_(degree), coeffs_(degree + 1, 0) {
    if (degree < 0) throw std::invalid_argument("BernsteinPoly: negative degree");
}

BernsteinPoly::BernsteinPoly(int degree, std::vector<std::int64_t> coeffs) : degree_(degree), coeffs_(std::move(coeffs)) {
    if (degree < 0 || coeffs_.size() != static_cast<size_t>(degree + 1)) {
        throw std::invalid_argument("BernsteinPoly: need degree + 1 coefficients");
    }
    for (auto c : coeffs_) {
        if (c < 0) throw std::invalid_argument("BernsteinPoly: coefficients must be non-negative");
    }
}

BernsteinPoly BernsteinPoly::one(int degree) {
    BernsteinPoly r(degree);
    for (int k = 0; k <= degree; ++k) r.coeffs_[k] = binomial(degree, k);
    return r;
}

BernsteinPoly BernsteinPoly::monomial(int degree, int k) {
    BernsteinPoly r(degree);
    if (k < 0 || k > degree) throw std::invalid_argument("BernsteinPoly::monomial: k out of range");
    r.coeffs_[k] = 1;
    return r;
}

bool BernsteinPoly::is_zero() const {
    for (auto c : coeffs_) {
        if (c != 0) return false;
    }
    return true;
}

BernsteinPoly BernsteinPoly::elevated(int new_degree) const {
    if (new_degree < degree_) throw std::invalid_argument("BernsteinPoly::elevated: cannot lower degree");
    if (new_degree == degree_) return *this;
    return *this * one(new_degree - degree_);
}

BernsteinPoly BernsteinPoly::complement() const {
    BernsteinPoly r = one(degree_);
    for (int k = 0; k <= degree_; ++k) {
        r.coeffs_[k] -= coeffs_[k];
        if (r.coeffs_[k] < 0) throw std::domain_error("BernsteinPoly::complement: not a probability polynomial");
    }
    return r;
}

BernsteinPoly &BernsteinPoly::operator+=(const BernsteinPoly &other) {
    if (other.degree_ != degree_) {
        const int d = std::max(degree_, other.degree_);
        *this = elevated(d);
        return *this += other.elevated(d);
    }
    for (int k = 0; k <= degree_; ++k) coeffs_[k] = checked_add(coeffs_[k], other.coeffs_[k]);
    return *this;
}

BernsteinPoly operator*(const BernsteinPoly &a, const BernsteinPoly &b) {
    BernsteinPoly r(a.degree_ + b.degree_);
    for (int i = 0; i <= a.degree_; ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (int j = 0; j <= b.degree_; ++j) {
            if (b.coeffs_[j] == 0) continue;
            r.coeffs_[i + j] = checked_add(r.coeffs_[i + j], checked_mul(a.coeffs_[i], b.coeffs_[j]));
        }
    }
    return r;
}

BernsteinPoly operator*(std::int64_t s, BernsteinPoly a) {
    if (s < 0) throw std::invalid_argument("BernsteinPoly: negative scale");
    for (auto &c : a.coeffs_) c = checked_mul(c, s);
    return a;
}

BernsteinPoly BernsteinPoly::compose(const BernsteinPoly &inner) const {
    // f(g) = sum_k c_k g^k (1 - g)^(d - k)
    const BernsteinPoly g = inner;
    const BernsteinPoly h = inner.complement();
    const int out_degree = degree_ * inner.degree_;
    BernsteinPoly r(out_degree);
    std::vector<BernsteinPoly> gpow{BernsteinPoly::one(0)};
    std::vector<BernsteinPoly> hpow{BernsteinPoly::one(0)};
    for (int k = 1; k <= degree_; ++k) {
        gpow.push_back(gpow.back() * g);
        hpow.push_back(hpow.back() * h);
    }
    for (int k = 0; k <= degree_; ++k) {
        if (coeffs_[k] == 0) continue;
        r += coeffs_[k] * (gpow[k] * hpow[degree_ - k]);
    }
    return r;
}

int BernsteinPoly::low_order() const {
    for (int k = 0; k <= degree_; ++k) {
        if (coeffs_[k] != 0) return k;
    }
    return -1;
}

std::string BernsteinPoly::str() const {
    std::ostringstream out;
    out << degree_ << ':';
    for (int k = 0; k <= degree_; ++k) out << ' ' << coeffs_[k];
    return out.str();
}

}  // namespace ftcc
