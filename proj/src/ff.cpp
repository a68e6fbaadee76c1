/*
 * Copyright 2026 The polycode Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "polycode/ff.hpp"

#include <string>

#include "polycode/error.hpp"

namespace polycode::ff {

namespace {

using Poly = std::vector<std::uint32_t>;

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo monic m over F_p.
Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
    trim(a);
    const std::size_t dm = m.size() - 1;
    while (a.size() > dm && !a.empty()) {
        const std::uint32_t lead = a.back();
        const std::size_t shift = a.size() - 1 - dm;
        for (std::size_t i = 0; i <= dm; ++i) {
            a[shift + i] = (a[shift + i] + p - (lead * m[i]) % p) % p;
        }
        trim(a);
    }
    return a;
}

Poly digits_of(std::uint32_t v, std::uint32_t p, std::uint32_t e) {
    Poly d(e, 0);
    for (std::uint32_t i = 0; i < e; ++i) {
        d[i] = v % p;
        v /= p;
    }
    return d;
}

std::uint32_t encode(const Poly& d, std::uint32_t p) {
    std::uint32_t v = 0;
    for (std::size_t i = d.size(); i-- > 0;) v = v * p + d[i];
    return v;
}

std::uint32_t raw_mul(std::uint32_t a, std::uint32_t b, const Poly& modulus, std::uint32_t p,
                      std::uint32_t e) {
    if (e == 1) return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) % p);
    const Poly da = digits_of(a, p, e);
    const Poly db = digits_of(b, p, e);
    Poly prod(2 * e, 0);
    for (std::uint32_t i = 0; i < e; ++i)
        for (std::uint32_t j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
    Poly r = poly_mod(prod, modulus, p);
    r.resize(e, 0);
    return encode(r, p);
}

}  // namespace

std::pair<std::uint32_t, std::uint32_t> prime_power_decompose(std::uint32_t q) noexcept {
    if (q < 2) return {0, 0};
    std::uint32_t p = 0;
    for (std::uint32_t d = 2; d * d <= q; ++d) {
        if (q % d == 0) {
            p = d;
            break;
        }
    }
    if (p == 0) return {q, 1};
    std::uint32_t e = 0;
    while (q % p == 0) {
        q /= p;
        ++e;
    }
    if (q != 1) return {0, 0};
    return {p, e};
}

bool is_irreducible(const std::vector<std::uint32_t>& monic, std::uint32_t p) {
    const std::size_t deg = monic.size() - 1;
    if (deg <= 1) return deg == 1;
    for (std::size_t d = 1; d <= deg / 2; ++d) {
        // Monic divisor candidates of degree d: p^d choices of lower coefficients.
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < d; ++i) count *= p;
        for (std::uint64_t c = 0; c < count; ++c) {
            Poly div(d + 1, 0);
            std::uint64_t v = c;
            for (std::size_t i = 0; i < d; ++i) {
                div[i] = static_cast<std::uint32_t>(v % p);
                v /= p;
            }
            div[d] = 1;
            if (poly_mod(monic, div, p).empty()) return false;
        }
    }
    return true;
}

FieldTable::FieldTable(std::uint32_t q) : q_(q) {
    if (q < 3) throw Error(ErrorKind::TooSmall, "field order must be at least 3, got " + std::to_string(q));
    if (q > kMaxOrder)
        throw Error(ErrorKind::InvalidArgument, "field order above 65536 is not supported: " + std::to_string(q));
    const auto [p, e] = prime_power_decompose(q);
    if (p == 0) throw Error(ErrorKind::NotAPrimePower, std::to_string(q) + " is not a prime power");
    p_ = p;
    e_ = e;

    if (e_ == 1) {
        modulus_ = {0, 1};
    } else {
        // Lexicographic order on (c_0, ..., c_{e-1}) with c_0 most significant.
        std::uint32_t lower = 1;
        for (std::uint32_t i = 0; i < e_; ++i) lower *= p_;
        for (std::uint32_t rank = 0; rank < lower; ++rank) {
            Poly m(e_ + 1, 0);
            std::uint32_t v = rank;
            for (std::uint32_t i = e_; i-- > 0;) {
                m[i] = v % p_;
                v /= p_;
            }
            m[e_] = 1;
            if (is_irreducible(m, p_)) {
                modulus_ = m;
                break;
            }
        }
    }

    // Least element of order q-1.
    Elem g = 0;
    for (std::uint32_t cand = 1; cand < q_ && g == 0; ++cand) {
        std::uint32_t x = cand;
        std::uint32_t order = 1;
        while (x != 1) {
            x = raw_mul(x, cand, modulus_, p_, e_);
            ++order;
        }
        if (order == q_ - 1) g = static_cast<Elem>(cand);
    }

    exp_.resize(q_ - 1);
    log_.assign(q_, 0);
    std::uint32_t x = 1;
    for (std::uint32_t i = 0; i + 1 < q_; ++i) {
        exp_[i] = static_cast<Elem>(x);
        log_[x] = i;
        x = raw_mul(x, g, modulus_, p_, e_);
    }

    neg_.resize(q_);
    for (std::uint32_t a = 0; a < q_; ++a) {
        std::uint32_t r = 0;
        std::uint32_t scale = 1;
        std::uint32_t v = a;
        for (std::uint32_t i = 0; i < e_; ++i) {
            r += ((p_ - v % p_) % p_) * scale;
            v /= p_;
            scale *= p_;
        }
        neg_[a] = static_cast<Elem>(r);
    }

    if (q_ <= kAddTableLimit) {
        add_table_.resize(static_cast<std::size_t>(q_) * q_);
        for (std::uint32_t a = 0; a < q_; ++a)
            for (std::uint32_t b = 0; b < q_; ++b)
                add_table_[static_cast<std::size_t>(a) * q_ + b] = add_slow(static_cast<Elem>(a), static_cast<Elem>(b));
    }

    nonzero_.resize(q_ - 1);
    for (std::uint32_t a = 1; a < q_; ++a) nonzero_[a - 1] = static_cast<Elem>(a);
}

Elem FieldTable::add_slow(Elem a, Elem b) const noexcept {
    if (e_ == 1) {
        std::uint32_t s = static_cast<std::uint32_t>(a) + b;
        return static_cast<Elem>(s >= p_ ? s - p_ : s);
    }
    if (p_ == 2) return static_cast<Elem>(a ^ b);
    std::uint32_t r = 0;
    std::uint32_t scale = 1;
    std::uint32_t va = a;
    std::uint32_t vb = b;
    for (std::uint32_t i = 0; i < e_; ++i) {
        r += ((va % p_ + vb % p_) % p_) * scale;
        va /= p_;
        vb /= p_;
        scale *= p_;
    }
    return static_cast<Elem>(r);
}

Elem FieldTable::inv(Elem a) const {
    if (a == 0) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
    const std::uint32_t l = log_[a];
    return exp_[l == 0 ? 0 : q_ - 1 - l];
}

Elem FieldTable::pow(Elem a, std::uint64_t exponent) const noexcept {
    if (exponent == 0) return kOne;
    if (a == 0) return kZero;
    return exp_[(static_cast<std::uint64_t>(log_[a]) * (exponent % (q_ - 1))) % (q_ - 1)];
}

}  // namespace polycode::ff
