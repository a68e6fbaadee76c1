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

#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace polycode::ff {

/// Field element, stored as its canonical index in 0..q-1.
///
/// Prime fields use the residue itself. Extension fields F_{p^e} use the
/// base-p encoding sum c_i p^i of the polynomial sum c_i x^i, reduced modulo
/// the lexicographically least monic irreducible polynomial of degree e
/// (coefficients compared constant term first). Index 0 is the additive
/// identity and index 1 the multiplicative identity in both cases.
using Elem = std::uint16_t;

inline constexpr Elem kZero = 0;
inline constexpr Elem kOne = 1;

class FieldTable {
 public:
    static constexpr std::uint32_t kMaxOrder = 1U << 16;
    // Full q*q addition table is built up to this order.
    static constexpr std::uint32_t kAddTableLimit = 256;

    /// Throws Error{NotAPrimePower} or Error{TooSmall}.
    explicit FieldTable(std::uint32_t q);

    std::uint32_t order() const noexcept { return q_; }
    std::uint32_t characteristic() const noexcept { return p_; }
    std::uint32_t degree() const noexcept { return e_; }
    bool is_prime_field() const noexcept { return e_ == 1; }

    /// Monic modulus, coefficients low degree first (size e+1). For prime
    /// fields this is x, i.e. {0, 1}.
    const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }

    /// Least element of full multiplicative order.
    Elem primitive() const noexcept { return exp_[1]; }

    Elem add(Elem a, Elem b) const noexcept {
        if (!add_table_.empty()) return add_table_[static_cast<std::size_t>(a) * q_ + b];
        return add_slow(a, b);
    }
    Elem neg(Elem a) const noexcept { return neg_[a]; }
    Elem sub(Elem a, Elem b) const noexcept { return add(a, neg_[b]); }
    Elem mul(Elem a, Elem b) const noexcept {
        if (a == 0 || b == 0) return 0;
        std::uint32_t s = log_[a] + log_[b];
        if (s >= q_ - 1) s -= q_ - 1;
        return exp_[s];
    }
    /// Throws Error{DivisionByZero} for a == 0.
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, std::uint64_t exponent) const noexcept;

    /// Discrete log base primitive(); a must be nonzero.
    std::uint32_t log(Elem a) const noexcept { return log_[a]; }
    /// primitive()^k.
    Elem exp(std::uint64_t k) const noexcept { return exp_[k % (q_ - 1)]; }

    /// Nonzero elements in ascending index order (1, 2, ..., q-1).
    std::span<const Elem> nonzero_elements() const noexcept { return nonzero_; }

    /// Direct access for kernels; empty when q > kAddTableLimit.
    std::span<const Elem> add_table() const noexcept { return add_table_; }

 private:
    Elem add_slow(Elem a, Elem b) const noexcept;

    std::uint32_t q_;
    std::uint32_t p_;
    std::uint32_t e_;
    std::vector<std::uint32_t> modulus_;
    std::vector<Elem> exp_;
    std::vector<std::uint32_t> log_;
    std::vector<Elem> neg_;
    std::vector<Elem> add_table_;
    std::vector<Elem> nonzero_;
};

/// Returns (p, e) with q = p^e, or (0, 0) if q is not a prime power.
std::pair<std::uint32_t, std::uint32_t> prime_power_decompose(std::uint32_t q) noexcept;

/// Irreducibility over F_p of a monic polynomial (coefficients low degree
/// first), by trial division against every monic polynomial of degree at
/// most deg/2.
bool is_irreducible(const std::vector<std::uint32_t>& monic, std::uint32_t p);

}  // namespace polycode::ff
