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

// Candidate ordering shared by the serial and parallel distance searches.
//
// Messages are normalised so that their first nonzero entry is 1. Ordinal 0
// is (0, ..., 0, 1). The remaining messages come in blocks by the position f
// of the leading 1, for f = k-2 down to 0. Inside block f the free entries
// m_{f+1}, ..., m_{k-2} form a base-q "prefix index" (m_{f+1} most
// significant) and the last entry m_{k-1} is the low digit:
//     ordinal = 1 + offset(f) + prefix_index * q + m_{k-1}.

#pragma once

#include <cstdint>
#include <vector>

#include "polycode/ff.hpp"

namespace polycode::toric {
class GeneratorMatrix;
}

namespace polycode::toric::detail {

/// Budget and size guards common to both searches; returns the number of
/// candidate messages. Throws Error{BudgetExceeded} or Error{EmptyInput}.
std::uint64_t check_search_size(const GeneratorMatrix& g, std::uint64_t budget);

inline constexpr unsigned kOrdinalBits = 38;
inline constexpr std::uint64_t kOrdinalMask = (std::uint64_t{1} << kOrdinalBits) - 1;

inline std::uint64_t pack(std::uint64_t weight, std::uint64_t ordinal) { return (weight << kOrdinalBits) | ordinal; }
inline std::uint64_t packed_weight(std::uint64_t v) { return v >> kOrdinalBits; }
inline std::uint64_t packed_ordinal(std::uint64_t v) { return v & kOrdinalMask; }

inline std::uint64_t upow(std::uint64_t b, std::size_t e) {
    std::uint64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

/// offset(f): number of ordinals (excluding ordinal 0) before block f.
inline std::uint64_t block_offset(std::uint32_t q, std::size_t k, std::size_t f) {
    std::uint64_t off = 0;
    for (std::size_t g = k - 2; g > f; --g) off += upow(q, k - 1 - g);
    return off;
}

inline std::vector<ff::Elem> message_of(std::uint64_t ordinal, std::uint32_t q, std::size_t k) {
    std::vector<ff::Elem> m(k, 0);
    if (ordinal == 0) {
        m[k - 1] = 1;
        return m;
    }
    std::uint64_t o = ordinal - 1;
    for (std::size_t f = k - 1; f-- > 0;) {
        const std::uint64_t block = upow(q, k - 1 - f);
        if (o < block) {
            m[f] = 1;
            m[k - 1] = static_cast<ff::Elem>(o % q);
            std::uint64_t prefix = o / q;
            for (std::size_t j = k - 1; j-- > f + 1;) {
                m[j] = static_cast<ff::Elem>(prefix % q);
                prefix /= q;
            }
            return m;
        }
        o -= block;
    }
    return m;
}

}  // namespace polycode::toric::detail
