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

#include "polycode/smith.hpp"

#include "polycode/error.hpp"

namespace polycode::decomp {

std::vector<Int> smith_invariants(std::vector<std::vector<Int>> m) {
    std::vector<Int> diag;
    const std::size_t rows = m.size();
    if (rows == 0) return diag;
    const std::size_t cols = m[0].size();

    for (std::size_t t = 0; t < rows && t < cols; ++t) {
        while (true) {
            // Smallest nonzero |entry| of the trailing block becomes the pivot.
            std::size_t pr = rows;
            std::size_t pc = cols;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (m[i][j] != 0 && (pr == rows || iabs(m[i][j]) < iabs(m[pr][pc]))) {
                        pr = i;
                        pc = j;
                    }
            if (pr == rows) return diag;
            std::swap(m[t], m[pr]);
            for (auto& row : m) std::swap(row[t], row[pc]);

            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (m[i][t] == 0) continue;
                const Int f = m[i][t] / m[t][t];
                for (std::size_t j = t; j < cols; ++j) m[i][j] -= f * m[t][j];
                if (m[i][t] != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (m[t][j] == 0) continue;
                const Int f = m[t][j] / m[t][t];
                for (std::size_t i = t; i < rows; ++i) m[i][j] -= f * m[i][t];
                if (m[t][j] != 0) clean = false;
            }
            if (!clean) continue;

            // Pivot must divide the rest of the block; otherwise fold the
            // offending row into row t and repeat.
            std::size_t bad = rows;
            for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (m[i][j] % m[t][t] != 0) {
                        bad = i;
                        break;
                    }
            if (bad == rows) break;
            for (std::size_t j = t; j < cols; ++j) m[t][j] += m[bad][j];
        }
        diag.push_back(iabs(m[t][t]));
    }
    return diag;
}

bool is_primitive_extendable(const std::vector<std::vector<Int>>& vectors) {
    if (vectors.empty()) return true;
    const std::size_t n = vectors[0].size();
    for (const auto& v : vectors)
        if (v.size() != n) throw Error(ErrorKind::DimensionMismatch, "vectors of different lengths");
    if (vectors.size() > n)
        throw Error(ErrorKind::TooManyVectors, std::to_string(vectors.size()) + " vectors in Z^" + std::to_string(n));
    const std::vector<Int> inv = smith_invariants(vectors);
    if (inv.size() != vectors.size()) return false;
    for (const Int& d : inv)
        if (d != 1) return false;
    return true;
}

}  // namespace polycode::decomp
