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

// Exact convex-hull membership.
//
// Feasibility of  sum_j lambda_j v_j = x,  sum_j lambda_j = 1,  lambda >= 0
// is decided by phase 1 of the simplex method on an integer tableau. Pivots
// use the fraction-free update
//
//     T'[i][j] = (p * T[i][j] - T[i][s] * T[r][j]) / D,   D' = p,
//
// where p = T[r][s] is the pivot and D the previous pivot. Every division is
// exact (entries stay minors of the initial matrix) and the actual tableau is
// T / D with D > 0. Bland's rule guarantees termination on the heavily
// degenerate systems lower-dimensional polytopes produce.

#include <algorithm>

#include "polycode/error.hpp"
#include "polycode/lattice.hpp"

namespace polycode::lattice {

namespace {

bool simplex_feasible(std::vector<std::vector<Int>> rows, std::vector<Int> rhs, std::size_t cols) {
    const std::size_t m = rows.size();
    const std::size_t width = cols + m + 1;  // structural, artificial, rhs
    const std::size_t rhs_col = width - 1;

    std::vector<std::vector<Int>> t(m + 1, std::vector<Int>(width, Int(0)));
    for (std::size_t i = 0; i < m; ++i) {
        const bool flip = rhs[i] < 0;
        for (std::size_t j = 0; j < cols; ++j) t[i][j] = flip ? Int(-rows[i][j]) : rows[i][j];
        t[i][cols + i] = 1;
        t[i][rhs_col] = flip ? Int(-rhs[i]) : rhs[i];
    }
    // Phase-1 reduced costs: minimise the sum of artificials.
    for (std::size_t j = 0; j < cols; ++j) {
        Int s = 0;
        for (std::size_t i = 0; i < m; ++i) s += t[i][j];
        t[m][j] = -s;
    }
    {
        Int s = 0;
        for (std::size_t i = 0; i < m; ++i) s += t[i][rhs_col];
        t[m][rhs_col] = -s;
    }

    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) basis[i] = cols + i;
    Int denom = 1;

    while (true) {
        if (t[m][rhs_col] == 0) return true;

        std::size_t enter = width;
        for (std::size_t j = 0; j < rhs_col; ++j) {
            if (t[m][j] < 0) {
                enter = j;
                break;
            }
        }
        if (enter == width) return false;  // optimal with positive infeasibility

        std::size_t leave = m;
        for (std::size_t i = 0; i < m; ++i) {
            if (t[i][enter] <= 0) continue;
            if (leave == m) {
                leave = i;
                continue;
            }
            // t[i][rhs]/t[i][enter] vs t[leave][rhs]/t[leave][enter]
            const Int lhs = t[i][rhs_col] * t[leave][enter];
            const Int cur = t[leave][rhs_col] * t[i][enter];
            if (lhs < cur || (lhs == cur && basis[i] < basis[leave])) leave = i;
        }
        if (leave == m) return false;  // unbounded direction; cannot occur in phase 1

        const Int pivot = t[leave][enter];
        const std::vector<Int>& prow = t[leave];
        for (std::size_t i = 0; i <= m; ++i) {
            if (i == leave) continue;
            const Int factor = t[i][enter];
            std::vector<Int>& row = t[i];
            if (factor == 0) {
                if (pivot != denom) {
                    for (std::size_t j = 0; j < width; ++j) {
                        if (row[j] != 0) row[j] = row[j] * pivot / denom;
                    }
                }
                continue;
            }
            for (std::size_t j = 0; j < width; ++j) {
                row[j] = (pivot * row[j] - factor * prow[j]) / denom;
            }
        }
        denom = pivot;
        basis[leave] = enter;
    }
}

}  // namespace

bool in_convex_hull(std::span<const Point> generators, const Point& x) {
    if (generators.empty()) return false;
    const std::size_t n = x.dim();
    for (const Point& g : generators) {
        if (g.dim() != n) throw Error(ErrorKind::DimensionMismatch, "generator and point dimensions differ");
        if (g == x) return true;
    }
    if (generators.size() == 1) return false;

    // Bounding box rejection; constant coordinates drop out of the system.
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < n; ++i) {
        Int lo = generators[0][i];
        Int hi = lo;
        for (const Point& g : generators) {
            if (g[i] < lo) lo = g[i];
            if (g[i] > hi) hi = g[i];
        }
        if (x[i] < lo || x[i] > hi) return false;
        if (lo != hi) active.push_back(i);
    }

    const std::size_t cols = generators.size();
    std::vector<std::vector<Int>> rows;
    std::vector<Int> rhs;
    rows.reserve(active.size() + 1);
    for (std::size_t i : active) {
        std::vector<Int> row(cols);
        for (std::size_t j = 0; j < cols; ++j) row[j] = generators[j][i];
        rows.push_back(std::move(row));
        rhs.push_back(x[i]);
    }
    rows.emplace_back(cols, Int(1));
    rhs.emplace_back(1);
    return simplex_feasible(std::move(rows), std::move(rhs), cols);
}

Int determinant(std::vector<std::vector<Int>> m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    Int sign = 1;
    Int prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t swap = k + 1;
            while (swap < n && m[swap][k] == 0) ++swap;
            if (swap == n) return 0;
            std::swap(m[k], m[swap]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

}  // namespace polycode::lattice
