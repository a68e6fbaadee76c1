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

// Parallel exhaustive minimum-distance kernel.
//
// Every entry of a toric generator matrix is nonzero, so the last row can be
// used to solve for the final message coordinate: with h_i = -G_i / G_{k-1},
// the word of (m_0, ..., m_{k-2}, c) vanishes at column j exactly when
// c = u_j := sum_i m_i h_i[j]. One pass over u therefore yields a histogram
// of zero counts for all q choices of c at once. The partial sums u are kept
// per digit level, so advancing the message odometer costs one vector update.

#include <omp.h>

#include <atomic>
#include <functional>

#include "message_order.hpp"
#include "polycode/error.hpp"
#include "polycode/toric.hpp"

namespace polycode::toric {

namespace {

struct Kernel {
    const FieldTable& f;
    std::uint32_t q;
    std::size_t k;
    std::size_t n_cols;
    std::vector<std::vector<std::uint32_t>> log_h;  // rows 0..k-2
    std::vector<Elem> exp2;                         // exp table of length 2(q-1)
    std::atomic<std::uint64_t>* best;

    Elem scaled(Elem m, std::size_t row, std::size_t c) const { return exp2[f.log(m) + log_h[row][c]]; }

    void offer(std::uint64_t packed) const {
        std::uint64_t cur = best->load(std::memory_order_relaxed);
        while (packed < cur && !best->compare_exchange_weak(cur, packed, std::memory_order_relaxed)) {
        }
    }

    void evaluate(const Elem* u, std::uint64_t base_ordinal, std::vector<std::uint32_t>& hist) const {
        std::fill(hist.begin(), hist.end(), 0U);
        for (std::size_t c = 0; c < n_cols; ++c) ++hist[u[c]];
        std::uint32_t top = 0;
        Elem arg = 0;
        for (std::uint32_t c = 0; c < q; ++c)
            if (hist[c] > top) {
                top = hist[c];
                arg = static_cast<Elem>(c);
            }
        offer(detail::pack(n_cols - top, base_ordinal + arg));
    }

    // out = prev + m * h_row
    void step(const Elem* prev, Elem m, std::size_t row, Elem* out) const {
        const std::uint32_t lm = f.log(m);
        const std::uint32_t* lh = log_h[row].data();
        for (std::size_t c = 0; c < n_cols; ++c) out[c] = f.add(prev[c], exp2[lm + lh[c]]);
    }
};

}  // namespace

SearchResult min_weight_search(const GeneratorMatrix& g, const SearchOptions& opts) {
    const std::uint64_t count = detail::check_search_size(g, opts.budget);
    const FieldTable& f = g.field();
    const std::uint32_t q = f.order();
    const std::size_t k = g.rows();
    const std::size_t n_cols = g.cols();

    std::atomic<std::uint64_t> best{detail::pack(n_cols, 0)};
    if (k >= 2) {
        Kernel ker{f, q, k, n_cols, {}, {}, &best};
        ker.log_h.resize(k - 1);
        auto last = g.row(k - 1);
        for (std::size_t r = 0; r + 1 < k; ++r) {
            auto row = g.row(r);
            ker.log_h[r].resize(n_cols);
            for (std::size_t c = 0; c < n_cols; ++c) ker.log_h[r][c] = f.log(f.neg(f.div(row[c], last[c])));
        }
        ker.exp2.resize(2 * (q - 1));
        for (std::size_t i = 0; i < ker.exp2.size(); ++i) ker.exp2[i] = f.exp(i);

        // Tasks: leading position f plus the top `split` free digits.
        struct Task {
            std::size_t lead;
            std::size_t split;
            std::uint64_t top;
        };
        std::vector<Task> tasks;
        for (std::size_t lead = k - 1; lead-- > 0;) {
            const std::size_t free = k - 2 - lead;
            std::size_t split = 0;
            while (split < free && detail::upow(q, split) < 64) ++split;
            for (std::uint64_t t = 0; t < detail::upow(q, split); ++t) tasks.push_back({lead, split, t});
        }

        const int threads = opts.threads > 0 ? opts.threads : omp_get_max_threads();
#pragma omp parallel num_threads(threads)
        {
            std::vector<std::vector<Elem>> level(k, std::vector<Elem>(n_cols));
            std::vector<std::uint32_t> hist(q);
#pragma omp for schedule(dynamic, 1)
            for (std::size_t ti = 0; ti < tasks.size(); ++ti) {
                const Task& task = tasks[ti];
                const std::size_t lead = task.lead;
                const std::size_t free = k - 2 - lead;
                const std::uint64_t base = 1 + detail::block_offset(q, k, lead);

                // Level 0 holds h_lead (leading coefficient 1).
                for (std::size_t c = 0; c < n_cols; ++c) level[0][c] = ker.exp2[ker.log_h[lead][c]];
                const Elem* cur = level[0].data();
                std::uint64_t rem = task.top;
                std::uint64_t scale = task.split == 0 ? 1 : detail::upow(q, task.split - 1);
                for (std::size_t j = 1; j <= task.split; ++j) {
                    const Elem digit = static_cast<Elem>(rem / scale);
                    rem %= scale;
                    scale /= q;
                    if (digit != 0) {
                        ker.step(cur, digit, lead + j, level[j].data());
                        cur = level[j].data();
                    }
                }
                const std::uint64_t low_count = detail::upow(q, free - task.split);
                const std::uint64_t prefix_base = task.top * low_count;

                if (task.split == free) {
                    ker.evaluate(cur, base + prefix_base * q, hist);
                } else {
                    std::function<void(std::size_t, const Elem*, std::uint64_t)> low =
                        [&](std::size_t j, const Elem* prev, std::uint64_t idx) {
                            if (j > free) {
                                ker.evaluate(prev, base + (prefix_base + idx) * q, hist);
                                return;
                            }
                            low(j + 1, prev, idx * q);
                            for (Elem digit = 1; digit < q; ++digit) {
                                ker.step(prev, digit, lead + j, level[j].data());
                                low(j + 1, level[j].data(), idx * q + digit);
                            }
                        };
                    low(task.split + 1, cur, 0);
                }
            }
        }
    }

    const std::uint64_t packed = best.load();
    SearchResult res;
    const std::vector<Elem> m = detail::message_of(detail::packed_ordinal(packed), q, k);
    res.witness = encode(g, m);
    res.distance = res.witness.weight;
    res.candidates = count;
    if (res.distance != detail::packed_weight(packed))
        throw Error(ErrorKind::InvalidArgument, "internal error: witness weight disagrees with search");
    return res;
}

}  // namespace polycode::toric
