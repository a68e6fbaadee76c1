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

#include <algorithm>

#include "message_order.hpp"
#include "polycode/error.hpp"
#include "polycode/toric.hpp"

namespace polycode::toric {

namespace {

constexpr std::uint64_t kMaxMatrixEntries = std::uint64_t{1} << 31;

}  // namespace

GeneratorMatrix::GeneratorMatrix(const LatticePolytope& p, const FieldTable& field)
    : field_(&field), dim_(p.ambient_dim()) {
    const std::uint32_t q = field.order();
    if (!lattice::fits_in_box(p, q))
        throw Error(ErrorKind::OutOfBox, "polytope does not fit in [0," + std::to_string(q - 2) + "]^" +
                                             std::to_string(dim_));
    const Int n_cols = ipow(Int(q - 1), dim_);
    if (n_cols > Int(kMaxMatrixEntries)) throw Error(ErrorKind::InvalidArgument, "block length too large");
    cols_ = static_cast<std::size_t>(n_cols);
    row_labels_ = p.lattice_points();
    rows_ = row_labels_.size();
    if (static_cast<std::uint64_t>(rows_) * cols_ > kMaxMatrixEntries)
        throw Error(ErrorKind::InvalidArgument, "generator matrix too large");

    data_.resize(rows_ * cols_);
    const std::uint32_t order = q - 1;
    std::vector<std::uint32_t> exps(dim_);
    std::vector<std::uint32_t> digits(dim_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t j = 0; j < dim_; ++j) exps[j] = static_cast<std::uint32_t>(row_labels_[r][j]);
        std::fill(digits.begin(), digits.end(), 0U);
        for (std::size_t c = 0; c < cols_; ++c) {
            std::uint64_t s = 0;
            for (std::size_t j = 0; j < dim_; ++j)
                s += static_cast<std::uint64_t>(exps[j]) * field.log(static_cast<Elem>(digits[j] + 1));
            data_[r * cols_ + c] = field.exp(s % order);
            for (std::size_t j = dim_; j-- > 0;) {
                if (++digits[j] < order) break;
                digits[j] = 0;
            }
        }
    }
}

std::vector<Elem> GeneratorMatrix::col_label(std::size_t c) const {
    const std::uint32_t order = field_->order() - 1;
    std::vector<Elem> t(dim_);
    for (std::size_t j = dim_; j-- > 0;) {
        t[j] = field_->nonzero_elements()[c % order];
        c /= order;
    }
    return t;
}

std::size_t rank_check(const GeneratorMatrix& g) {
    const FieldTable& f = g.field();
    std::vector<std::vector<Elem>> m(g.rows());
    for (std::size_t r = 0; r < g.rows(); ++r) m[r].assign(g.row(r).begin(), g.row(r).end());
    std::size_t rank = 0;
    for (std::size_t c = 0; c < g.cols() && rank < m.size(); ++c) {
        std::size_t piv = rank;
        while (piv < m.size() && m[piv][c] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[piv], m[rank]);
        const Elem inv = f.inv(m[rank][c]);
        for (std::size_t j = c; j < g.cols(); ++j) m[rank][j] = f.mul(m[rank][j], inv);
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == rank || m[r][c] == 0) continue;
            const Elem factor = m[r][c];
            for (std::size_t j = c; j < g.cols(); ++j) m[r][j] = f.sub(m[r][j], f.mul(factor, m[rank][j]));
        }
        ++rank;
    }
    return rank;
}

Codeword encode(const GeneratorMatrix& g, std::span<const Elem> message) {
    if (message.size() != g.rows())
        throw Error(ErrorKind::DimensionMismatch, "message length " + std::to_string(message.size()) +
                                                      " does not match k=" + std::to_string(g.rows()));
    const FieldTable& f = g.field();
    Codeword cw;
    cw.message.assign(message.begin(), message.end());
    cw.word.assign(g.cols(), 0);
    for (std::size_t r = 0; r < g.rows(); ++r) {
        const Elem m = message[r];
        if (m == 0) continue;
        auto row = g.row(r);
        for (std::size_t c = 0; c < g.cols(); ++c) cw.word[c] = f.add(cw.word[c], f.mul(m, row[c]));
    }
    cw.weight = static_cast<std::uint64_t>(std::count_if(cw.word.begin(), cw.word.end(), [](Elem e) { return e != 0; }));
    return cw;
}

Int candidate_count(std::uint32_t q, std::size_t k) { return (ipow(Int(q), k) - 1) / (q - 1); }

namespace detail {

// Shared by both searches: budget and size guards, returns the count.
std::uint64_t check_search_size(const GeneratorMatrix& g, std::uint64_t budget) {
    if (g.rows() == 0) throw Error(ErrorKind::EmptyInput, "code has dimension 0");
    const Int count = candidate_count(g.field().order(), g.rows());
    if (count > Int(budget))
        throw Error(ErrorKind::BudgetExceeded, "exhaustive search needs " + count.str() +
                                                   " candidate messages, budget is " + std::to_string(budget));
    if (count > Int(kOrdinalMask)) throw Error(ErrorKind::BudgetExceeded, "candidate count exceeds search limit");
    if (g.cols() >= (std::size_t{1} << 26))
        throw Error(ErrorKind::BudgetExceeded, "block length exceeds search limit");
    return static_cast<std::uint64_t>(count);
}

}  // namespace detail

SearchResult min_weight_search_serial(const GeneratorMatrix& g, std::uint64_t budget) {
    const std::uint64_t count = detail::check_search_size(g, budget);
    const FieldTable& f = g.field();
    const std::uint32_t q = f.order();
    const std::size_t k = g.rows();
    const std::size_t n_cols = g.cols();

    std::uint64_t best_weight = n_cols + 1;
    std::uint64_t best_ordinal = 0;
    std::vector<Elem> word(n_cols);
    for (std::uint64_t ord = 0; ord < count; ++ord) {
        const std::vector<Elem> m = detail::message_of(ord, q, k);
        std::uint64_t weight = 0;
        for (std::size_t c = 0; c < n_cols && weight < best_weight; ++c) {
            Elem s = 0;
            for (std::size_t r = 0; r < k; ++r)
                if (m[r] != 0) s = f.add(s, f.mul(m[r], g.entry(r, c)));
            if (s != 0) ++weight;
        }
        if (weight < best_weight) {
            best_weight = weight;
            best_ordinal = ord;
        }
    }
    SearchResult res;
    const std::vector<Elem> m = detail::message_of(best_ordinal, q, k);
    res.witness = encode(g, m);
    res.distance = res.witness.weight;
    res.candidates = count;
    return res;
}

const char* method_name(Method m) noexcept {
    switch (m) {
        case Method::Exhaustive:
            return "exhaustive";
        case Method::Formula:
            return "formula";
        case Method::Bounds:
            break;
    }
    return "bounds";
}

const Int& CodeParams::d() const {
    if (!exact())
        throw Error(ErrorKind::RuleInapplicable, "minimum distance only bounded: [" + d_lo.str() + ", " + d_hi.str() + "]");
    return d_lo;
}

CodeParams min_distance_exhaustive(const LatticePolytope& p, const FieldTable& field, const SearchOptions& opts) {
    const GeneratorMatrix g(p, field);
    SearchResult r = min_weight_search(g, opts);
    CodeParams out;
    out.q = field.order();
    out.n = p.ambient_dim();
    out.N = Int(g.cols());
    out.k = Int(g.rows());
    out.d_lo = out.d_hi = Int(r.distance);
    out.method = Method::Exhaustive;
    out.rule = "exhaustive";
    out.witness = std::move(r.witness);
    return out;
}

CodeParams embed_params(const CodeParams& p, std::size_t m) {
    if (m < p.n) throw Error(ErrorKind::TargetTooSmall, "embedding target below dimension");
    CodeParams out = p;
    const Int scale = ipow(Int(p.q - 1), m - p.n);
    out.n = m;
    out.N = p.N * scale;
    out.d_lo = p.d_lo * scale;
    out.d_hi = p.d_hi * scale;
    out.witness.reset();
    return out;
}

bool delta_monotone(const LatticePolytope& p, const CodeParams& pp, const LatticePolytope& q, const CodeParams& qp) {
    if (p.ambient_dim() != q.ambient_dim() || !lattice::is_subset(p, q))
        throw Error(ErrorKind::NotASubset, "first polytope is not contained in the second");
    return pp.delta() >= qp.delta_hi();
}

}  // namespace polycode::toric
