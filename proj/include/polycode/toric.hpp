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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "polycode/expr.hpp"
#include "polycode/ff.hpp"
#include "polycode/integer.hpp"
#include "polycode/lattice.hpp"

namespace polycode::toric {

using ff::Elem;
using ff::FieldTable;
using lattice::LatticePolytope;
using lattice::Point;
using lattice::PolytopeExpr;

inline constexpr std::uint64_t kDefaultDistanceBudget = 100'000'000;

/// Evaluation matrix of the monomials of P on the torus (F_q^*)^n.
///
/// Row r is the lattice point P∩Z^n [r] (colex order); column c is the torus
/// point whose coordinates run over nonzero_elements() lexicographically with
/// the first coordinate most significant. The field must outlive the matrix.
class GeneratorMatrix {
 public:
    /// Throws Error{OutOfBox} unless P ⊆ [0, q-2]^n.
    GeneratorMatrix(const LatticePolytope& p, const FieldTable& field);

    const FieldTable& field() const noexcept { return *field_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t ambient_dim() const noexcept { return dim_; }

    Elem entry(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }
    std::span<const Elem> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }

    const std::vector<Point>& row_labels() const noexcept { return row_labels_; }
    /// Torus point of column c as element indices.
    std::vector<Elem> col_label(std::size_t c) const;

 private:
    const FieldTable* field_;
    std::size_t dim_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Elem> data_;
    std::vector<Point> row_labels_;
};

/// Rank over F_q by Gaussian elimination.
std::size_t rank_check(const GeneratorMatrix& g);

struct Codeword {
    std::vector<Elem> message;
    std::vector<Elem> word;
    std::uint64_t weight = 0;
};

/// message · G. Throws Error{DimensionMismatch} on a wrong message length.
Codeword encode(const GeneratorMatrix& g, std::span<const Elem> message);

struct SearchOptions {
    std::uint64_t budget = kDefaultDistanceBudget;
    /// Worker count for the parallel kernel; 0 keeps the OpenMP default.
    int threads = 0;
};

struct SearchResult {
    std::uint64_t distance = 0;
    Codeword witness;
    std::uint64_t candidates = 0;
};

/// (q^k - 1)/(q - 1), the number of messages up to scaling.
Int candidate_count(std::uint32_t q, std::size_t k);

/// Parallel exhaustive minimum-weight search. Messages are taken up to
/// scaling (first nonzero entry 1). Among minimum-weight messages the one of
/// least ordinal is returned, so the result does not depend on the worker
/// count. Throws Error{BudgetExceeded} when candidate_count exceeds the budget.
SearchResult min_weight_search(const GeneratorMatrix& g, const SearchOptions& opts = {});

/// Single-threaded reference: encodes every candidate in ordinal order with
/// per-codeword early exit. Same result as min_weight_search.
SearchResult min_weight_search_serial(const GeneratorMatrix& g, std::uint64_t budget = kDefaultDistanceBudget);

enum class Method { Exhaustive, Formula, Bounds };

const char* method_name(Method m) noexcept;

/// Code parameters. When only bounds are known, d lies in [d_lo, d_hi] and
/// delta() is taken at d_lo.
struct CodeParams {
    std::uint32_t q = 0;
    std::size_t n = 0;
    Int N;
    Int k;
    Int d_lo;
    Int d_hi;
    Method method = Method::Bounds;
    /// Rule or procedure that produced d, e.g. "box", "join-corollary".
    std::string rule;
    std::optional<Codeword> witness;
    std::vector<std::string> notes;
    /// Set when an exhaustive search was skipped for lack of budget.
    bool budget_limited = false;

    bool exact() const noexcept { return d_lo == d_hi; }
    /// Throws Error{RuleInapplicable} when only bounds are known.
    const Int& d() const;
    Int max_zeros() const { return N - d_lo; }
    Int max_zeros_lo() const { return N - d_hi; }
    Rational delta() const { return Rational(d_lo, N); }
    Rational delta_hi() const { return Rational(d_hi, N); }
    Rational rate() const { return Rational(k, N); }
};

/// Exact parameters of C_P by min_weight_search. Throws Error{OutOfBox} or
/// Error{BudgetExceeded}.
CodeParams min_distance_exhaustive(const LatticePolytope& p, const FieldTable& field, const SearchOptions& opts = {});

enum class EngineMode {
    /// Rules first, exhaustive search wherever rules leave only bounds and
    /// the budget allows.
    Auto,
    /// Rules only; nodes without a rule get generic bounds.
    Formula,
    /// Interval reasoning only.
    Bounds,
};

struct EngineOptions {
    EngineMode mode = EngineMode::Auto;
    SearchOptions search;
};

/// Largest zero count of the join P*Q given N(P) and N(Q), for P ⊂ R^n and
/// Q ⊂ R^m. With drop_pure_term the (q-1)^{n+m} term is omitted.
Int join_max_zeros(std::uint32_t q, std::size_t n, std::size_t m, const Int& np, const Int& nq,
                   bool drop_pure_term = false);

/// Zero count of P ⊕ [0, l] given N(P), valid when the hypothesis on P holds.
Int direct_sum_max_zeros(std::uint32_t q, std::size_t n, const Int& np, std::int64_t l);

/// Parameters from the construction tree. Throws Error{OutOfBox}.
CodeParams params_by_formula(const PolytopeExpr& e, const FieldTable& field, const EngineOptions& opts = {});

/// N - d from whichever method applies (auto mode); throws Error{RuleInapplicable}
/// when d is not determined exactly.
Int max_zeros(const PolytopeExpr& e, const FieldTable& field, const EngineOptions& opts = {});

struct SliceBound {
    Int bound;
    /// Per slice i = 0..l: (q-1-i) * d(P_i).
    std::vector<Int> terms;
    std::vector<Int> slice_distance;
};

/// min_i (q-1-i) d(C_{P_i}) over the slices P_i of P along the last
/// coordinate. Valid for any in-box polytope; slice distances come from the
/// exhaustive search. Throws Error{BudgetExceeded} when a slice is too large.
SliceBound slice_lower_bound(const LatticePolytope& p, const FieldTable& field, const SearchOptions& opts = {});

/// Expression form: requires DirectSum(child, Segment); throws
/// Error{RuleInapplicable} otherwise.
SliceBound slice_lower_bound(const PolytopeExpr& e, const FieldTable& field, const SearchOptions& opts = {});

struct WitnessBound {
    Int bound;
    /// Zeros of f = (z - a_1)...(z - a_l), counted by evaluation.
    Int zeros;
    std::vector<Elem> roots;
};

/// d ≤ N - zeros(f) for f = prod_{j ≤ l}(z - a_j) in the last coordinate,
/// where l is the length of the segment [0, l] e_n contained in P. Requires
/// the points 0, e_n, ..., l e_n in P and l ≤ q - 2; throws
/// Error{RuleInapplicable} otherwise.
WitnessBound witness_upper_bound(const LatticePolytope& p, std::int64_t l, const FieldTable& field);

/// Expression form for DirectSum(child, Segment(l)) or a bare Segment(l).
WitnessBound witness_upper_bound(const PolytopeExpr& e, const FieldTable& field);

/// Parameters of the embedding of P ⊂ R^n into R^m: same d-ratio, rate
/// scaled by (q-1)^{n-m}. Throws Error{TargetTooSmall} if m < n.
CodeParams embed_params(const CodeParams& p, std::size_t m);

/// Checks P ⊆ Q by generator containment (Error{NotASubset} otherwise) and
/// returns whether delta(P) ≥ delta(Q) holds for the supplied parameters.
bool delta_monotone(const LatticePolytope& p, const CodeParams& pp, const LatticePolytope& q, const CodeParams& qp);

}  // namespace polycode::toric
