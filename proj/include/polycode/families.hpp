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
#include <string>
#include <vector>

#include "polycode/decomp.hpp"
#include "polycode/expr.hpp"
#include "polycode/toric.hpp"

namespace polycode::families {

using lattice::PolytopeExpr;

enum class FamilyKind { Boxes, Simplices, SelfJoin };

const char* family_kind_name(FamilyKind k) noexcept;

struct FamilySpec {
    FamilyKind kind = FamilyKind::Boxes;
    std::uint32_t q = 5;
    /// Side lengths l_1, l_2, ...; a single entry means a constant schedule.
    std::vector<std::int64_t> schedule;
    std::size_t depth = 1;
    /// Row 1 of a self-join family.
    std::optional<PolytopeExpr> seed;
    /// Candidate budget for exhaustive cross-checks.
    std::uint64_t distance_budget = toric::kDefaultDistanceBudget;
    /// Exhaustive cross-checks only for rows with k at most this.
    std::size_t cross_check_max_k = 9;
    /// L and M are computed for rows with at most this many lattice points,
    /// each search capped at node_budget; rows that hit the cap leave L/M empty.
    std::size_t decomp_max_points = 128;
    std::uint64_t node_budget = 200'000;
    int threads = 0;
};

struct FamilyRow {
    std::size_t i = 0;
    std::size_t n = 0;
    Int k;
    Int d_lo;
    Int d_hi;
    Rational delta;
    Rational rate;
    std::string method;
    std::optional<std::size_t> L;
    std::optional<std::size_t> M;
    /// Simplices: C(i+l, l)/(q-1)^i with l the largest side so far.
    std::optional<Rational> rate_bound;
};

/// Rows i = 1..depth of P_i = [0,l_1] x ... x [0,l_i]. Throws
/// Error{ScheduleOutOfRange} for sides outside [0, q-2] or a short schedule.
std::vector<FamilyRow> family_boxes(const FamilySpec& spec);

/// Rows of P_i = P_{i-1} ⊕ [0, l_i], P_1 = [0, l_1].
std::vector<FamilyRow> family_simplices(const FamilySpec& spec);

/// Rows of P_{i+1} = P_i * P_i, P_1 = seed.
std::vector<FamilyRow> family_self_join(const FamilySpec& spec);

std::vector<FamilyRow> run_family(const FamilySpec& spec);

/// min{δ, 2δ - δ² q/(q-1)}.
Rational self_join_step(const Rational& delta, std::uint32_t q);

struct FixedPointCheck {
    /// δ_1, ..., δ_steps.
    std::vector<Rational> deltas;
    bool holds = false;
};

/// Iterates the self-join recurrence and reports whether δ_k = δ_2 for
/// 2 ≤ k ≤ steps. Throws Error{InvalidArgument} unless 0 ≤ δ_1 ≤ 1.
FixedPointCheck verify_fixed_point(const Rational& delta1, std::uint32_t q, std::size_t steps = 20);

/// Header i,n,k,d_lo,d_hi,delta_num,delta_den,rate_num,rate_den,method,L,M.
std::string family_csv(const std::vector<FamilyRow>& rows);

/// Number of lattice points of conv(0, l_1 e_1, ..., l_n e_n).
Int simplex_point_count(const std::vector<std::int64_t>& sides);

// ---------------------------------------------------------------------------

enum class ProbeGenerator { RandomHull, UnitSimplexSum };

struct ProbeSpec {
    std::uint32_t q = 5;
    std::size_t samples = 500;
    std::uint64_t seed = 1;
    /// Ambient dimension grows linearly from dim_min to dim_max across the run.
    std::size_t dim_min = 1;
    std::size_t dim_max = 4;
    std::uint64_t distance_budget = 1'000'000;
    std::uint64_t node_budget = 200'000;
    int threads = 0;
};

struct ProbeSample {
    std::size_t index = 0;
    ProbeGenerator generator = ProbeGenerator::RandomHull;
    std::size_t n = 0;
    std::size_t summands = 0;  // UnitSimplexSum only
    std::string polytope;
    toric::CodeParams params;
    decomp::DecompResult L;
    decomp::DecompResult M;
    /// Each proven bound: "ok", "violated", or "open" when a budget-limited
    /// quantity leaves the check undecided.
    std::string k_vs_L;
    std::string delta_vs_M;
    std::string M_vs_L;
    /// Unit-simplex sums: k ≤ (n+1)^s for s summands and k ≤ (n+1)^L; "na" otherwise.
    std::string k_vs_summands;
    /// M ≥ ceil(L/(q-2)) - 1, an experiment rather than a theorem.
    std::string box_experiment;
    bool outlier = false;
};

struct ProbeReport {
    ProbeSpec spec;
    std::vector<ProbeSample> samples;
    std::size_t violations = 0;
    std::size_t open_checks = 0;
    std::size_t outliers = 0;
    std::size_t experiment_disagreements = 0;
};

ProbeReport conjecture_probe(const ProbeSpec& spec);

std::string probe_csv(const ProbeReport& report);

}  // namespace polycode::families
