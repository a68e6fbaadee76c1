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
#include <memory>
#include <string>
#include <vector>

#include "polycode/lattice.hpp"

namespace polycode::lattice {

/// Whether the direct-sum distance formula's hypothesis on the base summand
/// is known to hold.
enum class DirectSumHypothesis { Unknown, Asserted, Violated };

const char* hypothesis_name(DirectSumHypothesis h) noexcept;

/// Construction tree of a polytope. Nodes are immutable and shared; the
/// evaluated polytope is cached per node.
class PolytopeExpr {
 public:
    enum class Kind { Atom, Segment, Box, Simplex, Product, Join, DirectSum, Dilate, Embed };

    static PolytopeExpr atom(LatticePolytope p);
    /// [0, length] in R^1.
    static PolytopeExpr segment(std::int64_t length);
    /// [0, l_1] x ... x [0, l_n].
    static PolytopeExpr box(std::vector<std::int64_t> lengths);
    /// conv(0, l e_1, ..., l e_n).
    static PolytopeExpr simplex(std::size_t n, std::int64_t length);
    static PolytopeExpr product(PolytopeExpr a, PolytopeExpr b);
    static PolytopeExpr join(PolytopeExpr a, PolytopeExpr b);
    /// Throws Error{OriginMissing} unless both operands contain the origin.
    static PolytopeExpr direct_sum(PolytopeExpr a, PolytopeExpr b,
                                   DirectSumHypothesis hypothesis = DirectSumHypothesis::Unknown);
    static PolytopeExpr dilate(PolytopeExpr e, std::int64_t factor);
    /// Throws Error{TargetTooSmall} unless target > dimension of e.
    static PolytopeExpr embed(PolytopeExpr e, std::size_t target);

    Kind kind() const noexcept;
    std::size_t ambient_dim() const noexcept;

    const LatticePolytope& atom_polytope() const;
    std::int64_t length() const;                       // Segment, Simplex
    const std::vector<std::int64_t>& lengths() const;  // Box
    std::int64_t factor() const;                       // Dilate
    std::size_t target_dim() const;                    // Embed
    DirectSumHypothesis hypothesis() const;            // DirectSum
    const PolytopeExpr& left() const;                  // Product, Join, DirectSum
    const PolytopeExpr& right() const;
    const PolytopeExpr& child() const;  // Dilate, Embed

    /// Per-coordinate generator range, computed from the tree without
    /// enumerating lattice points.
    const std::vector<std::pair<Int, Int>>& extents() const noexcept;
    bool fits_in_box(std::uint32_t q) const;
    bool contains_origin() const;

    /// |P ∩ Z^n|, from closed forms where the tree allows (product multiplies,
    /// join adds) and by enumeration otherwise.
    Int lattice_point_count() const;

    const LatticePolytope& evaluate() const;

    /// Canonical textual form in the expression grammar.
    std::string to_string() const;

 private:
    struct Node;
    explicit PolytopeExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

LatticePolytope eval_expr(const PolytopeExpr& e);

}  // namespace polycode::lattice
