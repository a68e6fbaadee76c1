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
#include <vector>

#include "polycode/expr.hpp"
#include "polycode/lattice.hpp"
#include "polycode/smith.hpp"

namespace polycode::decomp {

using lattice::LatticePolytope;
using lattice::Point;

inline constexpr std::uint64_t kDefaultNodeBudget = 10'000'000;

/// A translate base + [0,v_1] + ... + [0,v_m] contained in P. For a
/// hypercube witness the v_j are additionally extendable to a basis of Z^n.
struct DecompWitness {
    enum class Kind { Zonotope, Hypercube };
    Kind kind = Kind::Zonotope;
    Point base;
    std::vector<Point> vectors;

    std::size_t size() const noexcept { return vectors.size(); }
};

struct DecompResult {
    std::size_t value = 0;
    DecompWitness witness;
    /// The search stopped early; value is then a certified lower bound.
    bool budget_exceeded = false;
    std::uint64_t nodes = 0;
};

/// Primitive differences of lattice points of P, normalised so the first
/// nonzero coordinate is positive, sorted by l1-norm then lexicographically.
std::vector<Point> primitive_directions(const LatticePolytope& p);

/// Full Minkowski length L(P): the largest m such that a translate of a sum of
/// m primitive lattice segments lies in P.
DecompResult full_minkowski_length(const LatticePolytope& p, std::uint64_t node_budget = kDefaultNodeBudget);

/// M(P): the largest i such that a unimodular image of [0,1]^i lies in P.
DecompResult hypercube_dimension(const LatticePolytope& p, std::uint64_t node_budget = kDefaultNodeBudget);

/// Independent check of a witness: primitive vectors, every vertex sum in P
/// by the membership test, and extendability for hypercubes.
bool verify_witness(const LatticePolytope& p, const DecompWitness& w);

/// Minkowski length of the polytope itself for segments and boxes (the sum
/// of the side lengths); throws Error{RuleInapplicable} for other shapes.
std::int64_t minkowski_length(const lattice::PolytopeExpr& e);

}  // namespace polycode::decomp
