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

#include <random>

#include "doctest.h"
#include "polycode/decomp.hpp"
#include "polycode/error.hpp"

using namespace polycode;
using namespace polycode::decomp;
using lattice::PolytopeExpr;

namespace {

LatticePolytope poly(std::vector<Point> pts) { return LatticePolytope::from_vertices(std::move(pts)); }

std::vector<std::vector<Int>> rows(std::initializer_list<std::initializer_list<int>> r) {
    std::vector<std::vector<Int>> out;
    for (const auto& row : r) out.emplace_back(row.begin(), row.end());
    return out;
}

}  // namespace

TEST_CASE("Smith invariants and extendability") {
    CHECK(smith_invariants(rows({{2, 4}, {6, 8}})) == std::vector<Int>{2, 4});
    CHECK(smith_invariants(rows({{1, 1}, {1, -1}})) == std::vector<Int>{1, 2});
    CHECK(smith_invariants(rows({{1, 2, 3}, {2, 4, 6}})) == std::vector<Int>{1});
    CHECK(is_primitive_extendable(rows({{1, 0, 0}, {0, 1, 0}})));
    CHECK_FALSE(is_primitive_extendable(rows({{2, 0}})));
    CHECK_FALSE(is_primitive_extendable(rows({{1, 1}, {1, -1}})));
    CHECK(is_primitive_extendable(rows({{2, 3}})));
    CHECK_FALSE(is_primitive_extendable(rows({{1, 2, 3}, {4, 5, 6}})));  // 2x2 minors -3, -6, -3
    CHECK(is_primitive_extendable(rows({{1, 2, 3}, {4, 5, 7}})));   // minors -3, -5, -1
    CHECK_FALSE(is_primitive_extendable(rows({{1, 2, 3}, {2, 4, 6}})));
    CHECK_THROWS_AS(is_primitive_extendable(rows({{1, 0}, {0, 1}, {1, 1}})), Error);
    CHECK_THROWS_AS(is_primitive_extendable(rows({{1, 0}, {0}})), Error);
}

TEST_CASE("Smith invariants agree with gcds of minors") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> e(-6, 6);
    for (int t = 0; t < 200; ++t) {
        auto m = rows({{e(rng), e(rng), e(rng)}, {e(rng), e(rng), e(rng)}});
        Int g1 = 0, g2 = 0;
        for (int i = 0; i < 3; ++i) g1 = igcd(g1, igcd(m[0][i], m[1][i]));
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) g2 = igcd(g2, m[0][i] * m[1][j] - m[0][j] * m[1][i]);
        const auto inv = smith_invariants(m);
        if (g2 != 0) {
            REQUIRE(inv.size() == 2);
            CHECK(inv[0] == g1);
            CHECK(inv[0] * inv[1] == g2);
        } else {
            CHECK(inv.size() == (g1 == 0 ? 0u : 1u));
        }
    }
}

TEST_CASE("full Minkowski length of the three planar fixtures") {
    auto a = poly({{0, 0}, {2, 1}, {1, 2}});
    auto b = poly({{0, 0}, {2, 0}, {0, 2}});
    // Vertices read off a drawing rather than given as coordinates.
    auto c = poly({{1, 0}, {0, 1}, {3, 3}, {3, 2}, {2, 0}});
    CHECK(a.lattice_point_count() == 4);
    const auto la = full_minkowski_length(a), lb = full_minkowski_length(b), lc = full_minkowski_length(c);
    CHECK(la.value == 1);
    CHECK(lb.value == 2);
    CHECK(lc.value == 3);
    for (const auto* r : {&la, &lb, &lc}) CHECK_FALSE(r->budget_exceeded);
    CHECK(verify_witness(a, la.witness));
    CHECK(verify_witness(b, lb.witness));
    CHECK(verify_witness(c, lc.witness));
    CHECK(hypercube_dimension(c).value == 2);
    CHECK(hypercube_dimension(a).value == 1);
}

TEST_CASE("boxes, segments and simplices") {
    for (std::size_t n = 1; n <= 4; ++n) {
        auto cube = PolytopeExpr::box(std::vector<std::int64_t>(n, 1)).evaluate();
        CHECK(full_minkowski_length(cube).value == n);
        const auto m = hypercube_dimension(cube);
        CHECK(m.value == n);
        CHECK(m.witness.kind == DecompWitness::Kind::Hypercube);
    }
    CHECK(full_minkowski_length(PolytopeExpr::segment(5).evaluate()).value == 5);
    CHECK(hypercube_dimension(PolytopeExpr::segment(5).evaluate()).value == 1);
    CHECK(hypercube_dimension(PolytopeExpr::simplex(2, 1).evaluate()).value == 1);
    CHECK(full_minkowski_length(PolytopeExpr::simplex(3, 2).evaluate()).value == 2);
    CHECK(full_minkowski_length(PolytopeExpr::box({3, 2, 1}).evaluate()).value == 6);
    CHECK(full_minkowski_length(poly({{4, 4}})).value == 0);
    CHECK(minkowski_length(PolytopeExpr::box({3, 2})) == 5);
    CHECK(minkowski_length(PolytopeExpr::segment(4)) == 4);
    CHECK_THROWS_AS(minkowski_length(PolytopeExpr::simplex(2, 2)), Error);
}

TEST_CASE("node budget yields a flagged lower bound") {
    auto cube = PolytopeExpr::box({2, 2, 2}).evaluate();
    const auto r = full_minkowski_length(cube, 1);
    CHECK(r.budget_exceeded);
    CHECK(r.value <= 6);
    CHECK(verify_witness(cube, r.witness));
}

TEST_CASE("witness verification rejects bad witnesses") {
    auto sq = PolytopeExpr::box({1, 1}).evaluate();
    DecompWitness w;
    w.kind = DecompWitness::Kind::Hypercube;
    w.base = Point{0, 0};
    w.vectors = {Point{1, 1}, Point{1, 0}};
    CHECK_FALSE(verify_witness(sq, w));
    w.vectors = {Point{2, 0}};
    CHECK_FALSE(verify_witness(sq, w));
    w.vectors = {Point{1, 0}, Point{0, 1}};
    CHECK(verify_witness(sq, w));
    w.kind = DecompWitness::Kind::Zonotope;
    w.vectors = {Point{1, 1}, Point{1, -1}};
    CHECK_FALSE(verify_witness(sq, w));
}

TEST_CASE("invariance, monotonicity and the lattice-point bound on random polytopes") {
    std::mt19937_64 rng(31337);
    std::uniform_int_distribution<int> coord(0, 3), count(2, 5), pick(0, 3);
    const std::vector<lattice::UnimodularMap> maps{
        lattice::UnimodularMap({{1, 1}, {0, 1}}, {2, -1}),
        lattice::UnimodularMap({{2, 1}, {1, 1}}, {0, 0}),
        lattice::UnimodularMap({{0, 1}, {1, 0}}, {1, 1}),
        lattice::UnimodularMap({{1, 0}, {-3, 1}}, {0, 5}),
    };
    for (int t = 0; t < 80; ++t) {
        std::vector<Point> pts;
        for (int i = count(rng); i > 0; --i) pts.push_back(Point{coord(rng), coord(rng)});
        auto p = poly(pts);
        const auto l = full_minkowski_length(p);
        const auto m = hypercube_dimension(p);
        const auto img = lattice::apply_unimodular(p, maps[static_cast<std::size_t>(pick(rng))]);
        CHECK(full_minkowski_length(img).value == l.value);
        CHECK(hypercube_dimension(img).value == m.value);
        CHECK(m.value <= l.value);
        CHECK(Int(p.lattice_point_count()) <= ipow(Int(l.value + 1), 2));
        auto bigger = lattice::minkowski_sum(p, poly({{0, 0}, {1, 0}}));
        CHECK(full_minkowski_length(bigger).value >= l.value);
        CHECK(hypercube_dimension(bigger).value >= m.value);
        auto prod = lattice::product(p, poly({{0}, {2}}));
        CHECK(full_minkowski_length(prod).value >= l.value + 2);
        std::vector<Point> sub;
        for (const auto& x : p.lattice_points())
            if (pick(rng) != 0) sub.push_back(x);
        if (sub.empty()) continue;
        const auto inner = poly(sub);
        CHECK(full_minkowski_length(inner).value <= l.value);
        CHECK(hypercube_dimension(inner).value <= m.value);
    }
}
