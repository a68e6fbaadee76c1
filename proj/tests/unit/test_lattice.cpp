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

#include <array>
#include <functional>
#include <random>

#include "doctest.h"
#include "polycode/error.hpp"
#include "polycode/expr.hpp"
#include "polycode/lattice.hpp"

using namespace polycode;
using namespace polycode::lattice;

namespace {

LatticePolytope poly(std::vector<Point> pts) { return LatticePolytope::from_vertices(std::move(pts)); }

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error thrown");
    return ErrorKind::InvalidArgument;
}

// Carathéodory oracle in the plane: x lies in the hull iff it lies in a
// triangle (possibly degenerate) spanned by three generators.
using P2 = std::array<std::int64_t, 2>;

std::int64_t cross(P2 o, P2 a, P2 b) { return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]); }

bool on_segment(P2 a, P2 b, P2 x) {
    return cross(a, b, x) == 0 && std::min(a[0], b[0]) <= x[0] && x[0] <= std::max(a[0], b[0]) &&
           std::min(a[1], b[1]) <= x[1] && x[1] <= std::max(a[1], b[1]);
}

bool in_triangle(P2 a, P2 b, P2 c, P2 x) {
    if (cross(a, b, c) == 0) return on_segment(a, b, x) || on_segment(b, c, x) || on_segment(a, c, x);
    const std::int64_t s1 = cross(a, b, x), s2 = cross(b, c, x), s3 = cross(c, a, x);
    return (s1 >= 0 && s2 >= 0 && s3 >= 0) || (s1 <= 0 && s2 <= 0 && s3 <= 0);
}

bool oracle_contains(const std::vector<P2>& g, P2 x) {
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = i; j < g.size(); ++j)
            for (std::size_t k = j; k < g.size(); ++k)
                if (in_triangle(g[i], g[j], g[k], x)) return true;
    return false;
}

std::vector<Point> points_of(const LatticePolytope& p) { return p.lattice_points(); }

}  // namespace

TEST_CASE("unit square lattice points in colex order") {
    auto sq = poly({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    CHECK(points_of(sq) == std::vector<Point>{{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    CHECK(contains_point(sq, {1, 1}));
}

TEST_CASE("single point and segment") {
    auto pt = poly({{2, 3}});
    CHECK(pt.lattice_point_count() == 1);
    auto seg = poly({{0}, {3}});
    CHECK(points_of(seg) == std::vector<Point>{{0}, {1}, {2}, {3}});
}

TEST_CASE("triangle with seven lattice points") {
    auto t = poly({{0, 0}, {2, 3}, {4, 2}});
    CHECK(t.lattice_point_count() == 7);
    CHECK(contains_point(t, {2, 2}));
    CHECK_FALSE(contains_point(t, {3, 1}));
    CHECK(kind_of([&] { contains_point(t, {1, 1, 1}); }) == ErrorKind::DimensionMismatch);
}

TEST_CASE("construction errors") {
    CHECK(kind_of([] { poly({}); }) == ErrorKind::EmptyInput);
    CHECK(kind_of([] { poly({{0, 0}, {1}}); }) == ErrorKind::MixedDimensions);
    auto seg = poly({{1}, {2}});
    CHECK(kind_of([&] { direct_sum(seg, seg); }) == ErrorKind::OriginMissing);
    CHECK(kind_of([&] { embed(seg, 1); }) == ErrorKind::TargetTooSmall);
    CHECK(kind_of([&] { minkowski_sum(seg, poly({{0, 0}})); }) == ErrorKind::DimensionMismatch);
    CHECK(kind_of([] { UnimodularMap({{2, 0}, {0, 1}}, {0, 0}); }) == ErrorKind::NotUnimodular);
    CHECK(kind_of([] { UnimodularMap({{1, 0}, {0, 1}}, {0}); }) == ErrorKind::DimensionMismatch);
    CHECK(kind_of([&] { dilate(seg, Int(0)); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("products") {
    auto s1 = poly({{0}, {1}});
    auto s2 = poly({{0}, {2}});
    auto sq = product(s1, s1);
    CHECK(points_of(sq) == std::vector<Point>{{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    CHECK(product(s1, s2).lattice_point_count() == 6);
    CHECK(product(sq, s1).lattice_point_count() == 8);
}

TEST_CASE("joins") {
    auto s2 = poly({{0}, {2}});
    auto s3 = poly({{0}, {3}});
    CHECK(join(s2, s3).lattice_point_count() == 7);
    CHECK(join(s2, s3).ambient_dim() == 3);
    CHECK(join(poly({{0}}), poly({{0}})).lattice_point_count() == 2);
    auto sq = poly({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    auto j = join(sq, sq);
    CHECK(j.ambient_dim() == 5);
    CHECK(j.lattice_point_count() == 8);
    for (const Point& x : j.lattice_points()) CHECK((x[4] == 0 || x[4] == 1));
}

TEST_CASE("direct and Minkowski sums, dilation, embedding") {
    auto s1 = poly({{0}, {1}});
    auto s2 = poly({{0}, {2}});
    auto s3 = poly({{0}, {3}});
    auto t = direct_sum(s2, s3);
    CHECK(t.lattice_point_count() == 7);  // conv((0,0),(2,0),(0,3))
    CHECK(is_subset(t, poly({{0, 0}, {2, 0}, {0, 3}})));
    CHECK(is_subset(poly({{0, 0}, {2, 0}, {0, 3}}), t));

    auto simplex3 = direct_sum(direct_sum(s1, s1), s1);
    CHECK(simplex3.lattice_point_count() == 4);
    CHECK(is_subset(simplex3, poly({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}})));

    auto sq = minkowski_sum(poly({{0, 0}, {1, 0}}), poly({{0, 0}, {0, 1}}));
    CHECK(points_of(sq) == std::vector<Point>{{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    CHECK(minkowski_sum(s1, s1).lattice_point_count() == 3);
    auto tri = poly({{0, 0}, {2, 3}, {4, 2}});
    auto shifted = minkowski_sum(tri, poly({{1, 5}}));
    CHECK(is_subset(shifted, translate(tri, {1, 5})));
    CHECK(is_subset(translate(tri, {1, 5}), shifted));

    CHECK(points_of(dilate(s1, Int(3))) == std::vector<Point>{{0}, {1}, {2}, {3}});
    CHECK(dilate(direct_sum(s1, s1), Int(2)).lattice_point_count() == 6);
    CHECK(dilate(tri, Int(1)).generators() == tri.generators());

    CHECK(embed(sq, 3).lattice_point_count() == 4);
    CHECK(embed(s2, 4).lattice_point_count() == 3);
    CHECK(embed(s2, 4).ambient_dim() == 4);
}

TEST_CASE("unimodular maps preserve lattice-point counts") {
    auto sq = poly({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    UnimodularMap shear({{1, 1}, {0, 1}}, {0, 0});
    auto par = apply_unimodular(sq, shear);
    CHECK(par.lattice_point_count() == 4);
    CHECK(contains_point(par, {2, 1}));
    auto same = apply_unimodular(sq, UnimodularMap::identity(2));
    CHECK(same.generators() == sq.generators());
    auto tri = poly({{0, 0}, {2, 3}, {4, 2}});
    UnimodularMap m({{2, 1}, {1, 1}}, {-3, 4});
    CHECK(apply_unimodular(tri, m).lattice_point_count() == 7);
}

TEST_CASE("fits_in_box") {
    CHECK(fits_in_box(poly({{0, 0}, {1, 1}}), 5));
    CHECK_FALSE(fits_in_box(poly({{0, 0}, {5, 0}}), 5));
    CHECK(fits_in_box(poly({{0, 0, 0}, {0, 0, 5}, {4, 2, 0}}), 7));
    CHECK_FALSE(fits_in_box(poly({{-1, 0}}), 7));
}

TEST_CASE("segment of length two or unit square witness") {
    auto w1 = has_segment2_or_unit_square(poly({{0}, {2}}));
    REQUIRE(w1.has_value());
    CHECK(w1->kind == SegmentOrSquareWitness::Kind::Segment);
    CHECK(w1->points == std::vector<Point>{{0}, {1}, {2}});
    auto w2 = has_segment2_or_unit_square(poly({{0, 0}, {1, 0}, {0, 1}, {1, 1}}));
    REQUIRE(w2.has_value());
    CHECK(w2->kind == SegmentOrSquareWitness::Kind::Square);
    CHECK_FALSE(has_segment2_or_unit_square(poly({{0, 0}, {1, 0}, {0, 1}})).has_value());
    // Four lattice points (0,0),(1,1),(2,1),(1,2), no three collinear, no unit parallelogram.
    CHECK_FALSE(has_segment2_or_unit_square(poly({{0, 0}, {2, 1}, {1, 2}})).has_value());
    // The parallelogram (0,0),(1,0),(2,2),(1,2) has (1,1) inside, hence a segment of length two.
    auto w3 = has_segment2_or_unit_square(poly({{0, 0}, {1, 0}, {1, 2}, {2, 2}}));
    REQUIRE(w3.has_value());
    CHECK(w3->kind == SegmentOrSquareWitness::Kind::Segment);
}

TEST_CASE("membership agrees with a planar Caratheodory oracle") {
    std::mt19937_64 rng(20261014);
    std::uniform_int_distribution<int> coord(0, 7), count(1, 6);
    int checked = 0;
    for (int trial = 0; trial < 150; ++trial) {
        std::vector<P2> g;
        std::vector<Point> pts;
        for (int i = count(rng); i > 0; --i) {
            P2 v{coord(rng), coord(rng)};
            g.push_back(v);
            pts.push_back(Point{v[0], v[1]});
        }
        auto p = poly(pts);
        std::vector<Point> expected;
        for (std::int64_t y = -1; y <= 8; ++y)
            for (std::int64_t x = -1; x <= 8; ++x) {
                const bool want = oracle_contains(g, {x, y});
                CHECK(contains_point(p, {x, y}) == want);
                if (want) expected.push_back({x, y});
                ++checked;
            }
        CHECK(p.lattice_points() == expected);
    }
    CHECK(checked == 15000);
}

TEST_CASE("count identities on random polytopes") {
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<int> coord(0, 3), count(1, 4);
    auto random_poly = [&](std::size_t dim) {
        std::vector<Point> pts;
        for (int i = count(rng); i > 0; --i) {
            std::vector<Int> c;
            for (std::size_t j = 0; j < dim; ++j) c.emplace_back(coord(rng));
            pts.emplace_back(std::move(c));
        }
        return poly(pts);
    };
    for (int trial = 0; trial < 25; ++trial) {
        auto a = random_poly(1 + trial % 2);
        auto b = random_poly(1 + (trial / 2) % 2);
        CHECK(product(a, b).lattice_point_count() == a.lattice_point_count() * b.lattice_point_count());
        CHECK(join(a, b).lattice_point_count() == a.lattice_point_count() + b.lattice_point_count());
        CHECK(embed(a, a.ambient_dim() + 2).lattice_point_count() == a.lattice_point_count());
        if (a.ambient_dim() == b.ambient_dim()) {
            auto ab = minkowski_sum(a, b), ba = minkowski_sum(b, a);
            CHECK(is_subset(ab, ba));
            CHECK(is_subset(ba, ab));
            auto c = random_poly(a.ambient_dim());
            auto l = minkowski_sum(minkowski_sum(a, b), c), r = minkowski_sum(a, minkowski_sum(b, c));
            CHECK(is_subset(l, r));
            CHECK(is_subset(r, l));
        }
    }
}

TEST_CASE("slices") {
    auto t = poly({{0, 0}, {2, 3}, {4, 2}});
    auto s = slice(t, 1, Int(2));
    REQUIRE(s.has_value());
    CHECK(s->lattice_point_count() == 3);  // x in {2,3,4}
    CHECK_FALSE(slice(t, 1, Int(4)).has_value());
}

TEST_CASE("expression trees") {
    auto sq = PolytopeExpr::box({1, 1});
    CHECK(sq.evaluate().lattice_points() == std::vector<Point>{{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    CHECK(sq.lattice_point_count() == 4);
    auto ds = PolytopeExpr::direct_sum(PolytopeExpr::segment(2), PolytopeExpr::segment(3));
    CHECK(ds.evaluate().lattice_point_count() == 7);
    CHECK(is_subset(ds.evaluate(), poly({{0, 0}, {2, 0}, {0, 3}})));
    auto j = PolytopeExpr::join(PolytopeExpr::segment(2), PolytopeExpr::segment(2));
    CHECK(j.evaluate().lattice_point_count() == 6);
    CHECK(j.lattice_point_count() == 6);
    CHECK(j.ambient_dim() == 3);
    auto simp = PolytopeExpr::simplex(3, 4);
    CHECK(simp.lattice_point_count() == 35);
    CHECK(simp.evaluate().lattice_point_count() == 35);
    auto dil = PolytopeExpr::dilate(PolytopeExpr::simplex(2, 1), 2);
    CHECK(dil.lattice_point_count() == 6);
    CHECK(dil.evaluate().lattice_point_count() == 6);
    auto e = PolytopeExpr::embed(PolytopeExpr::box({2, 1}), 4);
    CHECK(e.lattice_point_count() == 6);
    CHECK(e.fits_in_box(5));
    CHECK_FALSE(e.fits_in_box(3));
    CHECK(e.to_string() == "embed(box(2,1),4)");
    CHECK(kind_of([] { PolytopeExpr::embed(PolytopeExpr::segment(1), 1); }) == ErrorKind::TargetTooSmall);
    auto off = PolytopeExpr::atom(poly({{1}, {2}}));
    CHECK(kind_of([&] { PolytopeExpr::direct_sum(off, off); }) == ErrorKind::OriginMissing);
    CHECK(PolytopeExpr::join(sq, sq).extents().back() == std::pair<Int, Int>{0, 1});
}
