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
#include "polycode/error.hpp"
#include "polycode/families.hpp"

using namespace polycode;
using namespace polycode::families;

namespace {

// Brute-force count of x >= 0 with sum x_j / l_j <= 1.
Int brute_simplex_count(const std::vector<std::int64_t>& l) {
    std::int64_t lcm = 1;
    for (auto s : l)
        if (s > 0) lcm = std::lcm(lcm, s);
    Int count = 0;
    std::vector<std::int64_t> x(l.size(), 0);
    while (true) {
        std::int64_t weight = 0;
        bool ok = true;
        for (std::size_t j = 0; j < l.size(); ++j) {
            if (l[j] == 0) {
                if (x[j] != 0) ok = false;
                continue;
            }
            weight += x[j] * (lcm / l[j]);
        }
        if (ok && weight <= lcm) ++count;
        std::size_t j = 0;
        for (; j < l.size(); ++j) {
            if (x[j] < l[j]) {
                ++x[j];
                break;
            }
            x[j] = 0;
        }
        if (j == l.size()) break;
    }
    return count;
}

FamilySpec spec_of(FamilyKind kind, std::vector<std::int64_t> schedule, std::size_t depth, std::uint32_t q = 5) {
    FamilySpec s;
    s.kind = kind;
    s.q = q;
    s.schedule = std::move(schedule);
    s.depth = depth;
    s.threads = 2;
    return s;
}

}  // namespace

TEST_CASE("simplex point count against enumeration") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::int64_t> side(0, 5);
    for (int t = 0; t < 120; ++t) {
        std::vector<std::int64_t> l(1 + t % 4);
        for (auto& s : l) s = side(rng);
        CHECK(simplex_point_count(l) == brute_simplex_count(l));
    }
    CHECK(simplex_point_count({}) == 1);
    CHECK(simplex_point_count({1, 1, 1, 1}) == 5);
    CHECK_THROWS_AS(simplex_point_count({-1}), Error);
}

TEST_CASE("boxes with full sides keep rate one") {
    const auto rows = family_boxes(spec_of(FamilyKind::Boxes, {3}, 5));
    REQUIRE(rows.size() == 5);
    Rational expect = 1;
    for (const auto& r : rows) {
        expect *= Rational(1, 4);
        CHECK(r.n == r.i);
        CHECK(r.rate == 1);
        CHECK(r.delta == expect);
    }
    CHECK(rows[0].method == "recurrence+exhaustive");
    CHECK(rows[0].L == 3);
    CHECK(rows[1].M == 2);
}

TEST_CASE("boxes with point factors") {
    const auto rows = family_boxes(spec_of(FamilyKind::Boxes, {0}, 4));
    Rational expect = 1;
    for (const auto& r : rows) {
        expect *= Rational(1, 4);
        CHECK(r.delta == 1);
        CHECK(r.rate == expect);
        CHECK(r.k == 1);
    }
}

TEST_CASE("boxes with mixed sides") {
    const auto rows = family_boxes(spec_of(FamilyKind::Boxes, {1, 2}, 2));
    CHECK(rows[1].delta == Rational(3, 8));
    CHECK(rows[1].d_lo == 6);
    CHECK(rows[1].k == 6);
}

TEST_CASE("boxes product identity for constant schedules") {
    for (std::uint32_t q : {3u, 4u, 5u, 7u}) {
        for (std::int64_t l = 0; l <= static_cast<std::int64_t>(q) - 2; ++l) {
            const auto rows = family_boxes(spec_of(FamilyKind::Boxes, {l}, 4, q));
            const Rational base(Int((l + 1) * (q - 1 - l)), Int((q - 1) * (q - 1)));
            Rational p = 1;
            for (const auto& r : rows) {
                p *= base;
                CHECK(r.delta * r.rate == p);
            }
        }
    }
}

TEST_CASE("schedule validation") {
    CHECK_THROWS_AS(family_boxes(spec_of(FamilyKind::Boxes, {4}, 2)), Error);
    CHECK_THROWS_AS(family_boxes(spec_of(FamilyKind::Boxes, {}, 2)), Error);
    CHECK_THROWS_AS(family_boxes(spec_of(FamilyKind::Boxes, {1, 2}, 3)), Error);
    CHECK_THROWS_AS(family_simplices(spec_of(FamilyKind::Simplices, {-1}, 1)), Error);
    try {
        family_boxes(spec_of(FamilyKind::Boxes, {1}, 0));
        FAIL("no throw");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ScheduleOutOfRange);
    }
}

TEST_CASE("simplices with constant side") {
    const auto rows = family_simplices(spec_of(FamilyKind::Simplices, {2}, 5));
    for (const auto& r : rows) {
        CHECK(r.delta == Rational(1, 2));
        REQUIRE(r.rate_bound);
        CHECK(r.rate <= *r.rate_bound);
        CHECK(r.k == brute_simplex_count(std::vector<std::int64_t>(r.i, 2)));
    }
    CHECK(rows[0].method == "recurrence+exhaustive");
}

TEST_CASE("simplices with growing side") {
    const auto rows = family_simplices(spec_of(FamilyKind::Simplices, {2, 3}, 2));
    CHECK(rows[1].delta == Rational(1, 4));
    CHECK(rows[1].k == 7);
    CHECK(rows[1].method == "recurrence+exhaustive");
}

TEST_CASE("unit simplices") {
    const auto rows = family_simplices(spec_of(FamilyKind::Simplices, {1}, 6));
    for (const auto& r : rows) {
        CHECK(r.k == Int(r.i + 1));
        CHECK(r.rate == Rational(Int(r.i + 1), ipow(Int(4), r.i)));
    }
}

TEST_CASE("self-join of the unit square") {
    FamilySpec s = spec_of(FamilyKind::SelfJoin, {}, 4);
    s.seed = PolytopeExpr::box({1, 1});
    const auto rows = family_self_join(s);
    REQUIRE(rows.size() == 4);
    const std::size_t dims[] = {2, 5, 11, 23};
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(rows[i].delta == Rational(9, 16));
        CHECK(rows[i].n == dims[i]);
        CHECK(rows[i].k == Int(4) << i);
    }
    CHECK(rows[1].method == "join-corollary+exhaustive");
    CHECK(self_join_step(Rational(9, 16), 5) == Rational(9, 16));
    CHECK(2 * Rational(9, 16) - Rational(81, 256) * Rational(5, 4) == Rational(747, 1024));
}

TEST_CASE("self-join of a segment") {
    FamilySpec s = spec_of(FamilyKind::SelfJoin, {}, 3);
    s.seed = PolytopeExpr::segment(2);
    const auto rows = family_self_join(s);
    CHECK(rows[0].delta == Rational(1, 2));
    CHECK(rows[1].delta == Rational(1, 2));
    CHECK(rows[1].d_lo == 32);
    CHECK(rows[1].method == "join-corollary+exhaustive");
}

TEST_CASE("self-join without the corollary hypothesis") {
    // A unit segment has neither a length-2 segment nor a unit square.
    FamilySpec s = spec_of(FamilyKind::SelfJoin, {}, 3);
    s.seed = PolytopeExpr::segment(1);
    const auto rows = family_self_join(s);
    CHECK(rows[1].method == "join+exhaustive");
    const ff::FieldTable f(5);
    const auto e = PolytopeExpr::join(PolytopeExpr::segment(1), PolytopeExpr::segment(1));
    CHECK(toric::min_distance_exhaustive(e.evaluate(), f).d() == rows[1].d_lo);
    CHECK_THROWS_AS(family_self_join(spec_of(FamilyKind::SelfJoin, {}, 2)), Error);
}

TEST_CASE("fixed point iteration") {
    auto direct = [](Rational d, std::uint32_t q) {
        std::vector<Rational> out{d};
        for (int i = 1; i < 20; ++i) {
            const Rational a = 2 * d - d * d * q / (q - 1);
            d = a < d ? a : d;
            out.push_back(d);
        }
        return out;
    };
    const auto a = verify_fixed_point(Rational(9, 16), 5);
    CHECK(a.holds);
    CHECK(a.deltas.size() == 20);
    CHECK(a.deltas == direct(Rational(9, 16), 5));
    for (std::uint32_t q : {3u, 5u, 9u}) {
        const auto b = verify_fixed_point(Rational(q - 1, q), q);
        CHECK(b.holds);
        CHECK(b.deltas[1] == Rational(q - 1, q));
    }
    const auto c = verify_fixed_point(1, 5);
    CHECK(c.deltas[1] == Rational(3, 4));
    CHECK(c.holds);
    CHECK(verify_fixed_point(0, 5).holds);
    CHECK_THROWS_AS(verify_fixed_point(Rational(5, 4), 5), Error);
    CHECK_THROWS_AS(verify_fixed_point(Rational(-1, 4), 5), Error);
}

TEST_CASE("family CSV layout") {
    const auto rows = family_boxes(spec_of(FamilyKind::Boxes, {1, 2}, 2));
    const std::string csv = family_csv(rows);
    CHECK(csv.rfind("i,n,k,d_lo,d_hi,delta_num,delta_den,rate_num,rate_den,method,L,M\n", 0) == 0);
    CHECK(csv.find("\n2,2,6,6,6,3,8,3,8,recurrence+exhaustive,3,2\n") != std::string::npos);
}

TEST_CASE("probe finds no violated bounds") {
    ProbeSpec ps;
    ps.samples = 60;
    ps.seed = 7;
    ps.dim_max = 3;
    ps.threads = 2;
    const auto rep = conjecture_probe(ps);
    REQUIRE(rep.samples.size() == 60);
    CHECK(rep.violations == 0);
    CHECK(rep.samples.front().n == 1);
    CHECK(rep.samples.back().n == 3);
    for (const auto& s : rep.samples) {
        CHECK(s.params.k >= 1);
        CHECK(s.params.d_lo <= s.params.d_hi);
        CHECK(s.polytope.front() == '[');
        if (s.generator == ProbeGenerator::RandomHull) CHECK(s.k_vs_summands == "na");
    }
    ps.threads = 1;
    CHECK(probe_csv(conjecture_probe(ps)) == probe_csv(rep));
}
