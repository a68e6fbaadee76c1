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

#include <functional>
#include <random>

#include "doctest.h"
#include "polycode/error.hpp"
#include "polycode/toric.hpp"

using namespace polycode;
using namespace polycode::toric;
using lattice::DirectSumHypothesis;

namespace {

LatticePolytope poly(std::vector<Point> pts) { return LatticePolytope::from_vertices(std::move(pts)); }

// Brute force over all q^k messages for prime q with plain modular
// arithmetic, evaluating each polynomial at every torus point.
std::uint64_t oracle_distance(const LatticePolytope& p, std::uint32_t q) {
    const auto& pts = p.lattice_points();
    const std::size_t n = p.ambient_dim(), k = pts.size();
    auto powmod = [q](std::uint64_t a, std::uint64_t e) {
        std::uint64_t r = 1;
        while (e--) r = r * a % q;
        return r;
    };
    std::vector<std::vector<std::uint64_t>> torus{{}};
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::vector<std::uint64_t>> next;
        for (const auto& t : torus)
            for (std::uint64_t a = 1; a < q; ++a) {
                auto u = t;
                u.push_back(a);
                next.push_back(u);
            }
        torus = std::move(next);
    }
    std::vector<std::vector<std::uint64_t>> mono(k);
    for (std::size_t r = 0; r < k; ++r)
        for (const auto& t : torus) {
            std::uint64_t v = 1;
            for (std::size_t j = 0; j < n; ++j) v = v * powmod(t[j], static_cast<std::uint64_t>(pts[r][j])) % q;
            mono[r].push_back(v);
        }
    std::uint64_t best = torus.size();
    std::vector<std::uint64_t> m(k, 0);
    for (;;) {
        std::size_t i = 0;
        while (i < k && m[i] == q - 1) m[i++] = 0;
        if (i == k) break;
        ++m[i];
        std::uint64_t w = 0;
        for (std::size_t c = 0; c < torus.size(); ++c) {
            std::uint64_t s = 0;
            for (std::size_t r = 0; r < k; ++r) s += m[r] * mono[r][c];
            if (s % q) ++w;
        }
        best = std::min(best, w);
    }
    return best;
}

LatticePolytope square(std::int64_t l) { return poly({{0, 0}, {l, 0}, {0, l}, {l, l}}); }

LatticePolytope random_poly(std::mt19937_64& rng, std::size_t dim, int hi, int max_vertices) {
    std::uniform_int_distribution<int> coord(0, hi), count(1, max_vertices);
    std::vector<Point> pts;
    for (int i = count(rng); i > 0; --i) {
        std::vector<Int> c;
        for (std::size_t j = 0; j < dim; ++j) c.emplace_back(coord(rng));
        pts.emplace_back(std::move(c));
    }
    return poly(pts);
}

}  // namespace

TEST_CASE("generator matrix of the unit square over F_5") {
    FieldTable f(5);
    GeneratorMatrix g(poly({{0, 0}, {1, 1}, {1, 0}, {0, 1}}), f);
    const std::vector<std::vector<int>> expected{
        {1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1},
        {1, 1, 1, 1, 2, 2, 2, 2, 3, 3, 3, 3, 4, 4, 4, 4},
        {1, 2, 3, 4, 1, 2, 3, 4, 1, 2, 3, 4, 1, 2, 3, 4},
        {1, 2, 3, 4, 2, 4, 1, 3, 3, 1, 4, 2, 4, 3, 2, 1},
    };
    REQUIRE(g.rows() == 4);
    REQUIRE(g.cols() == 16);
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 16; ++c) CHECK(g.entry(r, c) == expected[r][c]);
    CHECK(g.col_label(6) == std::vector<Elem>{2, 3});
    CHECK(rank_check(g) == 4);
}

TEST_CASE("small generator matrices") {
    FieldTable f5(5), f3(3);
    GeneratorMatrix pt(poly({{0, 0}}), f5);
    CHECK(pt.rows() == 1);
    CHECK(pt.cols() == 16);
    for (std::size_t c = 0; c < 16; ++c) CHECK(pt.entry(0, c) == 1);
    CHECK(rank_check(pt) == 1);
    GeneratorMatrix seg(poly({{0}, {1}}), f3);
    CHECK(std::vector<Elem>(seg.row(0).begin(), seg.row(0).end()) == std::vector<Elem>{1, 1});
    CHECK(std::vector<Elem>(seg.row(1).begin(), seg.row(1).end()) == std::vector<Elem>{1, 2});
    CHECK(rank_check(GeneratorMatrix(poly({{0}, {2}}), f5)) == 3);
    CHECK_THROWS_AS(GeneratorMatrix(poly({{0}, {4}}), f5), Error);
}

TEST_CASE("exhaustive distances of the worked examples") {
    FieldTable f5(5);
    auto sq = min_distance_exhaustive(square(1), f5);
    CHECK(sq.d() == 9);
    CHECK(sq.max_zeros() == 7);
    CHECK(sq.delta() == Rational(9, 16));
    CHECK(sq.rate() == Rational(1, 4));
    CHECK(min_distance_exhaustive(poly({{0, 0}}), f5).d() == 16);
    CHECK(min_distance_exhaustive(poly({{0, 0}, {2, 0}, {0, 2}}), f5).d() == 8);
    auto j = min_distance_exhaustive(PolytopeExpr::join(PolytopeExpr::segment(2), PolytopeExpr::segment(2)).evaluate(), f5);
    CHECK(j.d() == 32);
    CHECK(j.k == 6);
}

TEST_CASE("budget guard") {
    FieldTable f5(5);
    SearchOptions tiny;
    tiny.budget = 10;
    try {
        min_distance_exhaustive(square(1), f5, tiny);
        FAIL("expected BudgetExceeded");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::BudgetExceeded);
        CHECK(std::string(e.what()).find("156") != std::string::npos);
    }
    CHECK(candidate_count(5, 4) == 156);
}

TEST_CASE("parallel kernel, serial reference and brute-force oracle agree") {
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 60; ++trial) {
        const std::uint32_t q = std::vector<std::uint32_t>{3, 4, 5, 7, 8, 9}[trial % 6];
        FieldTable f(q);
        const std::size_t dim = 1 + trial % 3;
        auto p = random_poly(rng, dim, static_cast<int>(q) - 2, 4);
        if (candidate_count(q, p.lattice_point_count()) > 200000) continue;
        CAPTURE(trial);
        GeneratorMatrix g(p, f);
        const SearchResult serial = min_weight_search_serial(g);
        SearchOptions one, many;
        one.threads = 1;
        many.threads = 4;
        const SearchResult a = min_weight_search(g, one);
        const SearchResult b = min_weight_search(g, many);
        CHECK(a.distance == serial.distance);
        CHECK(a.witness.message == serial.witness.message);
        CHECK(b.witness.message == serial.witness.message);
        CHECK(encode(g, a.witness.message).weight == a.distance);
        if (q == 3 || q == 5 || q == 7) CHECK(a.distance == oracle_distance(p, q));
        CHECK(rank_check(g) == p.lattice_point_count());
    }
}

TEST_CASE("scalar multiples have equal weight") {
    FieldTable f(7);
    GeneratorMatrix g(poly({{0, 0}, {3, 1}, {1, 4}}), f);
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<int> el(0, 6), nz(1, 6);
    for (int t = 0; t < 50; ++t) {
        std::vector<Elem> m(g.rows()), cm(g.rows());
        const Elem c = static_cast<Elem>(nz(rng));
        for (std::size_t i = 0; i < m.size(); ++i) {
            m[i] = static_cast<Elem>(el(rng));
            cm[i] = f.mul(c, m[i]);
        }
        CHECK(encode(g, m).weight == encode(g, cm).weight);
    }
}

TEST_CASE("formula rules") {
    FieldTable f5(5), f7(7);
    EngineOptions formula_only;
    formula_only.mode = EngineMode::Formula;
    auto box = params_by_formula(PolytopeExpr::box({1, 1}), f5, formula_only);
    CHECK(box.d() == 9);
    CHECK(box.rule == "box");
    CHECK(box.method == Method::Formula);
    auto j = params_by_formula(PolytopeExpr::join(PolytopeExpr::segment(2), PolytopeExpr::segment(2)), f5, formula_only);
    CHECK(j.d() == 32);
    CHECK(j.delta() == Rational(1, 2));
    CHECK(j.rule == "join-corollary");
    CHECK(join_max_zeros(5, 1, 1, 2, 2) == 32);

    auto ds = params_by_formula(PolytopeExpr::direct_sum(PolytopeExpr::segment(2), PolytopeExpr::segment(3),
                                                         DirectSumHypothesis::Asserted),
                                f7, formula_only);
    CHECK(ds.delta() == Rational(1, 2));
    auto ds_unknown = params_by_formula(PolytopeExpr::direct_sum(PolytopeExpr::segment(2), PolytopeExpr::segment(3)), f7);
    CHECK(ds_unknown.delta() == Rational(1, 2));

    CHECK(params_by_formula(PolytopeExpr::segment(3), f7).max_zeros() == 3);
    CHECK(max_zeros(PolytopeExpr::atom(poly({{1, 1}})), f5) == 0);
    CHECK_THROWS_AS(params_by_formula(PolytopeExpr::box({4}), f5), Error);

    auto emb = params_by_formula(PolytopeExpr::embed(PolytopeExpr::box({1, 1}), 3), f5);
    CHECK(emb.delta() == Rational(9, 16));
    CHECK(emb.rate() == Rational(1, 16));
}

TEST_CASE("formula rules agree with exhaustive search") {
    FieldTable f5(5);
    const std::vector<PolytopeExpr> exprs{
        PolytopeExpr::simplex(2, 2),
        PolytopeExpr::product(PolytopeExpr::segment(1), PolytopeExpr::simplex(2, 1)),
        PolytopeExpr::join(PolytopeExpr::segment(1), PolytopeExpr::segment(1)),
        PolytopeExpr::join(PolytopeExpr::box({1, 1}), PolytopeExpr::segment(2)),
        PolytopeExpr::join(PolytopeExpr::atom(poly({{0}})), PolytopeExpr::segment(3)),
        PolytopeExpr::dilate(PolytopeExpr::simplex(2, 1), 2),
        PolytopeExpr::embed(PolytopeExpr::segment(2), 2),
    };
    EngineOptions formula_only;
    formula_only.mode = EngineMode::Formula;
    for (const auto& e : exprs) {
        CAPTURE(e.to_string());
        auto r = params_by_formula(e, f5, formula_only);
        REQUIRE(r.exact());
        CHECK(r.d() == min_distance_exhaustive(e.evaluate(), f5).d());
        CHECK(r.k == Int(e.evaluate().lattice_point_count()));
    }
}

TEST_CASE("direct-sum slice and witness bounds") {
    FieldTable f7(7);
    auto tri = PolytopeExpr::atom(poly({{0, 0}, {2, 3}, {4, 2}}));
    auto e = PolytopeExpr::direct_sum(tri, PolytopeExpr::segment(5));
    CHECK(e.evaluate().lattice_point_count() == 18);
    auto s = slice_lower_bound(e, f7);
    CHECK(s.bound == 36);
    CHECK(s.terms.size() == 6);
    CHECK(s.terms.back() == 36);
    auto w = witness_upper_bound(e, f7);
    CHECK(w.bound == 36);
    CHECK(w.zeros == 180);
    EngineOptions bounds_only;
    bounds_only.mode = EngineMode::Bounds;
    auto p = params_by_formula(e, f7, bounds_only);
    CHECK(p.exact());
    CHECK(p.d() == 36);
    CHECK(p.rule == "direct-sum-sandwich");

    FieldTable f5(5);
    CHECK(witness_upper_bound(PolytopeExpr::segment(2), f5).bound == 2);
    auto small = PolytopeExpr::direct_sum(PolytopeExpr::segment(2), PolytopeExpr::segment(1));
    const auto sb = slice_lower_bound(small, f5);
    const auto exact = min_distance_exhaustive(small.evaluate(), f5).d();
    CHECK(sb.bound <= exact);
    CHECK(exact <= witness_upper_bound(small, f5).bound);
    auto zero = PolytopeExpr::direct_sum(PolytopeExpr::box({1, 1}), PolytopeExpr::segment(0));
    const auto zb = slice_lower_bound(zero, f5);
    CHECK(zb.terms.size() == 1);
    CHECK(zb.bound == 4 * 9);
    CHECK_THROWS_AS(slice_lower_bound(PolytopeExpr::box({1, 1}), f5), Error);
}

TEST_CASE("embedding and monotonicity identities") {
    FieldTable f5(5);
    auto sq = min_distance_exhaustive(square(1), f5);
    auto e = embed_params(sq, 3);
    CHECK(e.delta() == Rational(9, 16));
    CHECK(e.rate() == Rational(1, 16));
    CHECK(embed_params(sq, 2).rate() == sq.rate());
    auto big = params_by_formula(PolytopeExpr::box({2, 2}), f5);
    CHECK(big.d() == 4);
    CHECK(delta_monotone(square(1), sq, square(2), big));
    CHECK_THROWS_AS(delta_monotone(square(2), big, square(1), sq), Error);
}

TEST_CASE("auto mode degrades to bounds beyond the budget") {
    FieldTable f5(5);
    EngineOptions tiny;
    tiny.search.budget = 5;
    auto r = params_by_formula(PolytopeExpr::atom(poly({{0, 0}, {2, 1}, {1, 2}})), f5, tiny);
    CHECK_FALSE(r.exact());
    CHECK(r.budget_limited);
    CHECK(r.d_lo <= 10);
    CHECK(r.d_hi >= 10);
}
