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

#include "reproduce.hpp"

#include <map>

#include "polycode/decomp.hpp"
#include "polycode/error.hpp"
#include "polycode/families.hpp"
#include "polycode/io.hpp"
#include "polycode/toric.hpp"

namespace polycode::cli {

namespace {

using lattice::LatticePolytope;
using lattice::Point;
using lattice::PolytopeExpr;

std::string str(const Int& x) { return x.str(); }
std::string str(const Rational& r) { return numerator(r).str() + "/" + denominator(r).str(); }
std::string str(std::size_t x) { return std::to_string(x); }
std::string str(bool b) { return b ? "true" : "false"; }

std::string points(const std::vector<Point>& pts) {
    std::string s;
    for (const auto& p : pts) s += p.to_string();
    return s;
}

LatticePolytope poly(std::vector<Point> pts) { return LatticePolytope::from_vertices(std::move(pts)); }

LatticePolytope triangle() { return poly({{0, 0}, {2, 3}, {4, 2}}); }

using Sink = std::vector<ReproCheck>;

struct Ctx {
    const ReproOptions& opts;
    Sink& out;
    std::string example;

    void add(std::string label, std::string expected, std::string actual) {
        out.push_back({example, std::move(label), std::move(expected), std::move(actual)});
    }
    toric::SearchOptions search() const { return {opts.distance_budget, opts.threads}; }
    toric::EngineOptions engine(toric::EngineMode m = toric::EngineMode::Auto) const { return {m, search()}; }
};

void unitbox(Ctx& c) {
    const ff::FieldTable f(5);
    std::string elems;
    for (auto e : f.nonzero_elements()) elems += std::to_string(e);
    c.add("F_5 torus coordinates", "1234", elems);
    const auto sq = PolytopeExpr::box({1, 1}).evaluate();
    c.add("lattice points, monomial order 1,x,y,xy", "(0,0)(1,0)(0,1)(1,1)", points(sq.lattice_points()));
    const toric::GeneratorMatrix g(sq, f);
    const char* rows[] = {"1111111111111111", "1111222233334444", "1234123412341234", "1234241331424321"};
    for (std::size_t r = 0; r < 4; ++r) {
        std::string got;
        for (std::size_t col = 0; col < g.cols(); ++col) got += std::to_string(g.entry(r, col));
        c.add("generator matrix row " + std::to_string(r + 1), rows[r], got);
    }
    c.add("rank", "4", str(toric::rank_check(g)));
    c.add("fits in [0,3]^2", "true", str(lattice::fits_in_box(sq, 5)));
    const auto ex = toric::min_distance_exhaustive(sq, f, c.search());
    c.add("exhaustive d", "9", str(ex.d()));
    c.add("max zeros 2q-3", "7", str(ex.max_zeros()));
    c.add("delta", "9/16", str(ex.delta()));
    c.add("rate", "1/4", str(ex.rate()));
    c.add("box theorem d", "9", str(toric::params_by_formula(PolytopeExpr::box({1, 1}), f, c.engine()).d()));
    c.add("unit-square witness", "true", str(lattice::has_segment2_or_unit_square(sq).has_value()));
}

void triangle_example(Ctx& c) {
    const auto t = triangle();
    c.add("lattice points", "7", str(t.lattice_point_count()));
    c.add("contains (2,2)", "true", str(t.contains(Point{2, 2})));
}

void join_figure(Ctx& c) {
    const auto j = lattice::join(PolytopeExpr::segment(2).evaluate(), PolytopeExpr::segment(3).evaluate());
    c.add("[0,2]*[0,3] ambient dimension", "3", str(j.ambient_dim()));
    c.add("[0,2]*[0,3] lattice points", "7", str(j.lattice_point_count()));
}

void segments(Ctx& c) {
    const ff::FieldTable f(7);
    for (std::int64_t l = 1; l <= 5; ++l)
        c.add("max zeros of [0," + std::to_string(l) + "] at q=7", std::to_string(l),
              str(toric::min_distance_exhaustive(PolytopeExpr::segment(l).evaluate(), f, c.search()).max_zeros()));
    const auto w = lattice::has_segment2_or_unit_square(PolytopeExpr::segment(2).evaluate());
    c.add("[0,2] segment witness", "(0)(1)(2)", w ? points(w->points) : "none");
}

void dirsimplex(Ctx& c) {
    LatticePolytope sum = PolytopeExpr::segment(1).evaluate();
    for (int i = 1; i < 3; ++i) sum = lattice::direct_sum(sum, PolytopeExpr::segment(1).evaluate());
    c.add("unit segments summed three times", points(PolytopeExpr::simplex(3, 1).evaluate().lattice_points()),
          points(sum.lattice_points()));
    const ff::FieldTable f(7);
    const auto e = PolytopeExpr::direct_sum(PolytopeExpr::segment(2), PolytopeExpr::segment(3));
    c.add("delta of [0,2] sum [0,3] at q=7", "1/2", str(toric::params_by_formula(e, f, c.engine()).delta()));
    families::FamilySpec s;
    s.kind = families::FamilyKind::Simplices;
    s.schedule = {2};
    s.depth = 5;
    s.distance_budget = c.opts.distance_budget;
    s.node_budget = c.opts.node_budget;
    s.threads = c.opts.threads;
    std::string deltas;
    for (const auto& r : families::family_simplices(s)) deltas += str(r.delta) + " ";
    c.add("simplex family delta, l=2, q=5", "1/2 1/2 1/2 1/2 1/2 ", deltas);
}

void minkowski(Ctx& c) {
    const auto s = lattice::minkowski_sum(poly({{0, 0}, {1, 0}}), poly({{0, 0}, {0, 1}}));
    c.add("[0,e1] + [0,e2]", "(0,0)(1,0)(0,1)(1,1)", points(s.lattice_points()));
}

void directsum(Ctx& c) {
    const ff::FieldTable f(7);
    const auto e = PolytopeExpr::direct_sum(PolytopeExpr::atom(triangle()), PolytopeExpr::segment(5));
    const auto lo = toric::slice_lower_bound(e, f, c.search());
    const auto hi = toric::witness_upper_bound(e, f);
    c.add("slice lower bound", "36", str(lo.bound));
    c.add("witness zeros", "180", str(hi.zeros));
    c.add("witness upper bound", "36", str(hi.bound));
    c.add("(q-1)^3 - 5(q-1)^2", "36", str(ipow(Int(6), 3) - 5 * ipow(Int(6), 2)));
    const auto p = toric::params_by_formula(e, f, c.engine(toric::EngineMode::Bounds));
    c.add("certified d without search", "36", p.exact() ? str(p.d()) : "[" + str(p.d_lo) + "," + str(p.d_hi) + "]");
}

void embed(Ctx& c) {
    const ff::FieldTable f(5);
    const auto p = toric::params_by_formula(PolytopeExpr::embed(PolytopeExpr::box({1, 1}), 3), f, c.engine());
    c.add("embedded square delta", "9/16", str(p.delta()));
    c.add("embedded square rate", "1/16", str(p.rate()));
}

void fig7(Ctx& c) {
    const LatticePolytope shapes[] = {poly({{0, 0}, {2, 1}, {1, 2}}), poly({{0, 0}, {2, 0}, {0, 2}}),
                                      poly({{1, 0}, {0, 1}, {3, 3}, {3, 2}, {2, 0}})};
    const char* names[] = {"(a)", "(b)", "(c)"};
    for (int i = 0; i < 3; ++i) {
        const auto r = decomp::full_minkowski_length(shapes[i], c.opts.node_budget);
        const bool ok = !r.budget_exceeded && decomp::verify_witness(shapes[i], r.witness);
        c.add(std::string("full Minkowski length ") + names[i], std::to_string(i + 1),
              ok ? str(r.value) : "unverified");
    }
}

void cube(Ctx& c) {
    for (std::size_t n = 1; n <= 4; ++n) {
        const auto b = PolytopeExpr::box(std::vector<std::int64_t>(n, 1)).evaluate();
        c.add("M([0,1]^" + std::to_string(n) + ")", str(n), str(decomp::hypercube_dimension(b, c.opts.node_budget).value));
    }
}

void selfjoin(Ctx& c) {
    const auto fp = families::verify_fixed_point(Rational(9, 16), 5);
    c.add("fixed point from 9/16 at q=5", "true", str(fp.holds));
    c.add("delta_20", "9/16", str(fp.deltas.back()));
}

using Runner = void (*)(Ctx&);

const std::vector<std::pair<std::string, Runner>>& table() {
    static const std::vector<std::pair<std::string, Runner>> t = {
        {"unitbox", unitbox},       {"triangle", triangle_example}, {"join", join_figure}, {"segments", segments},
        {"dirsimplex", dirsimplex}, {"minkowski", minkowski},       {"directsum", directsum}, {"embed", embed},
        {"fig7", fig7},             {"cube", cube},                 {"selfjoin", selfjoin},
    };
    return t;
}

}  // namespace

const std::vector<std::string>& example_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [name, run] : table()) v.push_back(name);
        return v;
    }();
    return names;
}

std::vector<ReproCheck> run_examples(const std::vector<std::string>& names, const ReproOptions& opts) {
    for (const auto& n : names)
        if (std::find(example_names().begin(), example_names().end(), n) == example_names().end())
            throw Error(ErrorKind::InvalidArgument, "unknown example \"" + n + "\"");
    std::vector<ReproCheck> out;
    for (const auto& [name, run] : table()) {
        if (!names.empty() && std::find(names.begin(), names.end(), name) == names.end()) continue;
        Ctx c{opts, out, name};
        run(c);
    }
    return out;
}

}  // namespace polycode::cli
