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

#include "polycode/families.hpp"

#include <omp.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "polycode/error.hpp"

namespace polycode::families {

namespace {

using toric::CodeParams;

std::vector<std::int64_t> resolve_schedule(const FamilySpec& spec) {
    if (spec.depth < 1) throw Error(ErrorKind::ScheduleOutOfRange, "depth must be at least 1");
    if (spec.schedule.empty()) throw Error(ErrorKind::ScheduleOutOfRange, "empty length schedule");
    std::vector<std::int64_t> l = spec.schedule;
    if (l.size() == 1) l.assign(spec.depth, l[0]);
    if (l.size() < spec.depth)
        throw Error(ErrorKind::ScheduleOutOfRange, "schedule has " + std::to_string(l.size()) + " entries, depth is " +
                                                       std::to_string(spec.depth));
    l.resize(spec.depth);
    for (std::int64_t x : l)
        if (x < 0 || x > static_cast<std::int64_t>(spec.q) - 2)
            throw Error(ErrorKind::ScheduleOutOfRange, "side length " + std::to_string(x) + " outside [0, " +
                                                           std::to_string(spec.q - 2) + "]");
    return l;
}

Int exact_integer(const Rational& r, const char* what) {
    if (denominator(r) != 1) throw Error(ErrorKind::InvalidArgument, std::string("non-integral ") + what);
    return numerator(r);
}

void cross_check_failed(std::size_t i, const std::string& what) {
    throw Error(ErrorKind::InvalidArgument, "cross-check failed at row " + std::to_string(i) + ": " + what);
}

// Exhaustive d for rows small enough; nullopt otherwise.
std::optional<Int> exhaustive_d(const PolytopeExpr& e, const FamilySpec& spec, const Int& k, std::size_t n) {
    if (k > Int(spec.cross_check_max_k)) return std::nullopt;
    if (ipow(Int(spec.q - 1), n) >= Int(std::uint64_t{1} << 22)) return std::nullopt;
    if (toric::candidate_count(spec.q, static_cast<std::size_t>(k)) > Int(spec.distance_budget)) return std::nullopt;
    const ff::FieldTable f(spec.q);
    toric::SearchOptions so;
    so.budget = spec.distance_budget;
    so.threads = spec.threads;
    return toric::min_distance_exhaustive(e.evaluate(), f, so).d();
}

void attach_decomp(FamilyRow& row, const PolytopeExpr& e, const FamilySpec& spec) {
    if (row.k > Int(spec.decomp_max_points) || row.n > 12) return;
    const auto& p = e.evaluate();
    const auto l = decomp::full_minkowski_length(p, spec.node_budget);
    if (!l.budget_exceeded) row.L = l.value;
    const auto m = decomp::hypercube_dimension(p, spec.node_budget);
    if (!m.budget_exceeded) row.M = m.value;
}

FamilyRow make_row(std::size_t i, std::size_t n, const Int& k, const Int& d, std::uint32_t q, std::string method) {
    FamilyRow r;
    r.i = i;
    r.n = n;
    r.k = k;
    r.d_lo = r.d_hi = d;
    const Int big_n = ipow(Int(q - 1), n);
    r.delta = Rational(d, big_n);
    r.rate = Rational(k, big_n);
    r.method = std::move(method);
    return r;
}

}  // namespace

const char* family_kind_name(FamilyKind k) noexcept {
    switch (k) {
        case FamilyKind::Boxes:
            return "boxes";
        case FamilyKind::Simplices:
            return "simplices";
        case FamilyKind::SelfJoin:
            break;
    }
    return "self-join";
}

std::vector<FamilyRow> family_boxes(const FamilySpec& spec) {
    const std::vector<std::int64_t> l = resolve_schedule(spec);
    const Int b = spec.q - 1;
    Rational delta = 1, rate = 1;
    std::vector<std::int64_t> sides;
    std::vector<FamilyRow> rows;
    for (std::size_t i = 1; i <= spec.depth; ++i) {
        const std::int64_t li = l[i - 1];
        sides.push_back(li);
        delta *= Rational(b - li, b);
        rate *= Rational(Int(li + 1), b);
        const Int big_n = ipow(b, i);
        const Int d = exact_integer(delta * big_n, "distance");
        const Int k = exact_integer(rate * big_n, "dimension");
        const PolytopeExpr e = PolytopeExpr::box(sides);

        Int theorem = 1, count = 1;
        for (std::int64_t s : sides) {
            theorem *= b - s;
            count *= s + 1;
        }
        if (theorem != d) cross_check_failed(i, "box theorem gives " + theorem.str());
        if (count != k) cross_check_failed(i, "side product gives k=" + count.str());
        if (k <= 4096 && Int(e.evaluate().lattice_point_count()) != k) cross_check_failed(i, "lattice-point count");

        std::string method = "recurrence";
        if (auto x = exhaustive_d(e, spec, k, i)) {
            if (*x != d) cross_check_failed(i, "exhaustive d=" + x->str());
            method += "+exhaustive";
        }
        FamilyRow row = make_row(i, i, k, d, spec.q, method);
        attach_decomp(row, e, spec);
        rows.push_back(std::move(row));
    }
    return rows;
}

Int simplex_point_count(const std::vector<std::int64_t>& sides) {
    std::int64_t lcm = 1;
    std::vector<std::int64_t> nz;
    for (std::int64_t s : sides) {
        if (s < 0) throw Error(ErrorKind::InvalidArgument, "negative simplex side");
        if (s == 0) continue;
        nz.push_back(s);
        lcm = std::lcm(lcm, s);
        if (lcm > 20'000'000) throw Error(ErrorKind::InvalidArgument, "side lengths too irregular to count");
    }
    // x_j ≥ 0 with sum x_j (lcm / l_j) ≤ lcm: unbounded-knapsack counting.
    std::vector<Int> ways(static_cast<std::size_t>(lcm) + 1, Int(0));
    ways[0] = 1;
    for (std::int64_t s : nz) {
        const std::size_t w = static_cast<std::size_t>(lcm / s);
        for (std::size_t t = w; t < ways.size(); ++t) ways[t] += ways[t - w];
    }
    Int total = 0;
    for (const Int& x : ways) total += x;
    return total;
}

std::vector<FamilyRow> family_simplices(const FamilySpec& spec) {
    const std::vector<std::int64_t> l = resolve_schedule(spec);
    const Int b = spec.q - 1;
    Rational delta = 1;
    std::int64_t lmax = 0;
    std::vector<std::int64_t> sides;
    std::optional<PolytopeExpr> e;
    std::vector<FamilyRow> rows;
    for (std::size_t i = 1; i <= spec.depth; ++i) {
        const std::int64_t li = l[i - 1];
        sides.push_back(li);
        lmax = std::max(lmax, li);
        delta = std::min(delta, Rational(b - li, b));
        const PolytopeExpr seg = PolytopeExpr::segment(li);
        e = e ? PolytopeExpr::direct_sum(*e, seg) : seg;

        const Int big_n = ipow(b, i);
        const Int d = exact_integer(delta * big_n, "distance");
        const Int k = simplex_point_count(sides);
        if (k <= 4096 && Int(e->evaluate().lattice_point_count()) != k) cross_check_failed(i, "lattice-point count");

        std::string method = "recurrence";
        if (auto x = exhaustive_d(*e, spec, k, i)) {
            if (*x != d) cross_check_failed(i, "exhaustive d=" + x->str());
            method += "+exhaustive";
        }
        FamilyRow row = make_row(i, i, k, d, spec.q, method);
        row.rate_bound = Rational(binomial(i + static_cast<std::uint64_t>(lmax), static_cast<std::uint64_t>(lmax)), big_n);
        if (row.rate > *row.rate_bound) cross_check_failed(i, "rate exceeds the binomial bound");
        attach_decomp(row, *e, spec);
        rows.push_back(std::move(row));
    }
    return rows;
}

Rational self_join_step(const Rational& delta, std::uint32_t q) {
    const Rational alt = 2 * delta - delta * delta * Rational(q, q - 1);
    return std::min(delta, alt);
}

std::vector<FamilyRow> family_self_join(const FamilySpec& spec) {
    if (!spec.seed) throw Error(ErrorKind::InvalidArgument, "self-join family needs a seed polytope");
    if (spec.depth < 1) throw Error(ErrorKind::ScheduleOutOfRange, "depth must be at least 1");
    const ff::FieldTable f(spec.q);
    toric::EngineOptions eo;
    eo.search.budget = spec.distance_budget;
    eo.search.threads = spec.threads;
    const CodeParams seed = toric::params_by_formula(*spec.seed, f, eo);
    if (!seed.exact())
        throw Error(ErrorKind::RuleInapplicable, "seed distance only bounded: [" + seed.d_lo.str() + ", " + seed.d_hi.str() + "]");
    const bool corollary = lattice::has_segment2_or_unit_square(spec.seed->evaluate()).has_value();

    std::vector<FamilyRow> rows;
    PolytopeExpr e = *spec.seed;
    std::size_t n = seed.n;
    Int k = seed.k;
    Int zeros = seed.N - seed.d();
    FamilyRow first = make_row(1, n, k, seed.d(), spec.q, "seed:" + seed.rule);
    attach_decomp(first, e, spec);
    rows.push_back(std::move(first));
    for (std::size_t i = 2; i <= spec.depth; ++i) {
        zeros = toric::join_max_zeros(spec.q, n, n, zeros, zeros, corollary);
        const Rational prev = rows.back().delta;
        n = 2 * n + 1;
        k *= 2;
        e = PolytopeExpr::join(e, e);
        const Int d = ipow(Int(spec.q - 1), n) - zeros;
        std::string method = corollary ? "join-corollary" : "join";
        FamilyRow row = make_row(i, n, k, d, spec.q, method);
        if (corollary && row.delta != self_join_step(prev, spec.q)) cross_check_failed(i, "recurrence disagrees with the join rule");
        if (row.rate * ipow(Int(spec.q - 1), (n - 1) / 2 + 1) > 2) cross_check_failed(i, "rate above 2/(q-1)^(n+1)");
        if (auto x = exhaustive_d(e, spec, k, n)) {
            if (*x != d) cross_check_failed(i, "exhaustive d=" + x->str());
            row.method += "+exhaustive";
        }
        attach_decomp(row, e, spec);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<FamilyRow> run_family(const FamilySpec& spec) {
    switch (spec.kind) {
        case FamilyKind::Boxes:
            return family_boxes(spec);
        case FamilyKind::Simplices:
            return family_simplices(spec);
        case FamilyKind::SelfJoin:
            break;
    }
    return family_self_join(spec);
}

FixedPointCheck verify_fixed_point(const Rational& delta1, std::uint32_t q, std::size_t steps) {
    if (delta1 < 0 || delta1 > 1) throw Error(ErrorKind::InvalidArgument, "delta_1 must lie in [0, 1]");
    if (steps < 2) throw Error(ErrorKind::InvalidArgument, "need at least two steps");
    FixedPointCheck out;
    out.deltas.push_back(delta1);
    while (out.deltas.size() < steps) out.deltas.push_back(self_join_step(out.deltas.back(), q));
    out.holds = std::all_of(out.deltas.begin() + 1, out.deltas.end(), [&](const Rational& d) { return d == out.deltas[1]; });
    return out;
}

std::string family_csv(const std::vector<FamilyRow>& rows) {
    std::ostringstream os;
    os << "i,n,k,d_lo,d_hi,delta_num,delta_den,rate_num,rate_den,method,L,M\n";
    for (const FamilyRow& r : rows) {
        os << r.i << ',' << r.n << ',' << r.k << ',' << r.d_lo << ',' << r.d_hi << ',' << numerator(r.delta) << ','
           << denominator(r.delta) << ',' << numerator(r.rate) << ',' << denominator(r.rate) << ',' << r.method << ',';
        if (r.L) os << *r.L;
        os << ',';
        if (r.M) os << *r.M;
        os << '\n';
    }
    return os.str();
}

// ---------------------------------------------------------------------------

namespace {

std::uint64_t sample_seed(std::uint64_t seed, std::size_t index) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::string generators_text(const lattice::LatticePolytope& p) {
    std::string s = "[";
    for (std::size_t i = 0; i < p.generators().size(); ++i) {
        if (i) s += ",";
        s += "[";
        const auto& g = p.generators()[i];
        for (std::size_t j = 0; j < g.dim(); ++j) {
            if (j) s += ",";
            s += g[j].str();
        }
        s += "]";
    }
    return s + "]";
}

ProbeSample run_sample(const ProbeSpec& spec, std::size_t index, const ff::FieldTable& f) {
    ProbeSample s;
    s.index = index;
    s.generator = index % 2 == 0 ? ProbeGenerator::RandomHull : ProbeGenerator::UnitSimplexSum;
    const std::size_t span = spec.dim_max - spec.dim_min + 1;
    s.n = spec.dim_min + std::min(span - 1, index * span / std::max<std::size_t>(spec.samples, 1));
    std::mt19937_64 rng(sample_seed(spec.seed, index));
    const std::int64_t top = static_cast<std::int64_t>(spec.q) - 2;

    std::optional<lattice::LatticePolytope> p;
    if (s.generator == ProbeGenerator::RandomHull) {
        std::uniform_int_distribution<int> count(2, 6);
        std::uniform_int_distribution<std::int64_t> coord(0, top);
        std::vector<lattice::Point> pts;
        for (int v = count(rng); v > 0; --v) {
            std::vector<Int> c;
            for (std::size_t j = 0; j < s.n; ++j) c.emplace_back(coord(rng));
            pts.emplace_back(std::move(c));
        }
        p = lattice::LatticePolytope::from_vertices(std::move(pts));
    } else {
        std::uniform_int_distribution<std::size_t> summands(1, static_cast<std::size_t>(std::min<std::int64_t>(3, top)));
        std::uniform_int_distribution<std::uint64_t> mask(1, (std::uint64_t{1} << s.n) - 1);
        s.summands = summands(rng);
        for (std::size_t t = 0; t < s.summands; ++t) {
            const std::uint64_t m = mask(rng);
            std::vector<lattice::Point> gens{lattice::Point::zero(s.n)};
            for (std::size_t j = 0; j < s.n; ++j)
                if (m >> j & 1U) {
                    lattice::Point e = lattice::Point::zero(s.n);
                    e[j] = 1;
                    gens.push_back(std::move(e));
                }
            auto simplex = lattice::LatticePolytope::from_vertices(std::move(gens));
            p = p ? lattice::minkowski_sum(*p, simplex) : simplex;
        }
    }
    s.polytope = generators_text(*p);

    toric::EngineOptions eo;
    eo.search.budget = spec.distance_budget;
    eo.search.threads = 1;
    s.params = toric::params_by_formula(PolytopeExpr::atom(*p), f, eo);
    s.L = decomp::full_minkowski_length(*p, spec.node_budget);
    s.M = decomp::hypercube_dimension(*p, spec.node_budget);

    const Int k = s.params.k;
    const bool l_exact = !s.L.budget_exceeded, m_exact = !s.M.budget_exceeded;
    const Int k_bound = ipow(Int(s.L.value + 1), s.n);
    s.k_vs_L = k <= k_bound ? "ok" : (l_exact ? "violated" : "open");

    Rational cube = 1;
    for (std::size_t i = 0; i < s.M.value; ++i) cube *= Rational(spec.q - 2, spec.q - 1);
    if (s.params.delta() > cube)
        s.delta_vs_M = "violated";
    else
        s.delta_vs_M = (m_exact && s.params.delta_hi() <= cube) ? "ok" : "open";

    if (s.M.value <= s.L.value && m_exact)
        s.M_vs_L = "ok";
    else if (s.M.value > s.L.value && l_exact)
        s.M_vs_L = "violated";
    else
        s.M_vs_L = "open";

    if (s.generator == ProbeGenerator::UnitSimplexSum) {
        if (k > ipow(Int(s.n + 1), s.summands))
            s.k_vs_summands = "violated";
        else if (k <= ipow(Int(s.n + 1), s.L.value))
            s.k_vs_summands = "ok";
        else
            s.k_vs_summands = l_exact ? "violated" : "open";
    } else
        s.k_vs_summands = "na";

    if (l_exact && m_exact) {
        const std::size_t need = (s.L.value + spec.q - 3) / (spec.q - 2);
        s.box_experiment = s.M.value + 1 >= need ? "agree" : "disagree";
    } else {
        s.box_experiment = "open";
    }
    // Rate within a factor two of the (L+1)^n bound.
    s.outlier = s.n >= 2 && k >= 2 && l_exact && 2 * k >= k_bound;
    return s;
}

}  // namespace

ProbeReport conjecture_probe(const ProbeSpec& spec) {
    if (spec.dim_min < 1 || spec.dim_max < spec.dim_min || spec.dim_max > 16)
        throw Error(ErrorKind::InvalidArgument, "dimension schedule must satisfy 1 <= dim_min <= dim_max <= 16");
    const ff::FieldTable f(spec.q);
    ProbeReport rep;
    rep.spec = spec;
    rep.samples.resize(spec.samples);
    std::vector<std::string> errors(spec.samples);
    const int threads = spec.threads > 0 ? spec.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (std::size_t i = 0; i < spec.samples; ++i) {
        try {
            rep.samples[i] = run_sample(spec, i, f);
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    }
    for (std::size_t i = 0; i < spec.samples; ++i)
        if (!errors[i].empty()) throw Error(ErrorKind::InvalidArgument, "probe sample " + std::to_string(i) + ": " + errors[i]);
    for (const ProbeSample& s : rep.samples) {
        for (const std::string* c : {&s.k_vs_L, &s.delta_vs_M, &s.M_vs_L, &s.k_vs_summands}) {
            if (*c == "violated") ++rep.violations;
            if (*c == "open") ++rep.open_checks;
        }
        if (s.outlier) ++rep.outliers;
        if (s.box_experiment == "disagree") ++rep.experiment_disagreements;
    }
    return rep;
}

std::string probe_csv(const ProbeReport& report) {
    std::ostringstream os;
    os << "sample,seed,generator,n,summands,k,N,d_lo,d_hi,delta_num,delta_den,rate_num,rate_den,L,L_exact,M,M_exact,"
          "k_vs_L,delta_vs_M,M_vs_L,k_vs_summands,box_experiment,outlier,polytope\n";
    for (const ProbeSample& s : report.samples) {
        const auto& p = s.params;
        os << s.index << ',' << sample_seed(report.spec.seed, s.index) << ','
           << (s.generator == ProbeGenerator::RandomHull ? "hull" : "simplex-sum") << ',' << s.n << ',' << s.summands
           << ',' << p.k << ',' << p.N << ',' << p.d_lo << ',' << p.d_hi << ',' << numerator(p.delta()) << ','
           << denominator(p.delta()) << ',' << numerator(p.rate()) << ',' << denominator(p.rate()) << ',' << s.L.value
           << ',' << (s.L.budget_exceeded ? 0 : 1) << ',' << s.M.value << ',' << (s.M.budget_exceeded ? 0 : 1) << ','
           << s.k_vs_L << ',' << s.delta_vs_M << ',' << s.M_vs_L << ',' << s.k_vs_summands << ',' << s.box_experiment
           << ',' << (s.outlier ? 1 : 0) << ",\"" << s.polytope << "\"\n";
    }
    return os.str();
}

}  // namespace polycode::families
