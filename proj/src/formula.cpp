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

#include <algorithm>
#include <array>

#include "polycode/error.hpp"
#include "polycode/toric.hpp"

namespace polycode::toric {

namespace {

using Kind = PolytopeExpr::Kind;
using lattice::DirectSumHypothesis;
using lattice::hypothesis_name;

std::array<Int, 4> join_terms(std::uint32_t q, std::size_t n, std::size_t m, const Int& np, const Int& nq) {
    const Int b = q - 1;
    const Int bn = ipow(b, n), bm = ipow(b, m);
    return {bn * bm, np * bm * b, nq * bn * b, b * np * nq + (bn - np) * (bm - nq)};
}

bool within_budget(std::uint32_t q, const Int& k, std::size_t n, const SearchOptions& opts) {
    if (k < 1 || k > 64) return false;
    if (ipow(Int(q - 1), n) >= Int(std::uint64_t{1} << 26)) return false;
    return candidate_count(q, static_cast<std::size_t>(k)) <= Int(opts.budget);
}

class Engine {
 public:
    Engine(const FieldTable& f, const EngineOptions& opts) : f_(f), opts_(opts), q_(f.order()), b_(f.order() - 1) {}

    CodeParams run(const PolytopeExpr& e) {
        CodeParams r = rule(e);
        if (!r.exact() && opts_.mode == EngineMode::Auto) {
            if (within_budget(q_, r.k, r.n, opts_.search)) {
                const std::string was = "rules gave [" + r.d_lo.str() + ", " + r.d_hi.str() + "] via " + r.rule;
                std::vector<std::string> notes = r.notes;
                r = min_distance_exhaustive(e.evaluate(), f_, opts_.search);
                r.notes = std::move(notes);
                r.notes.push_back(was);
            } else {
                r.budget_limited = true;
            }
        }
        return r;
    }

 private:
    CodeParams blank(std::size_t n, const Int& k) const {
        CodeParams p;
        p.q = q_;
        p.n = n;
        p.N = ipow(b_, n);
        p.k = k;
        return p;
    }

    CodeParams exact(std::size_t n, const Int& k, const Int& d, std::string rule) const {
        CodeParams p = blank(n, k);
        p.d_lo = p.d_hi = d;
        p.method = Method::Formula;
        p.rule = std::move(rule);
        return p;
    }

    static void merge_notes(CodeParams& into, const CodeParams& a, const CodeParams& b) {
        into.notes.insert(into.notes.end(), a.notes.begin(), a.notes.end());
        into.notes.insert(into.notes.end(), b.notes.begin(), b.notes.end());
        into.budget_limited = a.budget_limited || b.budget_limited;
    }

    CodeParams rule(const PolytopeExpr& e) {
        switch (e.kind()) {
            case Kind::Segment:
                return exact(1, Int(e.length() + 1), b_ - e.length(), "box");
            case Kind::Box: {
                Int d = 1;
                for (std::int64_t l : e.lengths()) d *= b_ - l;
                return exact(e.ambient_dim(), e.lattice_point_count(), d, "box");
            }
            case Kind::Simplex: {
                const std::size_t n = e.ambient_dim();
                return exact(n, e.lattice_point_count(), ipow(b_, n) - e.length() * ipow(b_, n - 1), "simplex");
            }
            case Kind::Product:
                return product(e);
            case Kind::Join:
                return join(e);
            case Kind::DirectSum:
                return direct_sum(e);
            case Kind::Dilate:
                return dilate(e);
            case Kind::Embed: {
                CodeParams c = run(e.child());
                CodeParams r = embed_params(c, e.target_dim());
                r.rule = "embed";
                if (c.exact()) r.method = Method::Formula;
                return r;
            }
            case Kind::Atom:
                break;
        }
        return fallback(e);
    }

    CodeParams product(const PolytopeExpr& e) {
        const CodeParams a = run(e.left());
        const CodeParams b = run(e.right());
        CodeParams r = blank(e.ambient_dim(), a.k * b.k);
        r.d_lo = a.d_lo * b.d_lo;
        r.d_hi = a.d_hi * b.d_hi;
        r.method = r.exact() ? Method::Formula : Method::Bounds;
        r.rule = "product";
        merge_notes(r, a, b);
        return r;
    }

    CodeParams join(const PolytopeExpr& e) {
        const CodeParams a = run(e.left());
        const CodeParams b = run(e.right());
        const std::size_t n = a.n, m = b.n;
        const bool corollary = lattice::has_segment2_or_unit_square(e.left().evaluate()).has_value() &&
                               lattice::has_segment2_or_unit_square(e.right().evaluate()).has_value();
        const std::array<Int, 2> np{a.max_zeros_lo(), a.max_zeros()};
        const std::array<Int, 2> nq{b.max_zeros_lo(), b.max_zeros()};
        // Each term is bilinear in (N(P), N(Q)), so its extremes over the
        // interval box sit at the corners.
        Int hi = 0;
        std::array<Int, 4> term_min;
        bool first = true;
        for (const Int& x : np)
            for (const Int& y : nq) {
                const auto t = join_terms(q_, n, m, x, y);
                for (std::size_t i = corollary ? 1 : 0; i < 4; ++i) {
                    hi = std::max(hi, t[i]);
                    term_min[i] = first ? t[i] : std::min(term_min[i], t[i]);
                }
                first = false;
            }
        Int lo = 0;
        for (std::size_t i = corollary ? 1 : 0; i < 4; ++i) lo = std::max(lo, term_min[i]);
        CodeParams r = blank(n + m + 1, a.k + b.k);
        r.d_lo = r.N - hi;
        r.d_hi = r.N - lo;
        r.method = r.exact() ? Method::Formula : Method::Bounds;
        r.rule = corollary ? "join-corollary" : "join";
        merge_notes(r, a, b);
        return r;
    }

    CodeParams direct_sum(const PolytopeExpr& e) {
        const bool right_seg = e.right().kind() == Kind::Segment;
        const bool left_seg = e.left().kind() == Kind::Segment;
        if (!right_seg && !left_seg) return fallback(e);
        const PolytopeExpr& base = right_seg ? e.left() : e.right();
        const std::int64_t l = (right_seg ? e.right() : e.left()).length();
        const CodeParams c = run(base);
        const std::size_t n = c.n;
        CodeParams r = blank(n + 1, e.lattice_point_count());
        r.notes = c.notes;
        r.budget_limited = c.budget_limited;

        const DirectSumHypothesis hyp = e.hypothesis();
        const Int formula_zeros = direct_sum_max_zeros(q_, n, c.max_zeros(), l);
        if (hyp == DirectSumHypothesis::Asserted && opts_.mode != EngineMode::Bounds && c.exact()) {
            r.d_lo = r.d_hi = r.N - formula_zeros;
            r.method = Method::Formula;
            r.rule = "direct-sum";
            r.notes.push_back("direct-sum hypothesis asserted by caller");
            return r;
        }

        // Sandwich: both witnesses of the formula exist unconditionally, so
        // the formula value bounds d from above; slices bound it from below.
        const std::size_t axis = right_seg ? n : 0;
        const LatticePolytope& whole = e.evaluate();
        const WitnessBound w = witness_along(whole, axis, l);
        const Int upper = std::min(w.bound, r.N - (c.max_zeros_lo() * b_));
        const SliceBound s = slices_along(whole, axis, /*strict=*/false);
        r.d_lo = std::max(Int(1), s.bound);
        r.d_hi = upper;
        if (r.d_lo > r.d_hi) r.d_lo = r.d_hi;
        r.rule = "direct-sum-sandwich";
        r.method = r.exact() ? Method::Formula : Method::Bounds;
        if (r.exact()) return r;

        if (opts_.mode == EngineMode::Auto && within_budget(q_, r.k, r.n, opts_.search)) {
            CodeParams x = min_distance_exhaustive(whole, f_, opts_.search);
            x.notes = r.notes;
            x.notes.push_back("sandwich [" + r.d_lo.str() + ", " + r.d_hi.str() + "]");
            if (c.exact()) {
                const bool agree = x.d_lo == r.N - formula_zeros;
                x.notes.push_back(std::string("direct-sum formula ") + (agree ? "agrees" : "disagrees") +
                                  " with exhaustive search (hypothesis " + hypothesis_name(hyp) + ")");
            }
            return x;
        }
        return r;
    }

    CodeParams dilate(const PolytopeExpr& e) {
        const PolytopeExpr& c = e.child();
        const std::int64_t s = e.factor();
        switch (c.kind()) {
            case Kind::Segment:
                return rule(PolytopeExpr::segment(c.length() * s));
            case Kind::Simplex:
                return rule(PolytopeExpr::simplex(c.ambient_dim(), c.length() * s));
            case Kind::Box: {
                std::vector<std::int64_t> l = c.lengths();
                for (auto& x : l) x *= s;
                return rule(PolytopeExpr::box(std::move(l)));
            }
            default:
                return fallback(e);
        }
    }

    CodeParams fallback(const PolytopeExpr& e) {
        const LatticePolytope& p = e.evaluate();
        const std::size_t n = p.ambient_dim();
        const Int k(p.lattice_point_count());
        if (k == 1) return exact(n, k, ipow(b_, n), "monomial");
        if (opts_.mode == EngineMode::Auto && within_budget(q_, k, n, opts_.search))
            return min_distance_exhaustive(p, f_, opts_.search);
        CodeParams r = blank(n, k);
        // P sits in a translate of its bounding box; translation leaves d unchanged.
        Int lo = 1;
        for (const auto& [a, z] : p.extents()) lo *= b_ - (z - a);
        r.d_lo = std::max(Int(1), lo);
        r.d_hi = std::min<Int>(r.N - k + 1, r.N - ipow(b_, n - 1));
        r.method = Method::Bounds;
        r.rule = "generic-bounds";
        if (opts_.mode == EngineMode::Auto) r.budget_limited = true;
        return r;
    }

 public:
    SliceBound slices_along(const LatticePolytope& p, std::size_t axis, bool strict) {
        SliceBound out;
        const Int top = p.extents()[axis].second;
        bool first = true;
        for (Int i = 0; i <= top; ++i) {
            Int d;
            if (p.ambient_dim() == 1) {
                if (!p.contains(lattice::Point(std::vector<Int>{i}))) continue;
                d = 1;
            } else {
                const auto s = lattice::slice(p, axis, i);
                if (!s) continue;
                if (strict) {
                    d = min_distance_exhaustive(*s, f_, opts_.search).d();
                } else {
                    EngineOptions sub = opts_;
                    sub.mode = EngineMode::Auto;
                    Engine inner(f_, sub);
                    d = inner.run(PolytopeExpr::atom(*s)).d_lo;
                }
            }
            const Int term = (b_ - i) * d;
            out.terms.push_back(term);
            out.slice_distance.push_back(d);
            out.bound = first ? term : std::min(out.bound, term);
            first = false;
        }
        return out;
    }

    WitnessBound witness_along(const LatticePolytope& p, std::size_t axis, std::int64_t l) const {
        const std::size_t n = p.ambient_dim();
        if (l < 0 || l > static_cast<std::int64_t>(q_) - 2)
            throw Error(ErrorKind::RuleInapplicable, "segment length must lie in [0, q-2]");
        std::vector<lattice::Point> seg;
        for (std::int64_t i = 0; i <= l; ++i) {
            lattice::Point x = lattice::Point::zero(n);
            x[axis] = i;
            if (!p.contains(x)) throw Error(ErrorKind::RuleInapplicable, "polytope lacks the segment point " + x.to_string());
            seg.push_back(std::move(x));
        }
        WitnessBound w;
        auto nz = f_.nonzero_elements();
        w.roots.assign(nz.begin(), nz.begin() + l);
        // Coefficients of prod (z - a_j), low degree first.
        std::vector<Elem> coef{1};
        for (Elem a : w.roots) {
            std::vector<Elem> next(coef.size() + 1, 0);
            for (std::size_t i = 0; i < coef.size(); ++i) {
                next[i + 1] = f_.add(next[i + 1], coef[i]);
                next[i] = f_.sub(next[i], f_.mul(a, coef[i]));
            }
            coef = std::move(next);
        }
        const Int total = ipow(b_, n);
        if (total <= Int(1 << 20) && Int(p.lattice_point_count()) * total <= Int(1 << 24)) {
            const GeneratorMatrix g(p, f_);
            std::vector<Elem> msg(g.rows(), 0);
            for (std::size_t i = 0; i < seg.size(); ++i) {
                const auto& rows = g.row_labels();
                const auto it = std::find(rows.begin(), rows.end(), seg[i]);
                msg[static_cast<std::size_t>(it - rows.begin())] = coef[i];
            }
            const Codeword cw = encode(g, msg);
            w.zeros = total - cw.weight;
        } else {
            std::uint64_t roots = 0;
            for (Elem z : nz) {
                Elem v = 0;
                for (std::size_t i = coef.size(); i-- > 0;) v = f_.add(f_.mul(v, z), coef[i]);
                if (v == 0) ++roots;
            }
            w.zeros = Int(roots) * ipow(b_, n - 1);
        }
        w.bound = total - w.zeros;
        return w;
    }

 private:
    const FieldTable& f_;
    EngineOptions opts_;
    std::uint32_t q_;
    Int b_;
};

struct SegmentSide {
    std::size_t axis;
    std::int64_t length;
};

SegmentSide segment_side(const PolytopeExpr& e) {
    if (e.kind() == Kind::DirectSum) {
        if (e.right().kind() == Kind::Segment) return {e.ambient_dim() - 1, e.right().length()};
        if (e.left().kind() == Kind::Segment) return {0, e.left().length()};
    }
    throw Error(ErrorKind::RuleInapplicable, "expected a direct sum with a segment summand: " + e.to_string());
}

void require_box(const PolytopeExpr& e, std::uint32_t q) {
    if (!e.fits_in_box(q))
        throw Error(ErrorKind::OutOfBox, e.to_string() + " does not fit in [0," + std::to_string(q - 2) + "]^" +
                                             std::to_string(e.ambient_dim()));
}

}  // namespace

Int join_max_zeros(std::uint32_t q, std::size_t n, std::size_t m, const Int& np, const Int& nq, bool drop_pure_term) {
    const auto t = join_terms(q, n, m, np, nq);
    Int best = drop_pure_term ? t[1] : t[0];
    for (std::size_t i = 1; i < 4; ++i) best = std::max(best, t[i]);
    return best;
}

Int direct_sum_max_zeros(std::uint32_t q, std::size_t n, const Int& np, std::int64_t l) {
    const Int b = q - 1;
    return std::max<Int>(np * b, l * ipow(b, n));
}

CodeParams params_by_formula(const PolytopeExpr& e, const FieldTable& field, const EngineOptions& opts) {
    require_box(e, field.order());
    return Engine(field, opts).run(e);
}

Int max_zeros(const PolytopeExpr& e, const FieldTable& field, const EngineOptions& opts) {
    const CodeParams p = params_by_formula(e, field, opts);
    return p.N - p.d();
}

SliceBound slice_lower_bound(const LatticePolytope& p, const FieldTable& field, const SearchOptions& opts) {
    if (!lattice::fits_in_box(p, field.order())) throw Error(ErrorKind::OutOfBox, "polytope does not fit in the box");
    EngineOptions eo;
    eo.search = opts;
    return Engine(field, eo).slices_along(p, p.ambient_dim() - 1, /*strict=*/true);
}

SliceBound slice_lower_bound(const PolytopeExpr& e, const FieldTable& field, const SearchOptions& opts) {
    const SegmentSide side = segment_side(e);
    require_box(e, field.order());
    EngineOptions eo;
    eo.search = opts;
    return Engine(field, eo).slices_along(e.evaluate(), side.axis, /*strict=*/true);
}

WitnessBound witness_upper_bound(const LatticePolytope& p, std::int64_t l, const FieldTable& field) {
    if (!lattice::fits_in_box(p, field.order())) throw Error(ErrorKind::OutOfBox, "polytope does not fit in the box");
    return Engine(field, {}).witness_along(p, p.ambient_dim() - 1, l);
}

WitnessBound witness_upper_bound(const PolytopeExpr& e, const FieldTable& field) {
    require_box(e, field.order());
    if (e.kind() == Kind::Segment) return Engine(field, {}).witness_along(e.evaluate(), 0, e.length());
    const SegmentSide side = segment_side(e);
    return Engine(field, {}).witness_along(e.evaluate(), side.axis, side.length);
}

}  // namespace polycode::toric
