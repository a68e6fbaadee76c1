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

#include "polycode/lattice.hpp"

#include <algorithm>
#include <set>

#include "polycode/error.hpp"
#include "polycode/smith.hpp"

namespace polycode::lattice {

Point::Point(std::initializer_list<std::int64_t> coords) {
    coords_.reserve(coords.size());
    for (std::int64_t c : coords) coords_.emplace_back(c);
}

bool Point::is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const Int& c) { return c == 0; });
}

std::strong_ordering operator<=>(const Point& a, const Point& b) {
    const std::size_t n = std::min(a.dim(), b.dim());
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] < b[i]) return std::strong_ordering::less;
        if (a[i] > b[i]) return std::strong_ordering::greater;
    }
    return a.dim() <=> b.dim();
}

std::string Point::to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (i) s += ",";
        s += coords_[i].str();
    }
    return s + ")";
}

Point operator+(const Point& a, const Point& b) {
    std::vector<Int> c(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) c[i] = a[i] + b[i];
    return Point(std::move(c));
}

Point operator-(const Point& a, const Point& b) {
    std::vector<Int> c(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) c[i] = a[i] - b[i];
    return Point(std::move(c));
}

Point operator*(const Int& s, const Point& a) {
    std::vector<Int> c(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) c[i] = s * a[i];
    return Point(std::move(c));
}

bool colex_less(const Point& a, const Point& b) {
    for (std::size_t i = a.dim(); i-- > 0;) {
        if (a[i] < b[i]) return true;
        if (a[i] > b[i]) return false;
    }
    return false;
}

LatticePolytope LatticePolytope::from_vertices(std::vector<Point> points) {
    if (points.empty()) throw Error(ErrorKind::EmptyInput, "polytope needs at least one vertex");
    const std::size_t n = points[0].dim();
    if (n == 0) throw Error(ErrorKind::EmptyInput, "points must have dimension at least 1");
    for (const Point& p : points)
        if (p.dim() != n) throw Error(ErrorKind::MixedDimensions, "vertices of different dimensions");

    LatticePolytope poly;
    poly.dim_ = n;
    std::set<Point> seen;
    for (Point& p : points)
        if (seen.insert(p).second) poly.generators_.push_back(std::move(p));
    poly.extents_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        Int lo = poly.generators_[0][i];
        Int hi = lo;
        for (const Point& g : poly.generators_) {
            lo = std::min(lo, g[i]);
            hi = std::max(hi, g[i]);
        }
        poly.extents_[i] = {lo, hi};
    }
    poly.cache_ = std::make_shared<Cache>();
    return poly;
}

namespace {

// Depth-first scan of the bounding box, one coordinate at a time. A prefix is
// extended only if it lies in the projection of the hull onto the leading
// coordinates; the fibre over a feasible prefix is an interval, so only its
// endpoints need testing.
void enumerate(const std::vector<std::vector<Point>>& projections,
               const std::vector<std::pair<Int, Int>>& extents, std::vector<Int>& prefix,
               std::vector<Point>& out) {
    const std::size_t depth = prefix.size();
    if (depth == extents.size()) {
        out.emplace_back(prefix);
        return;
    }
    const std::vector<Point>& proj = projections[depth];
    auto feasible = [&](const Int& t) {
        std::vector<Int> c = prefix;
        c.push_back(t);
        return in_convex_hull(proj, Point(std::move(c)));
    };
    Int lo = extents[depth].first;
    Int hi = extents[depth].second;
    while (lo <= hi && !feasible(lo)) ++lo;
    if (lo > hi) return;
    while (hi > lo && !feasible(hi)) --hi;
    for (Int t = lo; t <= hi; ++t) {
        prefix.push_back(t);
        enumerate(projections, extents, prefix, out);
        prefix.pop_back();
    }
}

}  // namespace

const std::vector<Point>& LatticePolytope::lattice_points() const {
    std::call_once(cache_->once, [this] {
        std::vector<std::vector<Point>> projections(dim_);
        for (std::size_t d = 0; d < dim_; ++d) {
            std::set<Point> uniq;
            for (const Point& g : generators_) {
                std::vector<Int> c(g.coords().begin(), g.coords().begin() + static_cast<std::ptrdiff_t>(d + 1));
                uniq.insert(Point(std::move(c)));
            }
            projections[d].assign(uniq.begin(), uniq.end());
        }
        std::vector<Int> prefix;
        std::vector<Point> out;
        enumerate(projections, extents_, prefix, out);
        std::sort(out.begin(), out.end(), colex_less);
        cache_->points = std::move(out);
    });
    return cache_->points;
}

bool LatticePolytope::contains(const Point& x) const {
    if (x.dim() != dim_) throw Error(ErrorKind::DimensionMismatch, "point dimension differs from polytope");
    return in_convex_hull(generators_, x);
}

UnimodularMap::UnimodularMap(std::vector<std::vector<Int>> matrix, std::vector<Int> shift)
    : matrix_(std::move(matrix)), shift_(std::move(shift)) {
    const std::size_t n = matrix_.size();
    if (shift_.size() != n) throw Error(ErrorKind::DimensionMismatch, "shift length differs from matrix size");
    for (const auto& row : matrix_)
        if (row.size() != n) throw Error(ErrorKind::DimensionMismatch, "matrix is not square");
    const Int det = determinant(matrix_);
    if (det != 1 && det != -1)
        throw Error(ErrorKind::NotUnimodular, "determinant " + det.str() + " is not +-1");
}

UnimodularMap UnimodularMap::identity(std::size_t n) {
    std::vector<std::vector<Int>> m(n, std::vector<Int>(n, Int(0)));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return UnimodularMap(std::move(m), std::vector<Int>(n, Int(0)));
}

Point UnimodularMap::apply(const Point& x) const {
    if (x.dim() != dim()) throw Error(ErrorKind::DimensionMismatch, "point dimension differs from map");
    std::vector<Int> y(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
        Int s = shift_[i];
        for (std::size_t j = 0; j < dim(); ++j) s += matrix_[i][j] * x[j];
        y[i] = std::move(s);
    }
    return Point(std::move(y));
}

LatticePolytope polytope_from_vertices(std::vector<Point> points) {
    return LatticePolytope::from_vertices(std::move(points));
}

bool contains_point(const LatticePolytope& p, const Point& x) { return p.contains(x); }

const std::vector<Point>& lattice_points(const LatticePolytope& p) { return p.lattice_points(); }

namespace {

Point concat(const Point& a, const Point& b) {
    std::vector<Int> c = a.coords();
    c.insert(c.end(), b.coords().begin(), b.coords().end());
    return Point(std::move(c));
}

Point padded(const Point& a, std::size_t before, std::size_t after, const Int& tail) {
    std::vector<Int> c(before, Int(0));
    c.insert(c.end(), a.coords().begin(), a.coords().end());
    c.resize(before + a.dim() + after, Int(0));
    if (after > 0) c.back() = tail;
    return Point(std::move(c));
}

}  // namespace

LatticePolytope product(const LatticePolytope& p, const LatticePolytope& q) {
    std::vector<Point> gens;
    gens.reserve(p.generators().size() * q.generators().size());
    for (const Point& a : p.generators())
        for (const Point& b : q.generators()) gens.push_back(concat(a, b));
    return LatticePolytope::from_vertices(std::move(gens));
}

LatticePolytope join(const LatticePolytope& p, const LatticePolytope& q) {
    const std::size_t n = p.ambient_dim();
    const std::size_t m = q.ambient_dim();
    std::vector<Point> gens;
    for (const Point& a : p.generators()) gens.push_back(padded(a, 0, m + 1, Int(0)));
    for (const Point& b : q.generators()) gens.push_back(padded(b, n, 1, Int(1)));
    return LatticePolytope::from_vertices(std::move(gens));
}

LatticePolytope subdirect_sum(const LatticePolytope& p, const LatticePolytope& q) {
    const std::size_t n = p.ambient_dim();
    const std::size_t m = q.ambient_dim();
    std::vector<Point> gens;
    for (const Point& a : p.generators()) gens.push_back(padded(a, 0, m, Int(0)));
    for (const Point& b : q.generators()) gens.push_back(padded(b, n, 0, Int(0)));
    return LatticePolytope::from_vertices(std::move(gens));
}

LatticePolytope direct_sum(const LatticePolytope& p, const LatticePolytope& q) {
    if (!p.contains(Point::zero(p.ambient_dim())) || !q.contains(Point::zero(q.ambient_dim())))
        throw Error(ErrorKind::OriginMissing, "direct sum requires both summands to contain the origin");
    return subdirect_sum(p, q);
}

LatticePolytope minkowski_sum(const LatticePolytope& p, const LatticePolytope& q) {
    if (p.ambient_dim() != q.ambient_dim())
        throw Error(ErrorKind::DimensionMismatch, "Minkowski sum of polytopes in different dimensions");
    std::vector<Point> gens;
    for (const Point& a : p.generators())
        for (const Point& b : q.generators()) gens.push_back(a + b);
    LatticePolytope sum = LatticePolytope::from_vertices(std::move(gens));
    if (sum.generators().size() > 16) return reduce_generators(sum);
    return sum;
}

LatticePolytope dilate(const LatticePolytope& p, const Int& c) {
    if (c < 1) throw Error(ErrorKind::InvalidArgument, "dilation factor must be positive");
    std::vector<Point> gens;
    for (const Point& a : p.generators()) gens.push_back(c * a);
    return LatticePolytope::from_vertices(std::move(gens));
}

LatticePolytope embed(const LatticePolytope& p, std::size_t m) {
    if (m <= p.ambient_dim())
        throw Error(ErrorKind::TargetTooSmall, "embedding target " + std::to_string(m) +
                                                   " must exceed dimension " + std::to_string(p.ambient_dim()));
    std::vector<Point> gens;
    for (const Point& a : p.generators()) gens.push_back(padded(a, 0, m - p.ambient_dim(), Int(0)));
    return LatticePolytope::from_vertices(std::move(gens));
}

LatticePolytope translate(const LatticePolytope& p, const Point& offset) {
    if (offset.dim() != p.ambient_dim()) throw Error(ErrorKind::DimensionMismatch, "offset dimension differs");
    std::vector<Point> gens;
    for (const Point& a : p.generators()) gens.push_back(a + offset);
    return LatticePolytope::from_vertices(std::move(gens));
}

LatticePolytope apply_unimodular(const LatticePolytope& p, const UnimodularMap& t) {
    if (t.dim() != p.ambient_dim()) throw Error(ErrorKind::DimensionMismatch, "map dimension differs");
    std::vector<Point> gens;
    for (const Point& a : p.generators()) gens.push_back(t.apply(a));
    return LatticePolytope::from_vertices(std::move(gens));
}

LatticePolytope reduce_generators(const LatticePolytope& p) {
    std::vector<Point> gens = p.generators();
    for (std::size_t i = gens.size(); i-- > 0 && gens.size() > 1;) {
        std::vector<Point> others;
        others.reserve(gens.size() - 1);
        for (std::size_t j = 0; j < gens.size(); ++j)
            if (j != i) others.push_back(gens[j]);
        if (in_convex_hull(others, gens[i])) gens.erase(gens.begin() + static_cast<std::ptrdiff_t>(i));
    }
    LatticePolytope r = LatticePolytope::from_vertices(std::move(gens));
    if (p.name()) r.set_name(*p.name());
    return r;
}

std::optional<LatticePolytope> slice(const LatticePolytope& p, std::size_t axis, const Int& value) {
    if (axis >= p.ambient_dim()) throw Error(ErrorKind::DimensionMismatch, "slice axis out of range");
    if (p.ambient_dim() < 2) throw Error(ErrorKind::DimensionMismatch, "cannot slice a 1-dimensional polytope");
    std::vector<Point> pts;
    for (const Point& x : p.lattice_points()) {
        if (x[axis] != value) continue;
        std::vector<Int> c;
        for (std::size_t i = 0; i < x.dim(); ++i)
            if (i != axis) c.push_back(x[i]);
        pts.emplace_back(std::move(c));
    }
    if (pts.empty()) return std::nullopt;
    return LatticePolytope::from_vertices(std::move(pts));
}

bool fits_in_box(const LatticePolytope& p, std::uint32_t q) {
    const Int top = Int(q) - 2;
    for (const auto& [lo, hi] : p.extents())
        if (lo < 0 || hi > top) return false;
    return true;
}

bool is_subset(const LatticePolytope& inner, const LatticePolytope& outer) {
    if (inner.ambient_dim() != outer.ambient_dim()) return false;
    return std::all_of(inner.generators().begin(), inner.generators().end(),
                       [&](const Point& g) { return outer.contains(g); });
}

std::optional<SegmentOrSquareWitness> has_segment2_or_unit_square(const LatticePolytope& p) {
    const std::vector<Point>& pts = p.lattice_points();
    const std::set<Point> member(pts.begin(), pts.end());

    // A difference with coordinate gcd g >= 2 spans a lattice segment of length g.
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            const Point d = pts[j] - pts[i];
            Int g = 0;
            for (const Int& c : d.coords()) g = igcd(g, c);
            if (g >= 2) {
                std::vector<Int> step(d.dim());
                for (std::size_t k = 0; k < d.dim(); ++k) step[k] = d[k] / g;
                const Point v(std::move(step));
                return SegmentOrSquareWitness{SegmentOrSquareWitness::Kind::Segment,
                                              {pts[i], pts[i] + v, pts[i] + Int(2) * v}};
            }
        }
    }

    if (p.ambient_dim() < 2) return std::nullopt;
    for (const Point& b : pts) {
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (pts[i] == b) continue;
            const Point v = pts[i] - b;
            for (std::size_t j = i + 1; j < pts.size(); ++j) {
                if (pts[j] == b) continue;
                const Point w = pts[j] - b;
                const Point top = b + v + w;
                if (!member.contains(top)) continue;
                if (decomp::is_primitive_extendable({v.coords(), w.coords()}))
                    return SegmentOrSquareWitness{SegmentOrSquareWitness::Kind::Square, {b, pts[i], pts[j], top}};
            }
        }
    }
    return std::nullopt;
}

}  // namespace polycode::lattice
