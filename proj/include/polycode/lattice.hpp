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

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "polycode/integer.hpp"

namespace polycode::lattice {

/// Integer point of Z^n. Exact coordinates, no floating point.
class Point {
 public:
    Point() = default;
    explicit Point(std::vector<Int> coords) : coords_(std::move(coords)) {}
    Point(std::initializer_list<std::int64_t> coords);

    static Point zero(std::size_t dim) { return Point(std::vector<Int>(dim, Int(0))); }

    std::size_t dim() const noexcept { return coords_.size(); }
    const Int& operator[](std::size_t i) const { return coords_[i]; }
    Int& operator[](std::size_t i) { return coords_[i]; }
    const std::vector<Int>& coords() const noexcept { return coords_; }

    bool is_zero() const;

    friend bool operator==(const Point&, const Point&) = default;
    /// Lexicographic, first coordinate most significant.
    friend std::strong_ordering operator<=>(const Point& a, const Point& b);

    std::string to_string() const;

 private:
    std::vector<Int> coords_;
};

Point operator+(const Point& a, const Point& b);
Point operator-(const Point& a, const Point& b);
Point operator*(const Int& c, const Point& a);

/// Colexicographic order: last coordinate most significant.
bool colex_less(const Point& a, const Point& b);

/// Integral convex polytope given by a finite generating set (a V-representation
/// that need not be minimal). The lattice points are computed on first use and
/// cached; copies share the cache.
class LatticePolytope {
 public:
    /// Throws Error{EmptyInput} or Error{MixedDimensions}.
    static LatticePolytope from_vertices(std::vector<Point> points);

    std::size_t ambient_dim() const noexcept { return dim_; }
    const std::vector<Point>& generators() const noexcept { return generators_; }

    /// All of conv(generators) ∩ Z^n in colex order.
    const std::vector<Point>& lattice_points() const;
    std::size_t lattice_point_count() const { return lattice_points().size(); }

    /// Per-coordinate [min, max] over the generators.
    const std::vector<std::pair<Int, Int>>& extents() const noexcept { return extents_; }

    bool contains(const Point& x) const;

    const std::optional<std::string>& name() const noexcept { return name_; }
    void set_name(std::string name) { name_ = std::move(name); }

 private:
    LatticePolytope() = default;

    struct Cache {
        std::once_flag once;
        std::vector<Point> points;
    };

    std::size_t dim_ = 0;
    std::vector<Point> generators_;
    std::vector<std::pair<Int, Int>> extents_;
    std::optional<std::string> name_;
    std::shared_ptr<Cache> cache_;
};

/// x ↦ Mx + λ with M ∈ GL(n, Z).
class UnimodularMap {
 public:
    /// Throws Error{NotUnimodular} when |det M| != 1, Error{DimensionMismatch}
    /// when M is not square or the shift has the wrong length.
    UnimodularMap(std::vector<std::vector<Int>> matrix, std::vector<Int> shift);

    static UnimodularMap identity(std::size_t n);

    std::size_t dim() const noexcept { return shift_.size(); }
    const std::vector<std::vector<Int>>& matrix() const noexcept { return matrix_; }
    const std::vector<Int>& shift() const noexcept { return shift_; }

    Point apply(const Point& x) const;

 private:
    std::vector<std::vector<Int>> matrix_;
    std::vector<Int> shift_;
};

/// Exact determinant by fraction-free elimination.
Int determinant(std::vector<std::vector<Int>> m);

/// Exact test x ∈ conv(generators) via a fraction-free phase-1 simplex.
bool in_convex_hull(std::span<const Point> generators, const Point& x);

LatticePolytope polytope_from_vertices(std::vector<Point> points);

/// Throws Error{DimensionMismatch}.
bool contains_point(const LatticePolytope& p, const Point& x);

const std::vector<Point>& lattice_points(const LatticePolytope& p);

LatticePolytope product(const LatticePolytope& p, const LatticePolytope& q);
LatticePolytope join(const LatticePolytope& p, const LatticePolytope& q);
LatticePolytope subdirect_sum(const LatticePolytope& p, const LatticePolytope& q);
/// subdirect_sum that requires the origin in both; throws Error{OriginMissing}.
LatticePolytope direct_sum(const LatticePolytope& p, const LatticePolytope& q);
/// Throws Error{DimensionMismatch}.
LatticePolytope minkowski_sum(const LatticePolytope& p, const LatticePolytope& q);
/// Throws Error{InvalidArgument} for c < 1.
LatticePolytope dilate(const LatticePolytope& p, const Int& c);
/// Throws Error{TargetTooSmall} unless m > ambient_dim.
LatticePolytope embed(const LatticePolytope& p, std::size_t m);
LatticePolytope translate(const LatticePolytope& p, const Point& offset);
LatticePolytope apply_unimodular(const LatticePolytope& p, const UnimodularMap& t);

/// Drops generators lying in the hull of the others.
LatticePolytope reduce_generators(const LatticePolytope& p);

/// Lattice points of p whose coordinate `axis` equals `value`, with that
/// coordinate removed, as a polytope of dimension n-1 (nullopt if empty).
std::optional<LatticePolytope> slice(const LatticePolytope& p, std::size_t axis, const Int& value);

/// Every generator coordinate in [0, q-2].
bool fits_in_box(const LatticePolytope& p, std::uint32_t q);

/// True iff every generator of `inner` lies in `outer`.
bool is_subset(const LatticePolytope& inner, const LatticePolytope& outer);

struct SegmentOrSquareWitness {
    enum class Kind { Segment, Square };
    Kind kind;
    /// Segment: b, b+v, b+2v. Square: b, b+v, b+w, b+v+w.
    std::vector<Point> points;
};

/// Lattice segment of length >= 2 or unimodular unit square inside p.
std::optional<SegmentOrSquareWitness> has_segment2_or_unit_square(const LatticePolytope& p);

}  // namespace polycode::lattice
