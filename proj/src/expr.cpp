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

#include "polycode/expr.hpp"

#include <mutex>
#include <optional>

#include "polycode/error.hpp"

namespace polycode::lattice {

const char* hypothesis_name(DirectSumHypothesis h) noexcept {
    switch (h) {
        case DirectSumHypothesis::Asserted:
            return "asserted";
        case DirectSumHypothesis::Violated:
            return "violated";
        case DirectSumHypothesis::Unknown:
            break;
    }
    return "unknown";
}

struct PolytopeExpr::Node {
    Kind kind;
    std::size_t dim = 0;
    std::int64_t value = 0;  // length, factor
    std::size_t target = 0;
    std::vector<std::int64_t> lengths;
    DirectSumHypothesis hypothesis = DirectSumHypothesis::Unknown;
    std::vector<PolytopeExpr> children;
    std::optional<LatticePolytope> atom;
    std::vector<std::pair<Int, Int>> extents;

    mutable std::once_flag once;
    mutable std::optional<LatticePolytope> cached;
};

namespace {

void require_nonnegative(std::int64_t v, const char* what) {
    if (v < 0) throw Error(ErrorKind::InvalidArgument, std::string(what) + " must be nonnegative");
}

}  // namespace

PolytopeExpr PolytopeExpr::atom(LatticePolytope p) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Atom;
    n->dim = p.ambient_dim();
    n->extents = p.extents();
    n->atom = std::move(p);
    return PolytopeExpr(std::move(n));
}

PolytopeExpr PolytopeExpr::segment(std::int64_t length) {
    require_nonnegative(length, "segment length");
    auto n = std::make_shared<Node>();
    n->kind = Kind::Segment;
    n->dim = 1;
    n->value = length;
    n->extents = {{Int(0), Int(length)}};
    return PolytopeExpr(std::move(n));
}

PolytopeExpr PolytopeExpr::box(std::vector<std::int64_t> lengths) {
    if (lengths.empty()) throw Error(ErrorKind::EmptyInput, "box needs at least one side");
    for (std::int64_t l : lengths) require_nonnegative(l, "box side");
    auto n = std::make_shared<Node>();
    n->kind = Kind::Box;
    n->dim = lengths.size();
    for (std::int64_t l : lengths) n->extents.emplace_back(Int(0), Int(l));
    n->lengths = std::move(lengths);
    return PolytopeExpr(std::move(n));
}

PolytopeExpr PolytopeExpr::simplex(std::size_t dim, std::int64_t length) {
    if (dim == 0) throw Error(ErrorKind::InvalidArgument, "simplex dimension must be positive");
    require_nonnegative(length, "simplex side");
    auto n = std::make_shared<Node>();
    n->kind = Kind::Simplex;
    n->dim = dim;
    n->value = length;
    n->extents.assign(dim, {Int(0), Int(length)});
    return PolytopeExpr(std::move(n));
}

PolytopeExpr PolytopeExpr::product(PolytopeExpr a, PolytopeExpr b) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Product;
    n->dim = a.ambient_dim() + b.ambient_dim();
    n->extents = a.extents();
    n->extents.insert(n->extents.end(), b.extents().begin(), b.extents().end());
    n->children = {std::move(a), std::move(b)};
    return PolytopeExpr(std::move(n));
}

PolytopeExpr PolytopeExpr::join(PolytopeExpr a, PolytopeExpr b) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Join;
    n->dim = a.ambient_dim() + b.ambient_dim() + 1;
    // Each block also takes the value 0 from the other layer.
    for (const auto& [lo, hi] : a.extents()) n->extents.emplace_back(lo < 0 ? lo : Int(0), hi > 0 ? hi : Int(0));
    for (const auto& [lo, hi] : b.extents()) n->extents.emplace_back(lo < 0 ? lo : Int(0), hi > 0 ? hi : Int(0));
    n->extents.emplace_back(Int(0), Int(1));
    n->children = {std::move(a), std::move(b)};
    return PolytopeExpr(std::move(n));
}

PolytopeExpr PolytopeExpr::direct_sum(PolytopeExpr a, PolytopeExpr b, DirectSumHypothesis hypothesis) {
    if (!a.contains_origin() || !b.contains_origin())
        throw Error(ErrorKind::OriginMissing, "direct sum requires both summands to contain the origin");
    auto n = std::make_shared<Node>();
    n->kind = Kind::DirectSum;
    n->dim = a.ambient_dim() + b.ambient_dim();
    n->extents = a.extents();
    n->extents.insert(n->extents.end(), b.extents().begin(), b.extents().end());
    n->hypothesis = hypothesis;
    n->children = {std::move(a), std::move(b)};
    return PolytopeExpr(std::move(n));
}

PolytopeExpr PolytopeExpr::dilate(PolytopeExpr e, std::int64_t factor) {
    if (factor < 1) throw Error(ErrorKind::InvalidArgument, "dilation factor must be positive");
    auto n = std::make_shared<Node>();
    n->kind = Kind::Dilate;
    n->dim = e.ambient_dim();
    n->value = factor;
    for (const auto& [lo, hi] : e.extents()) n->extents.emplace_back(lo * factor, hi * factor);
    n->children = {std::move(e)};
    return PolytopeExpr(std::move(n));
}

PolytopeExpr PolytopeExpr::embed(PolytopeExpr e, std::size_t target) {
    if (target <= e.ambient_dim())
        throw Error(ErrorKind::TargetTooSmall, "embedding target " + std::to_string(target) +
                                                   " must exceed dimension " + std::to_string(e.ambient_dim()));
    auto n = std::make_shared<Node>();
    n->kind = Kind::Embed;
    n->dim = target;
    n->target = target;
    n->extents = e.extents();
    n->extents.resize(target, {Int(0), Int(0)});
    n->children = {std::move(e)};
    return PolytopeExpr(std::move(n));
}

PolytopeExpr::Kind PolytopeExpr::kind() const noexcept { return node_->kind; }
std::size_t PolytopeExpr::ambient_dim() const noexcept { return node_->dim; }

const LatticePolytope& PolytopeExpr::atom_polytope() const {
    if (node_->kind != Kind::Atom) throw Error(ErrorKind::InvalidArgument, "not an atom");
    return *node_->atom;
}

std::int64_t PolytopeExpr::length() const {
    if (node_->kind != Kind::Segment && node_->kind != Kind::Simplex)
        throw Error(ErrorKind::InvalidArgument, "node has no length");
    return node_->value;
}

const std::vector<std::int64_t>& PolytopeExpr::lengths() const {
    if (node_->kind != Kind::Box) throw Error(ErrorKind::InvalidArgument, "not a box");
    return node_->lengths;
}

std::int64_t PolytopeExpr::factor() const {
    if (node_->kind != Kind::Dilate) throw Error(ErrorKind::InvalidArgument, "not a dilation");
    return node_->value;
}

std::size_t PolytopeExpr::target_dim() const {
    if (node_->kind != Kind::Embed) throw Error(ErrorKind::InvalidArgument, "not an embedding");
    return node_->target;
}

DirectSumHypothesis PolytopeExpr::hypothesis() const {
    if (node_->kind != Kind::DirectSum) throw Error(ErrorKind::InvalidArgument, "not a direct sum");
    return node_->hypothesis;
}

const PolytopeExpr& PolytopeExpr::left() const {
    if (node_->children.size() != 2) throw Error(ErrorKind::InvalidArgument, "not a binary node");
    return node_->children[0];
}

const PolytopeExpr& PolytopeExpr::right() const {
    if (node_->children.size() != 2) throw Error(ErrorKind::InvalidArgument, "not a binary node");
    return node_->children[1];
}

const PolytopeExpr& PolytopeExpr::child() const {
    if (node_->children.size() != 1) throw Error(ErrorKind::InvalidArgument, "not a unary node");
    return node_->children[0];
}

const std::vector<std::pair<Int, Int>>& PolytopeExpr::extents() const noexcept { return node_->extents; }

bool PolytopeExpr::fits_in_box(std::uint32_t q) const {
    const Int top = Int(q) - 2;
    for (const auto& [lo, hi] : node_->extents)
        if (lo < 0 || hi > top) return false;
    return true;
}

bool PolytopeExpr::contains_origin() const {
    switch (node_->kind) {
        case Kind::Segment:
        case Kind::Box:
        case Kind::Simplex:
            return true;
        case Kind::Product:
        case Kind::DirectSum:
            return left().contains_origin() && right().contains_origin();
        case Kind::Join:
            return left().contains_origin();
        case Kind::Dilate:
        case Kind::Embed:
            return child().contains_origin();
        case Kind::Atom:
            break;
    }
    return node_->atom->contains(Point::zero(node_->dim));
}

namespace {

std::optional<Int> closed_form_count(const PolytopeExpr& e) {
    using K = PolytopeExpr::Kind;
    switch (e.kind()) {
        case K::Segment:
            return Int(e.length() + 1);
        case K::Box: {
            Int c = 1;
            for (std::int64_t l : e.lengths()) c *= l + 1;
            return c;
        }
        case K::Simplex:
            return binomial(e.ambient_dim() + static_cast<std::uint64_t>(e.length()), e.ambient_dim());
        case K::Dilate: {
            const PolytopeExpr& c = e.child();
            const std::int64_t f = e.factor();
            if (c.kind() == K::Segment) return Int(c.length() * f + 1);
            if (c.kind() == K::Simplex)
                return binomial(c.ambient_dim() + static_cast<std::uint64_t>(c.length() * f), c.ambient_dim());
            if (c.kind() == K::Box) {
                Int r = 1;
                for (std::int64_t l : c.lengths()) r *= l * f + 1;
                return r;
            }
            return std::nullopt;
        }
        default:
            return std::nullopt;
    }
}

}  // namespace

Int PolytopeExpr::lattice_point_count() const {
    switch (node_->kind) {
        case Kind::Product:
            return left().lattice_point_count() * right().lattice_point_count();
        case Kind::Join:
            return left().lattice_point_count() + right().lattice_point_count();
        case Kind::Embed:
            return child().lattice_point_count();
        default:
            break;
    }
    if (auto c = closed_form_count(*this)) return *c;
    return Int(evaluate().lattice_point_count());
}

const LatticePolytope& PolytopeExpr::evaluate() const {
    std::call_once(node_->once, [this] {
        const Node& n = *node_;
        switch (n.kind) {
            case Kind::Atom:
                n.cached = *n.atom;
                break;
            case Kind::Segment:
                n.cached = LatticePolytope::from_vertices({Point{0}, Point{n.value}});
                break;
            case Kind::Box: {
                LatticePolytope p = LatticePolytope::from_vertices({Point{0}, Point{n.lengths[0]}});
                for (std::size_t i = 1; i < n.lengths.size(); ++i)
                    p = lattice::product(p, LatticePolytope::from_vertices({Point{0}, Point{n.lengths[i]}}));
                n.cached = std::move(p);
                break;
            }
            case Kind::Simplex: {
                std::vector<Point> gens{Point::zero(n.dim)};
                for (std::size_t i = 0; i < n.dim; ++i) {
                    Point v = Point::zero(n.dim);
                    v[i] = n.value;
                    gens.push_back(std::move(v));
                }
                n.cached = LatticePolytope::from_vertices(std::move(gens));
                break;
            }
            case Kind::Product:
                n.cached = lattice::product(left().evaluate(), right().evaluate());
                break;
            case Kind::Join:
                n.cached = lattice::join(left().evaluate(), right().evaluate());
                break;
            case Kind::DirectSum:
                n.cached = lattice::direct_sum(left().evaluate(), right().evaluate());
                break;
            case Kind::Dilate:
                n.cached = lattice::dilate(child().evaluate(), Int(n.value));
                break;
            case Kind::Embed:
                n.cached = lattice::embed(child().evaluate(), n.target);
                break;
        }
    });
    return *node_->cached;
}

std::string PolytopeExpr::to_string() const {
    const Node& n = *node_;
    switch (n.kind) {
        case Kind::Atom: {
            std::string s = "atom([";
            const auto& gens = n.atom->generators();
            for (std::size_t i = 0; i < gens.size(); ++i) {
                if (i) s += ",";
                s += "[";
                for (std::size_t j = 0; j < gens[i].dim(); ++j) {
                    if (j) s += ",";
                    s += gens[i][j].str();
                }
                s += "]";
            }
            return s + "])";
        }
        case Kind::Segment:
            return "seg(" + std::to_string(n.value) + ")";
        case Kind::Box: {
            std::string s = "box(";
            for (std::size_t i = 0; i < n.lengths.size(); ++i) {
                if (i) s += ",";
                s += std::to_string(n.lengths[i]);
            }
            return s + ")";
        }
        case Kind::Simplex:
            return "simplex(" + std::to_string(n.dim) + "," + std::to_string(n.value) + ")";
        case Kind::Product:
            return "prod(" + left().to_string() + "," + right().to_string() + ")";
        case Kind::Join:
            return "join(" + left().to_string() + "," + right().to_string() + ")";
        case Kind::DirectSum: {
            std::string s = "dsum(" + left().to_string() + "," + right().to_string();
            if (n.hypothesis != DirectSumHypothesis::Unknown) s += std::string(",") + hypothesis_name(n.hypothesis);
            return s + ")";
        }
        case Kind::Dilate:
            return "dilate(" + child().to_string() + "," + std::to_string(n.value) + ")";
        case Kind::Embed:
            return "embed(" + child().to_string() + "," + std::to_string(n.target) + ")";
    }
    return {};
}

LatticePolytope eval_expr(const PolytopeExpr& e) { return e.evaluate(); }

}  // namespace polycode::lattice
