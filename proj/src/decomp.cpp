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

#include "polycode/decomp.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_map>

#include "polycode/error.hpp"

namespace polycode::decomp {

namespace {

using Vec = std::vector<std::int64_t>;

Vec to_vec(const Point& p) {
    Vec v(p.dim());
    for (std::size_t i = 0; i < p.dim(); ++i) {
        const auto x = to_int64(p[i]);
        if (!x) throw Error(ErrorKind::InvalidArgument, "coordinate too large for decomposition search");
        v[i] = *x;
    }
    return v;
}

Point to_point(const Vec& v) {
    std::vector<Int> c(v.begin(), v.end());
    return Point(std::move(c));
}

std::int64_t l1(const Vec& v) {
    std::int64_t s = 0;
    for (auto x : v) s += x < 0 ? -x : x;
    return s;
}

struct VecHash {
    std::size_t operator()(const Vec& v) const noexcept {
        std::size_t h = 0xcbf29ce484222325ULL;
        for (auto x : v) h = (h ^ static_cast<std::size_t>(x)) * 0x100000001b3ULL;
        return h;
    }
};

// Depth-first search over segment sums. B holds the admissible bases of the
// current partial sum Z: b with b + Z ⊆ P. Appending v keeps b iff b + v is
// admissible too, so B shrinks to B ∩ (B - v).
class Search {
 public:
    Search(const LatticePolytope& p, bool cube, std::uint64_t budget) : cube_(cube), budget_(budget) {
        for (const Point& x : p.lattice_points()) pts_.push_back(to_vec(x));
        dim_ = p.ambient_dim();
        lo_.assign(dim_, 0);
        hi_.assign(dim_, 0);
        for (std::size_t i = 0; i < dim_ && !pts_.empty(); ++i) {
            lo_[i] = hi_[i] = pts_[0][i];
            for (const Vec& x : pts_) {
                lo_[i] = std::min(lo_[i], x[i]);
                hi_[i] = std::max(hi_[i], x[i]);
            }
        }
        // Dense grid over the bounding box when it is small enough, hash map otherwise.
        std::int64_t volume = 1;
        stride_.assign(dim_, 0);
        for (std::size_t i = 0; i < dim_; ++i) {
            stride_[i] = volume;
            volume *= hi_[i] - lo_[i] + 1;
            if (volume > kGridLimit) break;
        }
        if (volume <= kGridLimit) {
            grid_.assign(static_cast<std::size_t>(volume), -1);
            for (std::size_t i = 0; i < pts_.size(); ++i) {
                lin_.push_back(linear(pts_[i]));
                grid_[static_cast<std::size_t>(lin_.back())] = static_cast<int>(i);
            }
        } else {
            for (std::size_t i = 0; i < pts_.size(); ++i) index_.emplace(pts_[i], static_cast<int>(i));
        }
        for (const Point& d : primitive_directions(p)) {
            dirs_.push_back(to_vec(d));
            std::int64_t off = 0;
            for (std::size_t i = 0; i < dim_; ++i) off += dirs_.back()[i] * stride_[i];
            offset_.push_back(off);
        }
        depth_of_.assign(pts_.size(), 0);
    }

    DecompResult run() {
        std::vector<int> all(pts_.size());
        std::iota(all.begin(), all.end(), 0);
        best_base_ = 0;
        dfs(0, all, 0);
        DecompResult r;
        r.value = best_.size();
        r.witness.kind = cube_ ? DecompWitness::Kind::Hypercube : DecompWitness::Kind::Zonotope;
        r.witness.base = to_point(pts_[static_cast<std::size_t>(best_base_)]);
        for (std::size_t d : best_) r.witness.vectors.push_back(to_point(dirs_[d]));
        r.budget_exceeded = exceeded_;
        r.nodes = nodes_;
        return r;
    }

 private:
    static constexpr std::int64_t kGridLimit = std::int64_t{1} << 24;

    std::int64_t linear(const Vec& x) const {
        std::int64_t l = 0;
        for (std::size_t i = 0; i < dim_; ++i) l += (x[i] - lo_[i]) * stride_[i];
        return l;
    }

    int shifted(int idx, std::size_t d) const {
        const Vec& x = pts_[static_cast<std::size_t>(idx)];
        const Vec& v = dirs_[d];
        if (!grid_.empty()) {
            for (std::size_t i = 0; i < dim_; ++i) {
                const std::int64_t c = x[i] + v[i];
                if (c < lo_[i] || c > hi_[i]) return -1;
            }
            return grid_[static_cast<std::size_t>(lin_[static_cast<std::size_t>(idx)] + offset_[d])];
        }
        Vec y = x;
        for (std::size_t i = 0; i < dim_; ++i) y[i] += v[i];
        const auto it = index_.find(y);
        return it == index_.end() ? -1 : it->second;
    }

    std::size_t upper_room(const std::vector<int>& bases, std::size_t depth) const {
        // Each further segment needs one more admissible base and adds at
        // least one to the l1-width of the base set.
        std::int64_t width = 0;
        for (std::size_t i = 0; i < dim_; ++i) {
            std::int64_t lo = pts_[static_cast<std::size_t>(bases[0])][i], hi = lo;
            for (int b : bases) {
                lo = std::min(lo, pts_[static_cast<std::size_t>(b)][i]);
                hi = std::max(hi, pts_[static_cast<std::size_t>(b)][i]);
            }
            width += hi - lo;
        }
        std::size_t room = std::min<std::size_t>(bases.size() - 1, static_cast<std::size_t>(width));
        if (cube_) {
            std::size_t log2 = 0;
            while ((std::size_t{2} << log2) <= bases.size()) ++log2;
            room = std::min({room, log2, dim_ - depth});
        }
        return room;
    }

    void dfs(std::size_t start, const std::vector<int>& bases, std::size_t depth) {
        if (exceeded_) return;
        if (++nodes_ > budget_) {
            exceeded_ = true;
            return;
        }
        if (depth > best_.size()) {
            best_ = chosen_;
            best_base_ = bases[0];
        }
        if (depth + upper_room(bases, depth) <= best_.size()) return;
        std::vector<int> next;
        for (std::size_t d = start; d < dirs_.size(); ++d) {
            next.clear();
            for (int b : bases) {
                const int t = shifted(b, d);
                if (t >= 0 && depth_of_[static_cast<std::size_t>(t)] >= depth) next.push_back(b);
            }
            if (next.empty()) continue;
            if (cube_) {
                std::vector<std::vector<Int>> rows;
                for (std::size_t c : chosen_) rows.emplace_back(dirs_[c].begin(), dirs_[c].end());
                rows.emplace_back(dirs_[d].begin(), dirs_[d].end());
                if (!is_primitive_extendable(rows)) continue;
            }
            for (int b : next) depth_of_[static_cast<std::size_t>(b)] = depth + 1;
            chosen_.push_back(d);
            dfs(cube_ ? d + 1 : d, next, depth + 1);
            chosen_.pop_back();
            for (int b : next) depth_of_[static_cast<std::size_t>(b)] = depth;
            if (exceeded_) return;
            if (depth + upper_room(bases, depth) <= best_.size()) return;
        }
    }

    bool cube_;
    std::uint64_t budget_;
    std::size_t dim_ = 0;
    std::vector<Vec> pts_;
    Vec lo_, hi_, stride_;
    std::vector<int> grid_;
    std::vector<std::int64_t> lin_;
    std::unordered_map<Vec, int, VecHash> index_;
    std::vector<Vec> dirs_;
    std::vector<std::int64_t> offset_;
    // Deepest level of the current path whose base set contains the point.
    std::vector<std::size_t> depth_of_;
    std::vector<std::size_t> chosen_;
    std::vector<std::size_t> best_;
    int best_base_ = 0;
    std::uint64_t nodes_ = 0;
    bool exceeded_ = false;
};

}  // namespace

std::vector<Point> primitive_directions(const LatticePolytope& p) {
    std::vector<Vec> pts;
    for (const Point& x : p.lattice_points()) pts.push_back(to_vec(x));
    std::set<Vec> seen;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            Vec d(pts[i].size());
            std::int64_t g = 0;
            for (std::size_t c = 0; c < d.size(); ++c) {
                d[c] = pts[j][c] - pts[i][c];
                g = std::gcd(g, d[c]);
            }
            for (auto& x : d) x /= g;
            const auto lead = std::find_if(d.begin(), d.end(), [](std::int64_t x) { return x != 0; });
            if (*lead < 0)
                for (auto& x : d) x = -x;
            seen.insert(d);
        }
    std::vector<Vec> dirs(seen.begin(), seen.end());
    std::stable_sort(dirs.begin(), dirs.end(), [](const Vec& a, const Vec& b) { return l1(a) < l1(b); });
    std::vector<Point> out;
    for (const Vec& d : dirs) out.push_back(to_point(d));
    return out;
}

DecompResult full_minkowski_length(const LatticePolytope& p, std::uint64_t node_budget) {
    DecompResult r = Search(p, false, node_budget).run();
    if (!verify_witness(p, r.witness)) throw Error(ErrorKind::InvalidArgument, "internal error: zonotope witness failed verification");
    return r;
}

DecompResult hypercube_dimension(const LatticePolytope& p, std::uint64_t node_budget) {
    DecompResult r = Search(p, true, node_budget).run();
    if (!verify_witness(p, r.witness)) throw Error(ErrorKind::InvalidArgument, "internal error: hypercube witness failed verification");
    return r;
}

bool verify_witness(const LatticePolytope& p, const DecompWitness& w) {
    if (w.base.dim() != p.ambient_dim()) return false;
    std::vector<std::vector<Int>> rows;
    for (const Point& v : w.vectors) {
        if (v.dim() != p.ambient_dim() || v.is_zero()) return false;
        Int g = 0;
        for (std::size_t i = 0; i < v.dim(); ++i) g = igcd(g, v[i]);
        if (g != 1) return false;
        rows.push_back(v.coords());
    }
    if (w.kind == DecompWitness::Kind::Hypercube) {
        if (rows.size() > p.ambient_dim() || !is_primitive_extendable(rows)) return false;
    }
    std::set<Point> sums{w.base};
    for (const Point& v : w.vectors) {
        std::set<Point> next = sums;
        for (const Point& s : sums) next.insert(s + v);
        sums = std::move(next);
    }
    return std::all_of(sums.begin(), sums.end(), [&](const Point& s) { return p.contains(s); });
}

std::int64_t minkowski_length(const lattice::PolytopeExpr& e) {
    using K = lattice::PolytopeExpr::Kind;
    if (e.kind() == K::Segment) return e.length();
    if (e.kind() == K::Box) {
        const auto& l = e.lengths();
        return std::accumulate(l.begin(), l.end(), std::int64_t{0});
    }
    throw Error(ErrorKind::RuleInapplicable, "Minkowski length is only available for segments and boxes");
}

}  // namespace polycode::decomp
