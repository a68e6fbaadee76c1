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

#include "polycode/io.hpp"

#include <cctype>
#include <fstream>
#include <limits>
#include <sstream>

namespace polycode::io {

namespace {

std::string join_tokens(const std::vector<std::string>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += i + 1 == v.size() ? " or " : ", ";
        s += v[i];
    }
    return s;
}

[[noreturn]] void schema(const std::string& what) { throw Error(ErrorKind::SchemaError, "polytope JSON: " + what); }

Int coordinate(const json& c) {
    if (c.is_number_integer()) return c.is_number_unsigned() ? Int(c.get<std::uint64_t>()) : Int(c.get<std::int64_t>());
    if (c.is_string()) {
        const std::string s = c.get<std::string>();
        const std::size_t start = !s.empty() && s[0] == '-' ? 1 : 0;
        if (s.size() == start || !std::all_of(s.begin() + start, s.end(), [](unsigned char ch) { return std::isdigit(ch); }))
            schema("coordinate string \"" + s + "\" is not an integer");
        return Int(s);
    }
    schema("coordinates must be integers");
}

}  // namespace

ParseFailure::ParseFailure(std::size_t position, std::vector<std::string> expected, const std::string& found)
    : Error(ErrorKind::ParseError, "parse error at position " + std::to_string(position) + ": expected " +
                                       join_tokens(expected) + ", found " + found),
      position_(position),
      expected_(std::move(expected)) {}

LatticePolytope polytope_from_json(const json& j) {
    if (!j.is_object()) schema("top level must be an object");
    for (const auto& [key, value] : j.items())
        if (key != "dim" && key != "vertices" && key != "name") schema("unknown key \"" + key + "\"");
    if (!j.contains("dim") || !j["dim"].is_number_unsigned()) schema("\"dim\" must be a non-negative integer");
    if (!j.contains("vertices") || !j["vertices"].is_array()) schema("\"vertices\" must be an array");
    const std::size_t dim = j["dim"].get<std::size_t>();
    std::vector<lattice::Point> pts;
    for (const json& v : j["vertices"]) {
        if (!v.is_array()) schema("each vertex must be an array");
        if (v.size() != dim) schema("vertex of length " + std::to_string(v.size()) + " in dimension " + std::to_string(dim));
        std::vector<Int> c;
        for (const json& x : v) c.push_back(coordinate(x));
        pts.emplace_back(std::move(c));
    }
    if (pts.empty()) schema("no vertices");
    LatticePolytope p = LatticePolytope::from_vertices(std::move(pts));
    if (j.contains("name")) {
        if (!j["name"].is_string()) schema("\"name\" must be a string");
        p.set_name(j["name"].get<std::string>());
    }
    return p;
}

json polytope_to_json(const LatticePolytope& p) {
    json j;
    j["dim"] = p.ambient_dim();
    json verts = json::array();
    for (const auto& g : p.generators()) {
        json v = json::array();
        for (const Int& c : g.coords()) v.push_back(integer_json(c));
        verts.push_back(std::move(v));
    }
    j["vertices"] = std::move(verts);
    if (p.name()) j["name"] = *p.name();
    return j;
}

LatticePolytope load_polytope(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) schema("cannot read " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        schema(path.string() + ": " + e.what());
    }
    return polytope_from_json(j);
}

std::string dump_polytope(const LatticePolytope& p) { return polytope_to_json(p).dump() + "\n"; }

// ---------------------------------------------------------------------------

namespace {

class Parser {
 public:
    Parser(std::string_view text, std::filesystem::path base) : s_(text), base_(std::move(base)) {}

    PolytopeExpr parse() {
        PolytopeExpr e = expr();
        skip();
        if (pos_ != s_.size()) fail({"end of input"});
        return e;
    }

 private:
    std::string_view s_;
    std::filesystem::path base_;
    std::size_t pos_ = 0;

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    std::string found() const {
        if (pos_ >= s_.size()) return "end of input";
        return std::string("'") + s_[pos_] + "'";
    }

    [[noreturn]] void fail(std::vector<std::string> expected) const { throw ParseFailure(pos_, std::move(expected), found()); }

    bool peek(char c) {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }

    void expect(char c) {
        if (!peek(c)) fail({std::string("'") + c + "'"});
        ++pos_;
    }

    std::string ident() {
        skip();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        return std::string(s_.substr(start, pos_ - start));
    }

    Int integer() {
        skip();
        const std::size_t start = pos_;
        if (pos_ < s_.size() && s_[pos_] == '-') ++pos_;
        const std::size_t digits = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == digits) {
            pos_ = start;
            fail({"integer"});
        }
        return Int(std::string(s_.substr(start, pos_ - start)));
    }

    std::int64_t small(const char* what) {
        const std::size_t at = (skip(), pos_);
        const Int v = integer();
        if (v < std::numeric_limits<std::int64_t>::min() || v > std::numeric_limits<std::int64_t>::max()) {
            pos_ = at;
            fail({std::string(what) + " within 64 bits"});
        }
        return static_cast<std::int64_t>(v);
    }

    std::size_t count(const char* what) {
        const std::size_t at = (skip(), pos_);
        const std::int64_t v = small(what);
        if (v < 0) {
            pos_ = at;
            fail({std::string("non-negative ") + what});
        }
        return static_cast<std::size_t>(v);
    }

    PolytopeExpr expr() {
        skip();
        const std::size_t at = pos_;
        const std::string name = ident();
        static const std::vector<std::string> kHeads = {"seg", "box", "simplex", "prod", "join",
                                                        "dsum", "dilate", "embed", "atom"};
        if (std::find(kHeads.begin(), kHeads.end(), name) == kHeads.end()) {
            pos_ = at;
            fail(kHeads);
        }
        expect('(');
        PolytopeExpr out = body(name);
        expect(')');
        return out;
    }

    PolytopeExpr body(const std::string& name) {
        if (name == "seg") return PolytopeExpr::segment(small("length"));
        if (name == "box") {
            std::vector<std::int64_t> l{small("length")};
            while (peek(',')) {
                ++pos_;
                l.push_back(small("length"));
            }
            return PolytopeExpr::box(std::move(l));
        }
        if (name == "simplex") {
            const std::size_t n = count("dimension");
            expect(',');
            return PolytopeExpr::simplex(n, small("length"));
        }
        if (name == "prod" || name == "join" || name == "dsum") {
            PolytopeExpr a = expr();
            expect(',');
            PolytopeExpr b = expr();
            if (name == "prod") return PolytopeExpr::product(std::move(a), std::move(b));
            if (name == "join") return PolytopeExpr::join(std::move(a), std::move(b));
            auto h = lattice::DirectSumHypothesis::Unknown;
            if (peek(',')) {
                ++pos_;
                skip();
                const std::size_t at = pos_;
                const std::string word = ident();
                if (word == "asserted")
                    h = lattice::DirectSumHypothesis::Asserted;
                else if (word == "violated")
                    h = lattice::DirectSumHypothesis::Violated;
                else if (word != "unknown") {
                    pos_ = at;
                    fail({"asserted", "violated", "unknown"});
                }
            }
            return PolytopeExpr::direct_sum(std::move(a), std::move(b), h);
        }
        if (name == "dilate" || name == "embed") {
            PolytopeExpr a = expr();
            expect(',');
            if (name == "dilate") return PolytopeExpr::dilate(std::move(a), small("factor"));
            return PolytopeExpr::embed(std::move(a), count("dimension"));
        }
        return atom();
    }

    PolytopeExpr atom() {
        if (peek('@')) {
            ++pos_;
            const std::size_t start = pos_;
            while (pos_ < s_.size() && s_[pos_] != ')' && !std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (pos_ == start) fail({"file path"});
            std::filesystem::path file(std::string(s_.substr(start, pos_ - start)));
            if (file.is_relative() && !base_.empty()) file = base_ / file;
            return PolytopeExpr::atom(load_polytope(file));
        }
        if (!peek('[')) fail({"'@'", "'['"});
        ++pos_;
        std::vector<lattice::Point> pts;
        do {
            expect('[');
            std::vector<Int> c{integer()};
            while (peek(',')) {
                ++pos_;
                c.push_back(integer());
            }
            expect(']');
            pts.emplace_back(std::move(c));
        } while (peek(',') && (++pos_, true));
        expect(']');
        return PolytopeExpr::atom(LatticePolytope::from_vertices(std::move(pts)));
    }
};

}  // namespace

PolytopeExpr parse_expr(std::string_view text, const std::filesystem::path& base_dir) {
    return Parser(text, base_dir).parse();
}

// ---------------------------------------------------------------------------

json integer_json(const Int& x) {
    if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
        return static_cast<std::int64_t>(x);
    return x.str();
}

json rational_json(const Rational& r) { return {{"num", integer_json(numerator(r))}, {"den", integer_json(denominator(r))}}; }

json params_json(const toric::CodeParams& p) {
    json j;
    j["q"] = p.q;
    j["n"] = p.n;
    j["N"] = integer_json(p.N);
    j["k"] = integer_json(p.k);
    j["exact"] = p.exact();
    if (p.exact()) j["d"] = integer_json(p.d_lo);
    j["d_lo"] = integer_json(p.d_lo);
    j["d_hi"] = integer_json(p.d_hi);
    j["max_zeros"] = integer_json(p.max_zeros());
    j["delta"] = rational_json(p.delta());
    if (!p.exact()) j["delta_hi"] = rational_json(p.delta_hi());
    j["rate"] = rational_json(p.rate());
    j["method"] = toric::method_name(p.method);
    j["rule"] = p.rule;
    j["budget_limited"] = p.budget_limited;
    if (p.witness) {
        j["witness"] = {{"message", p.witness->message}, {"weight", p.witness->weight}};
    }
    j["notes"] = p.notes;
    return j;
}

json decomp_json(const decomp::DecompResult& r, const char* what) {
    json vecs = json::array();
    for (const auto& v : r.witness.vectors) {
        json a = json::array();
        for (const Int& c : v.coords()) a.push_back(integer_json(c));
        vecs.push_back(std::move(a));
    }
    json base = json::array();
    for (const Int& c : r.witness.base.coords()) base.push_back(integer_json(c));
    return {{"what", what},
            {"value", r.value},
            {"exact", !r.budget_exceeded},
            {"budget_exceeded", r.budget_exceeded},
            {"nodes", r.nodes},
            {"witness", {{"base", std::move(base)}, {"vectors", std::move(vecs)}}}};
}

json family_json(const std::vector<families::FamilyRow>& rows) {
    json out = json::array();
    for (const auto& r : rows) {
        json j{{"i", r.i},
               {"n", r.n},
               {"k", integer_json(r.k)},
               {"d_lo", integer_json(r.d_lo)},
               {"d_hi", integer_json(r.d_hi)},
               {"delta", rational_json(r.delta)},
               {"rate", rational_json(r.rate)},
               {"method", r.method}};
        j["L"] = r.L ? json(*r.L) : json(nullptr);
        j["M"] = r.M ? json(*r.M) : json(nullptr);
        if (r.rate_bound) j["rate_bound"] = rational_json(*r.rate_bound);
        out.push_back(std::move(j));
    }
    return out;
}

std::string matrix_dump(const toric::GeneratorMatrix& g) {
    std::ostringstream os;
    os << "q=" << g.field().order() << " rows=" << g.rows() << " cols=" << g.cols() << "\n";
    os << "columns:";
    for (std::size_t c = 0; c < g.cols(); ++c) {
        const auto label = g.col_label(c);
        os << " (";
        for (std::size_t i = 0; i < label.size(); ++i) os << (i ? "," : "") << label[i];
        os << ")";
    }
    os << "\n";
    for (std::size_t r = 0; r < g.rows(); ++r) {
        os << g.row_labels()[r].to_string() << ":";
        for (std::size_t c = 0; c < g.cols(); ++c) os << ' ' << g.entry(r, c);
        os << "\n";
    }
    return os.str();
}

}  // namespace polycode::io
