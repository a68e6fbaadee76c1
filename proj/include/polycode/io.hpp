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

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "polycode/decomp.hpp"
#include "polycode/error.hpp"
#include "polycode/expr.hpp"
#include "polycode/families.hpp"
#include "polycode/toric.hpp"

namespace polycode::io {

using nlohmann::json;
using lattice::LatticePolytope;
using lattice::PolytopeExpr;

/// Expression syntax error with the offending byte offset and the tokens
/// that would have been accepted there.
class ParseFailure : public Error {
 public:
    ParseFailure(std::size_t position, std::vector<std::string> expected, const std::string& found);

    std::size_t position() const noexcept { return position_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
    std::size_t position_;
    std::vector<std::string> expected_;
};

/// {"dim": n, "vertices": [[...], ...], "name"?: string}. Coordinates may be
/// JSON integers or decimal strings. Throws Error{SchemaError}.
LatticePolytope polytope_from_json(const json& j);
json polytope_to_json(const LatticePolytope& p);

/// Reads a polytope JSON file; throws Error{SchemaError} on unreadable or
/// malformed input.
LatticePolytope load_polytope(const std::filesystem::path& path);
std::string dump_polytope(const LatticePolytope& p);

/// Parses the expression grammar
///
///   expr := seg(INT) | box(INT {, INT}) | simplex(INT, INT)
///         | prod(expr, expr) | join(expr, expr)
///         | dsum(expr, expr [, asserted | violated | unknown])
///         | dilate(expr, INT) | embed(expr, INT)
///         | atom(@PATH) | atom([[INT, ...], ...])
///
/// Relative atom paths resolve against base_dir. Throws ParseFailure for
/// syntax errors; constructor errors (e.g. OriginMissing) propagate.
PolytopeExpr parse_expr(std::string_view text, const std::filesystem::path& base_dir = {});

/// Integers that fit in int64 become JSON numbers, larger ones decimal strings.
json integer_json(const Int& x);
/// {"num": ..., "den": ...}
json rational_json(const Rational& r);

json params_json(const toric::CodeParams& p);
json decomp_json(const decomp::DecompResult& r, const char* what);
json family_json(const std::vector<families::FamilyRow>& rows);

/// Plain-text dump: a header, the column labels (torus points), then one
/// line per lattice point with its row of field elements.
std::string matrix_dump(const toric::GeneratorMatrix& g);

}  // namespace polycode::io
