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

#include <vector>

#include "polycode/integer.hpp"

namespace polycode::decomp {

/// Nonzero Smith invariants d_1 | d_2 | ... of an integer matrix (rows may
/// have any common length). The number returned is the rank.
std::vector<Int> smith_invariants(std::vector<std::vector<Int>> m);

/// True iff the vectors (stacked as rows) extend to a basis of Z^n, i.e. the
/// Smith form of the stacked matrix is [I | 0]. Throws Error{TooManyVectors}
/// when there are more vectors than coordinates and Error{DimensionMismatch}
/// on ragged input.
bool is_primitive_extendable(const std::vector<std::vector<Int>>& vectors);

}  // namespace polycode::decomp
