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

#include <stdexcept>
#include <string>

namespace polycode {

enum class ErrorKind {
    // ff
    NotAPrimePower,
    TooSmall,
    DivisionByZero,
    // lattice
    EmptyInput,
    MixedDimensions,
    DimensionMismatch,
    OriginMissing,
    TargetTooSmall,
    NotUnimodular,
    InvalidArgument,
    // toric
    OutOfBox,
    BudgetExceeded,
    RuleInapplicable,
    NotASubset,
    // decomp
    TooManyVectors,
    // families
    ScheduleOutOfRange,
    // cli
    ParseError,
    SchemaError,
};

const char* error_kind_name(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

 private:
    ErrorKind kind_;
};

}  // namespace polycode
