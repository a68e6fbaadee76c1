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

#include "polycode/error.hpp"

namespace polycode {

const char* error_kind_name(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::NotAPrimePower: return "NotAPrimePower";
        case ErrorKind::TooSmall: return "TooSmall";
        case ErrorKind::DivisionByZero: return "DivisionByZero";
        case ErrorKind::EmptyInput: return "EmptyInput";
        case ErrorKind::MixedDimensions: return "MixedDimensions";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::OriginMissing: return "OriginMissing";
        case ErrorKind::TargetTooSmall: return "TargetTooSmall";
        case ErrorKind::NotUnimodular: return "NotUnimodular";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::OutOfBox: return "OutOfBox";
        case ErrorKind::BudgetExceeded: return "BudgetExceeded";
        case ErrorKind::RuleInapplicable: return "RuleInapplicable";
        case ErrorKind::NotASubset: return "NotASubset";
        case ErrorKind::TooManyVectors: return "TooManyVectors";
        case ErrorKind::ScheduleOutOfRange: return "ScheduleOutOfRange";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::SchemaError: return "SchemaError";
    }
    return "Unknown";
}

}  // namespace polycode
