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

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace polycode::cli {

struct ReproCheck {
    std::string example;
    std::string label;
    std::string expected;
    std::string actual;
    bool pass() const { return expected == actual; }
};

struct ReproOptions {
    std::uint64_t distance_budget;
    std::uint64_t node_budget;
    int threads = 0;
};

/// Names accepted by run_examples, in table order.
const std::vector<std::string>& example_names();

/// Runs the named examples (all of them when names is empty). Throws
/// Error{InvalidArgument} on an unknown name.
std::vector<ReproCheck> run_examples(const std::vector<std::string>& names, const ReproOptions& opts);

}  // namespace polycode::cli
