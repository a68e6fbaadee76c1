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

#include <benchmark/benchmark.h>

#include "polycode/expr.hpp"
#include "polycode/toric.hpp"

using namespace polycode;
using lattice::PolytopeExpr;

namespace {

struct Case {
    const char* expr;
    std::uint32_t q;
};

// Between 7.8e3 and 4.9e5 candidate messages each.
const Case kCases[] = {
    {"box(1,1,1)", 5},         // k=8, N=64
    {"simplex(2,2)", 7},       // k=6, N=36
    {"join(box(1,1),seg(2))", 5},  // k=7, N=256
    {"box(2,2)", 5},           // k=9, N=16
};

PolytopeExpr build(int i) {
    switch (i) {
        case 0:
            return PolytopeExpr::box({1, 1, 1});
        case 1:
            return PolytopeExpr::simplex(2, 2);
        case 2:
            return PolytopeExpr::join(PolytopeExpr::box({1, 1}), PolytopeExpr::segment(2));
        default:
            return PolytopeExpr::box({2, 2});
    }
}

void BM_serial(benchmark::State& state) {
    const int i = static_cast<int>(state.range(0));
    const ff::FieldTable f(kCases[i].q);
    const auto e = build(i);
    const toric::GeneratorMatrix g(e.evaluate(), f);
    for (auto _ : state) benchmark::DoNotOptimize(toric::min_weight_search_serial(g).distance);
    state.SetLabel(kCases[i].expr);
}

void BM_kernel(benchmark::State& state) {
    const int i = static_cast<int>(state.range(0));
    const ff::FieldTable f(kCases[i].q);
    const auto e = build(i);
    const toric::GeneratorMatrix g(e.evaluate(), f);
    toric::SearchOptions opts;
    opts.threads = static_cast<int>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(toric::min_weight_search(g, opts).distance);
    state.SetLabel(kCases[i].expr);
}

}  // namespace

BENCHMARK(BM_serial)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_kernel)->ArgsProduct({{0, 1, 2, 3}, {1, 4}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
