// Copyright 2026 The pint Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pint/discretization.hpp"
#include "pint/preconditioner.hpp"
#include "pint/problems.hpp"

#include <benchmark/benchmark.h>

namespace {

// Args: interior points per axis, time steps, workers.
void BM_ApplyPinv(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto m = static_cast<std::size_t>(state.range(1));
    const auto p = pint::build_preconditioner(pint::ex2(n, m, 1.1, 1.2), std::nullopt, static_cast<int>(state.range(2)));
    pint::Vector v(p.size(), 1.0), out(p.size());
    for (auto _ : state) {
        p.apply_pinv(v, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(p.size()));
}
BENCHMARK(BM_ApplyPinv)
    ->Args({16, 256, 1})
    ->Args({32, 1024, 1})
    ->Args({32, 1024, 2})
    ->Args({32, 1024, 4})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

void BM_ApplyAllAtOnce(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto m = static_cast<std::size_t>(state.range(1));
    const auto a = pint::build_all_at_once(pint::ex2(n, m, 1.1, 1.2), static_cast<int>(state.range(2)));
    pint::Vector v(a.size(), 1.0), out(a.size());
    for (auto _ : state) {
        a.apply(v, out);
        benchmark::DoNotOptimize(out.data());
    }
}
BENCHMARK(BM_ApplyAllAtOnce)->Args({32, 1024, 1})->Args({32, 1024, 4})->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_BuildPreconditioner(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(pint::build_preconditioner(pint::ex2(n, 1024, 1.1, 1.2)));
}
BENCHMARK(BM_BuildPreconditioner)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

} // namespace
