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
#include "pint/structured_kernels.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

pint::Vector random_vector(std::size_t n, unsigned seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    pint::Vector v(n);
    for (double& x : v) x = uni(rng);
    return v;
}

void BM_IlttInverse(benchmark::State& state)
{
    const auto m = static_cast<std::size_t>(state.range(0));
    const pint::LowerToeplitz l(pint::q_theta_first_column(0.5, 1.0 / static_cast<double>(m), m));
    for (auto _ : state) benchmark::DoNotOptimize(pint::iltt_inverse_first_column(l));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_IlttInverse)->RangeMultiplier(2)->Range(1 << 10, 1 << 16)->Complexity(benchmark::oNLogN);

void BM_Dst(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const pint::SineTransformPlan plan(n);
    const pint::Vector x = random_vector(n, 1);
    for (auto _ : state) benchmark::DoNotOptimize(pint::dst1_apply(plan, x));
}
BENCHMARK(BM_Dst)->RangeMultiplier(4)->Range(64, 1 << 16);

void BM_ToeplitzMatvec(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const pint::SymmetricToeplitz t(pint::frac_centered_weights(1.5, n - 1));
    const pint::Vector x = random_vector(n, 2);
    for (auto _ : state) benchmark::DoNotOptimize(pint::sym_toeplitz_matvec(t, x));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ToeplitzMatvec)->RangeMultiplier(4)->Range(64, 1 << 16)->Complexity(benchmark::oNLogN);

} // namespace

BENCHMARK_MAIN();
