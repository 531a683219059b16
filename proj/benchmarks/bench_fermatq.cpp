// Copyright 2026 The fermatq Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#include <random>

#include <benchmark/benchmark.h>

#include "fermatq/encoders.hpp"
#include "fermatq/fermat.hpp"
#include "fermatq/solvers.hpp"

namespace {

using namespace fermatq;

// Balanced semiprimes of 24, 32, 40 and 48 bits.
const BigUint kSemiprimes[] = {
        BigUint(8'689'739),
        BigUint(2'759'398'361),
        BigUint(720'635'298'793),
        BigUint(184'703'216'780'267),
};

void BM_Isqrt(benchmark::State& state) {
    std::mt19937_64 rng(1);
    const auto bits = static_cast<unsigned>(state.range(0));
    BigInt v = 1;
    while (bitlen(BigUint(v)) < bits) v = (v << 64) | rng();
    const BigUint n(v >> (bitlen(BigUint(v)) - bits));
    for (auto _ : state) benchmark::DoNotOptimize(isqrt(n));
}
BENCHMARK(BM_Isqrt)->Arg(48)->Arg(128)->Arg(512)->Arg(2048);

void BM_FactorFermat(benchmark::State& state) {
    const BigUint& n = kSemiprimes[state.range(0)];
    const auto method = static_cast<FermatMethod>(state.range(1));
    std::uint64_t tests = 0;
    for (auto _ : state) tests = factor_fermat(n, method, true).iterations;
    state.SetLabel(std::to_string(bitlen(n)) + "-bit " + std::string(to_string(method)));
    state.counters["tests"] = static_cast<double>(tests);
}
BENCHMARK(BM_FactorFermat)->ArgsProduct({{0, 1, 2, 3}, {0, 1, 2, 3, 4}})->Unit(benchmark::kMicrosecond);

void BM_EncodeBitPattern(benchmark::State& state) {
    const BigUint& n = kSemiprimes[state.range(0)];
    const auto bounds = fermat_bounds(n, true);
    for (auto _ : state) benchmark::DoNotOptimize(encode_bit_pattern(n, bounds));
}
BENCHMARK(BM_EncodeBitPattern)->DenseRange(0, 3);

void BM_SolveExact(benchmark::State& state) {
    // 19, 21 and 23 variable bit-pattern models.
    const BigUint n = 8'689'739;
    const auto family = encode_bit_pattern_family(n, fermat_bounds(n, true), static_cast<unsigned>(state.range(0)));
    const QuboModel& model = family.front().first;
    for (auto _ : state) benchmark::DoNotOptimize(solve_exact(model, 26));
    state.SetLabel(std::to_string(model.num_vars()) + " vars");
}
BENCHMARK(BM_SolveExact)->Arg(10)->Arg(9)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_SaSweeps(benchmark::State& state) {
    const BigUint n = 8'689'739;
    const auto model = encode_bit_pattern(n, fermat_bounds(n, true)).first;
    SaParams p;
    p.sweeps = 500;
    p.restarts = static_cast<std::uint64_t>(state.range(0));
    p.beta_initial = 1e-14;
    p.beta_final = 0.1;
    p.samples_kept = static_cast<std::size_t>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(solve_sa(model, p));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(p.sweeps * p.restarts));
}
BENCHMARK(BM_SaSweeps)->Args({100, 64})->Args({100, 262144})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
