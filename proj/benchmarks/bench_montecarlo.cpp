// SPDX-License-Identifier: Apache-2.0
//
// afmimo: performance analysis of beamforming over dual-hop AF MIMO links
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#include <afmimo/montecarlo.hpp>

#include <benchmark/benchmark.h>

namespace
{
    void BM_Philox(benchmark::State &state)
    {
        afmimo::philox::Counter c{0, 0, 0, 0};
        for (auto _ : state)
        {
            benchmark::DoNotOptimize(afmimo::philox::block(c, {1, 2}));
            ++c[0];
        }
    }
    BENCHMARK(BM_Philox);

    void BM_Normal(benchmark::State &state)
    {
        afmimo::NormalSource src({1, 0});
        for (auto _ : state)
            benchmark::DoNotOptimize(src.next());
    }
    BENCHMARK(BM_Normal);

    void BM_Jacobi(benchmark::State &state)
    {
        const int n = static_cast<int>(state.range(0));
        afmimo::NormalSource src({2, 0});
        Eigen::MatrixXcd G(n, n);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i)
                G(i, j) = src.next();
        const Eigen::MatrixXcd A = G * G.adjoint();
        for (auto _ : state)
            benchmark::DoNotOptimize(afmimo::jacobi_hermitian(A));
    }
    BENCHMARK(BM_Jacobi)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

    void BM_SampleMaxEig(benchmark::State &state)
    {
        const afmimo::SystemDims d(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)),
                                   static_cast<int>(state.range(2)));
        const std::size_t n = 10000;
        for (auto _ : state)
            benchmark::DoNotOptimize(afmimo::sample_max_eig(d, 0.1, n, {3, 0}));
        state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
    }
    BENCHMARK(BM_SampleMaxEig)->Args({2, 2, 2})->Args({2, 2, 32})->Args({2, 32, 2})->Unit(benchmark::kMillisecond);
} // namespace

BENCHMARK_MAIN();
