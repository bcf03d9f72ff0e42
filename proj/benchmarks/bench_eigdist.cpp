// SPDX-License-Identifier: Apache-2.0
//
// afmimo: performance analysis of beamforming over dual-hop AF MIMO links
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#include <afmimo/eigdist.hpp>
#include <afmimo/metrics.hpp>

#include <benchmark/benchmark.h>

namespace
{
    afmimo::SystemDims dims_of(const benchmark::State &s)
    {
        return {static_cast<int>(s.range(0)), static_cast<int>(s.range(1)), static_cast<int>(s.range(2))};
    }

    void BM_Construct(benchmark::State &state)
    {
        const auto d = dims_of(state);
        for (auto _ : state)
            benchmark::DoNotOptimize(afmimo::MaxEigDistribution(d, 0.1));
    }
    BENCHMARK(BM_Construct)->Args({2, 2, 2})->Args({4, 4, 4})->Args({8, 8, 8});

    void BM_CdfExact(benchmark::State &state)
    {
        const afmimo::MaxEigDistribution dist(dims_of(state), 0.1);
        double x = 0.5;
        for (auto _ : state)
        {
            benchmark::DoNotOptimize(afmimo::cdf_exact(dist, x));
            x = x < 30.0 ? x * 1.3 : 0.5;
        }
    }
    BENCHMARK(BM_CdfExact)->Args({2, 2, 2})->Args({3, 2, 4})->Args({4, 4, 4})->Args({8, 8, 8});

    void BM_PdfExact(benchmark::State &state)
    {
        const afmimo::MaxEigDistribution dist(dims_of(state), 0.1);
        double x = 0.5;
        for (auto _ : state)
        {
            benchmark::DoNotOptimize(afmimo::pdf_exact(dist, x));
            x = x < 30.0 ? x * 1.3 : 0.5;
        }
    }
    BENCHMARK(BM_PdfExact)->Args({2, 2, 2})->Args({4, 4, 4});

    void BM_SerNumeric(benchmark::State &state)
    {
        const auto d = dims_of(state);
        const auto b = afmimo::LinkBudget::from_db(10.0, 1.0);
        for (auto _ : state)
            benchmark::DoNotOptimize(afmimo::ser_numeric(d, b, afmimo::ModulationParams::bpsk()));
    }
    BENCHMARK(BM_SerNumeric)->Args({2, 2, 2})->Args({3, 1, 4})->Unit(benchmark::kMillisecond);

    void BM_CapacityNumeric(benchmark::State &state)
    {
        const auto d = dims_of(state);
        const auto b = afmimo::LinkBudget::from_db(10.0, 1.0);
        for (auto _ : state)
            benchmark::DoNotOptimize(afmimo::capacity_numeric(d, b));
    }
    BENCHMARK(BM_CapacityNumeric)->Args({2, 2, 2})->Args({3, 1, 4})->Unit(benchmark::kMillisecond);
} // namespace

BENCHMARK_MAIN();
