// SPDX-License-Identifier: Apache-2.0
//
// afmimo: performance analysis of beamforming over dual-hop AF MIMO links
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#include <afmimo/specfun.hpp>

#include <benchmark/benchmark.h>

namespace
{
    void BM_BesselK(benchmark::State &state)
    {
        const int v = static_cast<int>(state.range(0));
        double x = 0.37;
        for (auto _ : state)
        {
            benchmark::DoNotOptimize(afmimo::bessel_k_int(v, x));
            x = x < 50.0 ? x * 1.7 : 0.37;
        }
    }
    BENCHMARK(BM_BesselK)->Arg(0)->Arg(3)->Arg(12);

    void BM_HypU(benchmark::State &state)
    {
        double z = 0.05;
        for (auto _ : state)
        {
            benchmark::DoNotOptimize(afmimo::hyp_u(2.5, -1.0, z));
            z = z < 40.0 ? z * 1.9 : 0.05;
        }
    }
    BENCHMARK(BM_HypU);

    void BM_ExpInt(benchmark::State &state)
    {
        double x = 0.01;
        for (auto _ : state)
        {
            benchmark::DoNotOptimize(afmimo::expint_n(3, x));
            x = x < 30.0 ? x * 2.1 : 0.01;
        }
    }
    BENCHMARK(BM_ExpInt);

    void BM_LowerIncGamma(benchmark::State &state)
    {
        double x = 0.1;
        for (auto _ : state)
        {
            benchmark::DoNotOptimize(afmimo::lower_inc_gamma_int(6, x));
            x = x < 40.0 ? x * 1.5 : 0.1;
        }
    }
    BENCHMARK(BM_LowerIncGamma);
} // namespace

BENCHMARK_MAIN();
