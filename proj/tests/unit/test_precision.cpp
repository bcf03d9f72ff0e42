// SPDX-License-Identifier: Apache-2.0
//
// afmimo: performance analysis of beamforming over dual-hop AF MIMO links
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

// Rounding control of the determinant kernels. The reference is the same
// kernel in much wider arithmetic, which isolates rounding from formula
// errors; the formulas themselves are checked elsewhere.

#include "kernel.hpp"
#include "oracles.hpp"

#include <afmimo/eigdist.hpp>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

using namespace afmimo;
namespace mp = boost::multiprecision;

namespace
{
    template <unsigned Digits>
    using bin = mp::number<mp::cpp_bin_float<Digits>, mp::et_off>;

    template <class Real>
    detail::Estimate<Real> kernel(bool pdf, const SystemDims &d, double a, double x)
    {
        return pdf ? detail::general_pdf<Real>(d, Real(a), Real(x)) : detail::general_cdf<Real>(d, Real(a), Real(x));
    }

    // Actual relative error of the Real evaluation and its own estimate.
    template <class Real, class Ref>
    std::pair<double, double> rounding(bool pdf, const SystemDims &d, double a, double x, const Ref &ref)
    {
        const auto e = kernel<Real>(pdf, d, a, x);
        const Ref mag = abs(ref);
        return {static_cast<double>(abs(Ref(e.value) - ref) / mag), static_cast<double>(Ref(e.error) / mag)};
    }

    std::string label(bool pdf, const SystemDims &d, double a, double x)
    {
        return std::string(pdf ? "pdf " : "cdf ") + d.str() + " a=" + std::to_string(a) + " x=" + std::to_string(x);
    }
} // namespace

TEST(Rounding, EstimateBoundsDoubleAndQuadError)
{
    int checked = 0;
    for (const auto &d : {SystemDims(2, 2, 2), SystemDims(4, 4, 4), SystemDims(6, 6, 6), SystemDims(8, 8, 8),
                          SystemDims(3, 8, 8), SystemDims(2, 5, 16), SystemDims(12, 4, 8)})
        for (double a : {0.0, 0.01, 1.0})
            for (double x : {0.1, 2.0, 30.0})
                for (bool pdf : {false, true})
                {
                    const auto ref = kernel<bin<100>>(pdf, d, a, x);
                    // Use the reference only where it certifies itself to 1e-40.
                    if (!(ref.error < 1e-40 * abs(ref.value)))
                        continue;
                    const auto [act_d, est_d] = rounding<double>(pdf, d, a, x, ref.value);
                    const auto [act_q, est_q] = rounding<detail::quad>(pdf, d, a, x, ref.value);
                    EXPECT_LE(act_d, est_d) << label(pdf, d, a, x);
                    EXPECT_LE(act_q, est_q) << label(pdf, d, a, x);
                    ++checked;
                }
    EXPECT_GT(checked, 100);
}

TEST(Rounding, EstimateBoundsWideError)
{
    // Far tails where only the widest tier resolves the value.
    for (auto [d, a, x] : {std::tuple{SystemDims(8, 8, 8), 0.01, 0.1}, std::tuple{SystemDims(16, 8, 16), 1.0, 1.0},
                           std::tuple{SystemDims(8, 8, 16), 0.1, 0.5}})
        for (bool pdf : {false, true})
        {
            const auto ref = kernel<bin<250>>(pdf, d, a, x);
            const auto [act, est] = rounding<detail::wide>(pdf, d, a, x, ref.value);
            EXPECT_LE(act, est) << label(pdf, d, a, x);
            EXPECT_LT(est, 1e-3) << label(pdf, d, a, x);
        }
}

TEST(Rounding, EstimateIsNotVacuous)
{
    // Well-conditioned evaluations meet the double-tier target.
    const auto e = kernel<double>(false, {2, 2, 2}, 0.1, 3.0);
    EXPECT_LE(e.error, detail::double_rel_target * std::abs(e.value));
}

TEST(Envelope, LargeArraysAgainstMonteCarlo)
{
    const std::size_t n = 200000;
    for (auto [d, a, x] : {std::tuple{SystemDims(8, 8, 8), 1.0, 16.0}, std::tuple{SystemDims(3, 8, 8), 1.0, 8.0},
                           std::tuple{SystemDims(6, 6, 6), 0.1, 32.0}, std::tuple{SystemDims(16, 8, 16), 1.0, 32.0}})
    {
        const auto lambda = oracle::sample_lambda(d, a, n, 7);
        const double emp =
            static_cast<double>(std::count_if(lambda.begin(), lambda.end(), [&](double l) { return l <= x; })) / n;
        const double f = cdf_exact(MaxEigDistribution(d, a), x);
        EXPECT_LE(std::abs(emp - f), 4.0 * std::sqrt(f * (1 - f) / n) + 1e-4) << d.str() << " F=" << f;
    }
}

TEST(Envelope, EvaluatesAcrossTheRange)
{
    for (const auto &d : {SystemDims(8, 8, 8), SystemDims(16, 8, 16), SystemDims(1, 8, 16), SystemDims(16, 1, 16)})
        for (double a : {0.0, 0.05, 2.0})
        {
            const MaxEigDistribution dist(d, a);
            const double hi = dist.upper_quantile_bound(1e-12);
            double prev = 0.0;
            for (double x = 0.05; x < hi; x *= 1.6)
            {
                const double f = cdf_exact(dist, x);
                EXPECT_GE(f, prev - 1e-12) << d.str() << " x=" << x;
                EXPECT_LE(f, 1.0) << d.str() << " x=" << x;
                EXPECT_GE(pdf_exact(dist, x), 0.0) << d.str() << " x=" << x;
                prev = std::max(prev, f);
            }
            EXPECT_LE(1.0 - cdf_exact(dist, hi), 2e-11) << d.str();
        }
}

TEST(Envelope, DerivativeMatchesDensityForLargeArrays)
{
    for (auto [d, a, x] : {std::tuple{SystemDims(8, 8, 8), 1.0, 12.0}, std::tuple{SystemDims(6, 6, 6), 0.1, 20.0}})
    {
        const MaxEigDistribution dist(d, a);
        const double h = 1e-3 * x;
        auto F = [&](double y) { return cdf_exact(dist, y); };
        const double fd = (8 * (F(x + h) - F(x - h)) - (F(x + 2 * h) - F(x - 2 * h))) / (12 * h);
        EXPECT_NEAR(fd, pdf_exact(dist, x), 1e-5 * pdf_exact(dist, x)) << d.str();
    }
}
