// SPDX-License-Identifier: Apache-2.0
//
// afmimo: performance analysis of beamforming over dual-hop AF MIMO links
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#include "oracles.hpp"

#include <afmimo/eigdist.hpp>
#include <afmimo/error.hpp>
#include <afmimo/montecarlo.hpp>

#include <Eigen/Eigenvalues>
#include <boost/math/distributions/chi_squared.hpp>
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>

using namespace afmimo;

namespace
{
    ChannelSample random_channel(std::mt19937_64 &gen, const SystemDims &d)
    {
        return {oracle::gaussian(gen, d.nr, d.ns), oracle::gaussian(gen, d.nd, d.nr)};
    }

    Eigen::MatrixXcd random_hermitian(std::mt19937_64 &gen, int n)
    {
        const Eigen::MatrixXcd G = oracle::gaussian(gen, n, n);
        return 0.5 * (G + G.adjoint());
    }

    // Sets AFMIMO_THREADS for one scope.
    struct ThreadsEnv
    {
        explicit ThreadsEnv(const char *v) { ::setenv("AFMIMO_THREADS", v, 1); }
        ~ThreadsEnv() { ::unsetenv("AFMIMO_THREADS"); }
    };
} // namespace

TEST(Philox, KnownAnswerVectors)
{
    for (const auto &kat : oracle::philox_kat)
    {
        const auto out = philox::block({kat.ctr[0], kat.ctr[1], kat.ctr[2], kat.ctr[3]}, {kat.key[0], kat.key[1]});
        for (int i = 0; i < 4; ++i)
            EXPECT_EQ(out[static_cast<std::size_t>(i)], kat.out[i]) << i;
    }
}

TEST(NormalSource, UniformLaw)
{
    NormalSource src({7, 0});
    constexpr int bins = 20, n = 200000;
    std::vector<int> count(bins, 0);
    for (int i = 0; i < n; ++i)
    {
        const double u = src.uniform();
        ASSERT_GT(u, 0.0);
        ASSERT_LT(u, 1.0);
        ++count[static_cast<std::size_t>(u * bins)];
    }
    double chi2 = 0.0;
    const double e = static_cast<double>(n) / bins;
    for (int c : count)
        chi2 += (c - e) * (c - e) / e;
    const boost::math::chi_squared dist(bins - 1);
    EXPECT_LT(chi2, boost::math::quantile(dist, 0.999));
}

TEST(NormalSource, ComplexGaussianMoments)
{
    NormalSource src({11, 3});
    constexpr int n = 400000;
    double re = 0, im = 0, re2 = 0, im2 = 0, cross = 0, abs4 = 0;
    for (int i = 0; i < n; ++i)
    {
        const auto z = src.next();
        re += z.real();
        im += z.imag();
        re2 += z.real() * z.real();
        im2 += z.imag() * z.imag();
        cross += z.real() * z.imag();
        abs4 += std::norm(z) * std::norm(z);
    }
    // Components N(0, 1/2); |z|^2 is Exp(1), so E|z|^4 = 2.
    const double se = std::sqrt(0.5 / n);
    EXPECT_LT(std::abs(re / n), 4 * se);
    EXPECT_LT(std::abs(im / n), 4 * se);
    EXPECT_NEAR(re2 / n, 0.5, 4 * std::sqrt(0.5 / n));
    EXPECT_NEAR(im2 / n, 0.5, 4 * std::sqrt(0.5 / n));
    EXPECT_LT(std::abs(cross / n), 4 * std::sqrt(0.25 / n));
    EXPECT_NEAR(abs4 / n, 2.0, 4 * std::sqrt(20.0 / n));
}

TEST(NormalSource, StreamsAndChunksDiffer)
{
    NormalSource a({5, 0}, 0), b({5, 1}, 0), c({5, 0}, 1), d({6, 0}, 0), a2({5, 0}, 0);
    const auto va = a.next();
    EXPECT_NE(va, b.next());
    EXPECT_NE(va, c.next());
    EXPECT_NE(va, d.next());
    EXPECT_EQ(va, a2.next());
}

TEST(Jacobi, AgainstBisectionAndEigen)
{
    std::mt19937_64 gen(3);
    for (int n : {1, 2, 3, 5, 8})
        for (int rep = 0; rep < 5; ++rep)
        {
            const Eigen::MatrixXcd A = random_hermitian(gen, n);
            const auto j = jacobi_hermitian(A, true);
            const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(A);
            const auto roots = oracle::hermitian_eigenvalues(A);
            ASSERT_EQ(static_cast<int>(roots.size()), n);
            for (int i = 0; i < n; ++i)
            {
                EXPECT_NEAR(j.values(i), es.eigenvalues()(i), 1e-12) << n;
                EXPECT_NEAR(j.values(i), roots[static_cast<std::size_t>(i)], 1e-9) << n;
            }
            const Eigen::MatrixXcd R = A * j.vectors - j.vectors * j.values.asDiagonal();
            EXPECT_LT(R.norm(), 1e-12 * (1.0 + A.norm()));
            EXPECT_LT((j.vectors.adjoint() * j.vectors - Eigen::MatrixXcd::Identity(n, n)).norm(), 1e-12);
        }
}

TEST(Jacobi, DiagonalAndDegenerate)
{
    Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(3, 3);
    D.diagonal() << 3.0, -1.0, 2.0;
    const auto j = jacobi_hermitian(D);
    EXPECT_EQ(j.values(0), -1.0);
    EXPECT_EQ(j.values(1), 2.0);
    EXPECT_EQ(j.values(2), 3.0);
    const auto id = jacobi_hermitian(Eigen::MatrixXcd::Identity(4, 4), true);
    for (int i = 0; i < 4; ++i)
        EXPECT_EQ(id.values(i), 1.0);
}

TEST(MaxEig, AgainstDirectProduct)
{
    std::mt19937_64 gen(5);
    for (const auto &d : {SystemDims(1, 1, 1), SystemDims(2, 2, 2), SystemDims(3, 1, 4), SystemDims(2, 5, 3),
                          SystemDims(4, 3, 1), SystemDims(1, 4, 6)})
        for (double a : {0.0, 0.05, 1.0, 10.0})
            for (int rep = 0; rep < 10; ++rep)
            {
                const auto s = random_channel(gen, d);
                const double want = oracle::max_eig_direct(s.H1, s.H2, a);
                EXPECT_NEAR(max_eig(s, a), want, 1e-11 * want) << d.str() << " a=" << a;
            }
    ChannelSample bad{Eigen::MatrixXcd::Ones(2, 2), Eigen::MatrixXcd::Ones(2, 3)};
    EXPECT_THROW(max_eig(bad, 1.0), DimensionError);
    EXPECT_THROW(max_eig({Eigen::MatrixXcd::Ones(2, 2), Eigen::MatrixXcd::Ones(2, 2)}, -1.0), DomainError);
}

TEST(Beamformer, OptimalAndDominant)
{
    for (const auto &d : {SystemDims(2, 2, 2), SystemDims(4, 1, 3), SystemDims(1, 3, 2), SystemDims(3, 4, 5)})
        for (std::uint32_t stream = 0; stream < 20; ++stream)
        {
            const auto s = sample_channel(d, RngSpec{99, stream});
            const auto chk = beamformer_consistency(s, LinkBudget::from_db(10.0, 1.0), {99, stream}, 50);
            EXPECT_LT(chk.residual, 1e-12) << d.str();
            EXPECT_LE(chk.max_ratio, 1.0 + 1e-12) << d.str();
            EXPECT_GT(chk.max_ratio, 0.0) << d.str();
        }
}

TEST(Sampling, DeterministicAndThreadIndependent)
{
    const SystemDims d(2, 3, 2);
    const RngSpec rng{123, 4};
    const std::size_t n = 3 * 8192 + 17;
    const auto ref = sample_max_eig(d, 0.3, n, rng);
    EXPECT_EQ(sample_max_eig(d, 0.3, n, rng), ref);
    for (const char *t : {"1", "2", "7"})
    {
        ThreadsEnv env(t);
        EXPECT_EQ(sample_max_eig(d, 0.3, n, rng), ref) << t;
    }
    {
        ThreadsEnv env("1");
        EXPECT_EQ(worker_count(), 1u);
    }
    // A shorter run is a prefix of a longer one.
    const auto head = sample_max_eig(d, 0.3, 9000, rng);
    EXPECT_TRUE(std::equal(head.begin(), head.end(), ref.begin()));
    EXPECT_NE(sample_max_eig(d, 0.3, 100, {124, 4}), std::vector<double>(ref.begin(), ref.begin() + 100));
    EXPECT_THROW(sample_max_eig(d, -0.1, 10, rng), DomainError);
}

TEST(Sampling, DrawOrderMatchesSequentialSubstreams)
{
    // Draw i lives in substream floor(i / 8192), at position i mod 8192.
    const SystemDims d(3, 2, 2);
    const RngSpec rng{77, 2};
    const auto all = sample_max_eig(d, 0.5, 2 * 8192 + 5, rng);
    for (std::uint32_t chunk : {0u, 1u, 2u})
    {
        NormalSource src(rng, chunk);
        for (std::size_t i = 0; i < 5; ++i)
            EXPECT_EQ(all[chunk * 8192 + i], max_eig(sample_channel(d, src), 0.5)) << chunk;
    }
}

TEST(Sampling, EmpiricalLawMatchesAnalyticCdf)
{
    const SystemDims d(2, 2, 3);
    const double a = 0.2;
    const MaxEigDistribution dist(d, a);
    std::vector<double> grid;
    for (double x = 0.25; x <= 12.0; x += 0.25)
        grid.push_back(x);
    const auto est = estimate_cdf(d, a, grid, 200000, {2024, 0});
    EXPECT_EQ(est.n_samples, 200000u);
    EXPECT_DOUBLE_EQ(est.band, dkw_band(200000));
    for (std::size_t i = 0; i < grid.size(); ++i)
        EXPECT_LE(std::abs(est.value[i] - cdf_exact(dist, grid[i])), est.band) << grid[i];
}

TEST(Estimators, DkwAndEmpiricalCdf)
{
    EXPECT_NEAR(dkw_band(1000000), std::sqrt(std::log(200.0) / 2e6), 1e-15);
    EXPECT_NEAR(dkw_band(100, 0.95), std::sqrt(std::log(40.0) / 200.0), 1e-15);
    EXPECT_THROW(dkw_band(0), DomainError);
    EXPECT_THROW(dkw_band(10, 1.0), DomainError);
    const auto e = empirical_cdf({3.0, 1.0, 2.0, 2.0}, {0.5, 1.0, 2.0, 2.5, 3.0});
    EXPECT_EQ(e.value, (std::vector<double>{0.0, 0.25, 0.75, 0.75, 1.0}));
    EXPECT_THROW(estimate_cdf({2, 2, 2}, 0.1, {1.0}, 999, {}), DomainError);
}

TEST(Estimators, MetricsFromSamples)
{
    const LinkBudget b(10.0, 1.0);
    const std::vector<double> lambda{0.1, 0.5, 1.0, 4.0};
    const double a = 0.25, arho = a * b.rho;
    const auto out = estimate_metric_from(lambda, b, a, OutageSpec{1.0});
    EXPECT_DOUBLE_EQ(out.value, 0.25); // gammas 0.25, 1.25, 2.5, 10
    EXPECT_DOUBLE_EQ(out.std_error, std::sqrt(0.25 * 0.75 / 4.0));
    const auto cap = estimate_metric_from(lambda, b, a, CapacityMetric{});
    double want = 0.0;
    for (double l : lambda)
        want += 0.5 * std::log2(1.0 + arho * l);
    EXPECT_NEAR(cap.value, want / 4.0, 1e-15);
    EXPECT_EQ(cap.n_samples, 4u);
    const auto ser = estimate_metric_from({1.0}, b, a, ModulationParams::bpsk());
    EXPECT_NEAR(ser.value, 0.5 * std::erfc(std::sqrt(arho)), 1e-15);
    EXPECT_EQ(ser.std_error, 0.0);
    EXPECT_THROW(estimate_metric_from({}, b, a, CapacityMetric{}), DomainError);
    EXPECT_THROW(estimate_metric_from(lambda, b, a, OutageSpec{-1.0}), DomainError);
    EXPECT_THROW(estimate_metric({2, 2, 2}, b, CapacityMetric{}, 9999, {}), DomainError);
}

TEST(Estimators, MetricAgainstTestSideSampler)
{
    // Library pipeline versus an independent sampler on an outage probability.
    const SystemDims d(2, 2, 2);
    const LinkBudget b = LinkBudget::from_db(5.0, 1.0);
    const double a = b.a(d.nr);
    const auto lib = estimate_metric(d, b, OutageSpec{2.0}, 200000, {31, 0});
    const auto ref = oracle::sample_lambda(d, a, 200000, 31);
    const double p = static_cast<double>(std::count_if(ref.begin(), ref.end(),
                                                       [&](double l) { return a * b.rho * l < 2.0; })) /
                     ref.size();
    const double se = std::sqrt(2.0) * lib.std_error;
    EXPECT_LE(std::abs(lib.value - p), 4.0 * se);
    EXPECT_LE(std::abs(lib.value - outage_exact(d, b, {2.0})), 3.0 * lib.std_error);
}
