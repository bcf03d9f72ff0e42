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

#include <boost/math/special_functions/binomial.hpp>
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

using namespace afmimo;

namespace
{
    double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

    double binom(int n, int k) { return boost::math::binomial_coefficient<double>(n, k); }

    // Kernel entry summed term by term with the standard library Bessel K.
    double direct_entry(const SystemDims &d, double a, double x, int i, int j)
    {
        const int q = d.q(), p = d.p(), s = d.s(), t = d.t();
        if (i <= q - s)
        {
            double v = 0.0;
            for (int l = 0; l <= q - i + j - 1; ++l)
                v += binom(q - i + j - 1, l) * std::pow(a, l) * std::tgamma(p + l + i - j);
            return ((q - s - i) % 2 == 0 ? 1.0 : -1.0) * v;
        }
        const int th = d.theta(i, j), ta = d.tau(i, j);
        double A = 0.0, B = 0.0;
        for (int l = 0; l <= ta; ++l)
            A += binom(ta, l) * std::pow(a, l) * std::tgamma(th + l + 1);
        for (int k = 0; k <= t - i; ++k)
            for (int l = 0; l <= ta + k; ++l)
            {
                const int v = th + l - k + 1;
                B += binom(ta + k, l) * std::pow(a, l) / std::tgamma(k + 1.0) * std::pow(x, (th + l + k + 1) / 2.0) *
                     std::cyl_bessel_k(std::abs(v), 2.0 * std::sqrt(x));
            }
        return A - 2.0 * std::exp(-a * x) * B;
    }

    double direct_cdf(const SystemDims &d, double a, double x)
    {
        const int q = d.q();
        Eigen::MatrixXd M(q, q);
        for (int i = 1; i <= q; ++i)
            for (int j = 1; j <= q; ++j)
                M(i - 1, j - 1) = direct_entry(d, a, x, i, j);
        double norm = 1.0;
        for (int i = 1; i <= q; ++i)
            norm *= std::tgamma(q - i + 1.0) * std::tgamma(d.p() - i + 1.0);
        const double sign = (d.ns * (d.t() - d.ns)) % 2 == 0 ? 1.0 : -1.0;
        return sign * M.determinant() / norm;
    }

    double empirical(const std::vector<double> &v, double x)
    {
        return static_cast<double>(std::count_if(v.begin(), v.end(), [&](double l) { return l <= x; })) / v.size();
    }

    std::vector<double> log_grid(double lo, double hi, int n)
    {
        std::vector<double> g;
        for (int i = 0; i < n; ++i)
            g.push_back(lo * std::pow(hi / lo, i / (n - 1.0)));
        return g;
    }

    std::vector<SystemDims> small_dims()
    {
        std::vector<SystemDims> out;
        for (int ns = 1; ns <= 3; ++ns)
            for (int nr = 1; nr <= 3; ++nr)
                for (int nd = 1; nd <= 3; ++nd)
                    out.emplace_back(ns, nr, nd);
        return out;
    }
} // namespace

TEST(PhiEntry, DirectSummationAnchor)
{
    const SystemDims d(2, 2, 2);
    EXPECT_LE(rel(phi_entry(d, 0.1, 1.0, 1, 1), direct_entry(d, 0.1, 1.0, 1, 1)), 1e-12);
}

TEST(PhiEntry, AllEntriesAgreeWithDirectSummation)
{
    for (const auto &d : {SystemDims(2, 2, 2), SystemDims(1, 3, 3), SystemDims(3, 2, 3), SystemDims(2, 3, 4)})
        for (double x : {0.3, 1.0, 4.0})
            for (int i = 1; i <= d.q(); ++i)
                for (int j = 1; j <= d.q(); ++j)
                {
                    const double want = direct_entry(d, 0.2, x, i, j);
                    EXPECT_NEAR(phi_entry(d, 0.2, x, i, j), want, 1e-11 * std::max(1.0, std::abs(want)))
                        << d.str() << " x=" << x << " (" << i << "," << j << ")";
                }
}

TEST(PhiEntry, GammaRowsIndependentOfX)
{
    const SystemDims d(1, 3, 3); // q - s = 2
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 3; ++j)
            EXPECT_EQ(phi_entry(d, 0.1, 0.3, i, j), phi_entry(d, 0.1, 7.0, i, j));
}

TEST(PhiEntry, KernelMatrixScalesRoundTrip)
{
    const SystemDims d(2, 3, 4);
    const auto K = kernel_matrix(d, 0.1, 2.0);
    ASSERT_EQ(K.order, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
        {
            EXPECT_TRUE(std::isfinite(K.at(i, j)));
            EXPECT_LE(rel(K.true_entry(i, j), phi_entry(d, 0.1, 2.0, i + 1, j + 1)), 1e-15);
        }
    EXPECT_THROW(phi_entry(d, 0.1, 1.0, 0, 1), DomainError);
    EXPECT_THROW(phi_entry(d, 0.1, 1.0, 1, 4), DomainError);
    EXPECT_THROW(kernel_derivative_matrix(d, 0.1, 1.0, 0), DomainError);
}

TEST(CdfExact, BoundaryValues)
{
    for (const auto &d : small_dims())
        EXPECT_EQ(cdf_exact(MaxEigDistribution(d, 0.2), 0.0), 0.0) << d.str();
    // The tail is heavy: 1 - F(20) is about 1.2e-2 for this law (10^6 draws
    // give 0.98827); total mass is checked further out.
    EXPECT_NEAR(cdf_exact(MaxEigDistribution({2, 2, 2}, 0.1), 200.0), 1.0, 1e-6);
}

TEST(CdfExact, AgreesWithDirectDeterminant)
{
    for (const auto &d : small_dims())
        for (double x : {0.2, 1.0, 3.0})
        {
            const double want = direct_cdf(d, 0.15, x);
            EXPECT_NEAR(cdf_exact(MaxEigDistribution(d, 0.15), x), want, 1e-8 * std::max(want, 1e-3))
                << d.str() << " x=" << x;
        }
}

TEST(CdfExact, MonteCarloAnchors)
{
    const std::size_t n = 1000000;
    const auto s0 = oracle::sample_lambda({2, 2, 2}, 0.1, n, 10);
    EXPECT_NEAR(cdf_exact(MaxEigDistribution({2, 2, 2}, 0.1), 20.0), empirical(s0, 20.0), 3e-3);
    const auto s1 = oracle::sample_lambda({2, 3, 2}, 0.05, n, 11);
    EXPECT_NEAR(cdf_exact(MaxEigDistribution({2, 3, 2}, 0.05), 1.0), empirical(s1, 1.0), 3e-3);
    const auto s2 = oracle::sample_lambda({1, 3, 3}, 0.1, n, 12);
    EXPECT_NEAR(cdf_ns1({1, 3, 3}, 0.1, 2.0), empirical(s2, 2.0), 3e-3);
    const auto s3 = oracle::sample_lambda({2, 1, 3}, 0.3, n, 13);
    EXPECT_NEAR(cdf_q1({2, 1, 3}, 0.3, 1.0), empirical(s3, 1.0), 3e-3);
}

TEST(CdfExact, SwapSymmetry)
{
    for (const auto &d : small_dims())
    {
        const SystemDims sw(d.ns, d.nd, d.nr);
        const MaxEigDistribution f(d, 0.3), g(sw, 0.3);
        for (double x : {0.05, 0.7, 2.5, 9.0})
            EXPECT_EQ(f.cdf(x), g.cdf(x)) << d.str();
    }
    // Physically distinct channels, same law.
    const std::size_t n = 200000;
    const auto a = oracle::sample_lambda({2, 1, 3}, 0.2, n, 21);
    const auto b = oracle::sample_lambda({2, 3, 1}, 0.2, n, 22);
    const double band = 2.0 * dkw_band(n, 0.999);
    for (double x : {0.5, 1.0, 2.0, 4.0})
        EXPECT_NEAR(empirical(a, x), empirical(b, x), band) << x;
}

TEST(CdfExact, ReductionConsistency)
{
    for (const auto &d : small_dims())
    {
        if (d.ns != 1 && d.q() != 1)
            continue;
        const MaxEigDistribution dist(d, 0.2);
        for (double x : log_grid(1e-4, 50.0, 25))
        {
            const double g = cdf_exact(dist, x);
            if (d.ns == 1)
                EXPECT_LE(rel(cdf_ns1(d, 0.2, x), g), 1e-10) << d.str() << " x=" << x;
            if (d.q() == 1)
                EXPECT_LE(rel(cdf_q1(d, 0.2, x), g), 1e-10) << d.str() << " x=" << x;
        }
    }
}

TEST(CdfExact, StochasticOrderingInA)
{
    for (const auto &d : {SystemDims(2, 2, 2), SystemDims(3, 2, 4), SystemDims(1, 3, 2)})
        for (double x : {0.1, 0.5, 1.0, 3.0, 8.0})
        {
            double prev = 0.0;
            for (double a : {0.0, 0.05, 0.2, 0.5, 1.0})
            {
                const double f = MaxEigDistribution(d, a).cdf(x);
                EXPECT_GE(f, prev - 1e-12) << d.str() << " x=" << x << " a=" << a;
                prev = f;
            }
        }
}

TEST(CdfExact, NondecreasingAndBounded)
{
    const MaxEigDistribution dist({3, 3, 3}, 0.1);
    double prev = 0.0;
    for (double x = 0.05; x < 40.0; x *= 1.2)
    {
        const double f = dist.cdf(x);
        EXPECT_GE(f, prev);
        EXPECT_LE(f, 1.0);
        prev = f;
    }
}

TEST(CdfSpecial, SingleAntennaDualHop)
{
    const SystemDims d(1, 1, 1);
    for (double a : {0.0, 0.1, 0.7})
        for (double x : {0.01, 0.5, 2.0, 10.0})
        {
            const double want = 1.0 - 2.0 * std::exp(-a * x) * std::sqrt(x) * std::cyl_bessel_k(1.0, 2.0 * std::sqrt(x));
            EXPECT_LE(rel(cdf_q1(d, a, x), want), 1e-11) << a << " " << x;
        }
    EXPECT_EQ(cdf_q1({2, 1, 3}, 0.1, 0.0), 0.0);
    EXPECT_EQ(cdf_ns1({1, 2, 3}, 0.1, 0.0), 0.0);
    EXPECT_LE(rel(cdf_ns1({1, 2, 3}, 0.2, 0.5), cdf_exact(MaxEigDistribution({1, 2, 3}, 0.2), 0.5)), 1e-10);
}

TEST(CdfSpecial, DimensionErrors)
{
    EXPECT_THROW(cdf_ns1({2, 2, 2}, 0.1, 1.0), DimensionError);
    EXPECT_THROW(cdf_q1({2, 2, 2}, 0.1, 1.0), DimensionError);
    EXPECT_THROW(pdf_ns1({2, 2, 2}, 0.1, 1.0), DimensionError);
    EXPECT_THROW(pdf_q1({2, 2, 2}, 0.1, 1.0), DimensionError);
    EXPECT_THROW(moment_ns1({2, 2, 2}, 0.1, 1), DimensionError);
    EXPECT_THROW(moment_q1({2, 2, 2}, 0.1, 1), DimensionError);
    EXPECT_THROW(MaxEigDistribution({2, 2, 2}, -0.1), DomainError);
    EXPECT_THROW(MaxEigDistribution({2, 2, 2}, 0.1).pdf(0.0), DomainError);
    EXPECT_THROW(MaxEigDistribution({2, 9, 9}, 0.1), PrecisionError);
}

TEST(Pdf, Normalisation)
{
    for (auto [d, tol] : {std::pair{SystemDims(2, 2, 2), 1e-6}, std::pair{SystemDims(2, 1, 2), 1e-7}})
    {
        const MaxEigDistribution dist(d, 0.1);
        const double mass =
            oracle::half_line([&](double x) { return x > 0 ? dist.pdf(x) : 0.0; }, dist.upper_quantile_bound());
        EXPECT_NEAR(mass, 1.0, tol) << d.str();
    }
}

TEST(Pdf, FiniteDifferenceOfCdf)
{
    const MaxEigDistribution dist({3, 2, 2}, 0.05);
    const double h = 1e-4;
    const double fd = (dist.cdf(1.0 + h) - dist.cdf(1.0 - h)) / (2 * h);
    EXPECT_LE(rel(fd, dist.pdf(1.0)), 1e-4);
    for (const auto &d : small_dims())
    {
        const MaxEigDistribution g(d, 0.2);
        for (double x : {0.3, 1.5, 5.0})
        {
            const double hh = 1e-3 * x;
            const double deriv = (-g.cdf(x + 2 * hh) + 8 * g.cdf(x + hh) - 8 * g.cdf(x - hh) + g.cdf(x - 2 * hh)) / (12 * hh);
            EXPECT_LE(std::abs(deriv - g.pdf(x)), 1e-4 * g.pdf(x)) << d.str() << " x=" << x;
        }
    }
}

TEST(Pdf, HistogramOfDraws)
{
    const SystemDims d(2, 3, 4);
    const MaxEigDistribution dist(d, 0.1);
    const std::size_t n = 1000000;
    auto lambda = oracle::sample_lambda(d, 0.1, n, 31);
    std::sort(lambda.begin(), lambda.end());
    const double lo = lambda[n / 200], hi = lambda[n - n / 200];
    const int bins = 50;
    double worst = 0.0;
    for (int b = 0; b < bins; ++b)
    {
        const double x0 = lo + (hi - lo) * b / bins, x1 = lo + (hi - lo) * (b + 1) / bins;
        const double p = oracle::tanh_sinh([&](double x) { return dist.pdf(x); }, x0, x1, 1e-10);
        const auto count = std::lower_bound(lambda.begin(), lambda.end(), x1) - std::lower_bound(lambda.begin(), lambda.end(), x0);
        const double sigma = std::sqrt(n * p * (1 - p));
        worst = std::max(worst, std::abs(count - n * p) / sigma);
    }
    EXPECT_LE(worst, 4.0);
}

TEST(Pdf, SpecialCaseForms)
{
    EXPECT_LE(rel(pdf_ns1({1, 2, 2}, 0.1, 0.7), pdf_exact(MaxEigDistribution({1, 2, 2}, 0.1), 0.7)), 1e-10);
    EXPECT_LE(rel(pdf_q1({3, 1, 2}, 0.2, 1.3), pdf_q1_single_sum({3, 1, 2}, 0.2, 1.3)), 1e-10);
    for (const auto &d : small_dims())
    {
        const MaxEigDistribution dist(d, 0.2);
        for (double x : log_grid(1e-3, 30.0, 12))
        {
            const double g = pdf_exact(dist, x);
            if (d.ns == 1)
                EXPECT_LE(rel(pdf_ns1(d, 0.2, x), g), 1e-10) << d.str() << " x=" << x;
            if (d.q() == 1)
            {
                EXPECT_LE(rel(pdf_q1(d, 0.2, x), g), 1e-10) << d.str() << " x=" << x;
                EXPECT_LE(rel(pdf_q1_single_sum(d, 0.2, x), g), 1e-10) << d.str() << " x=" << x;
            }
        }
    }
}

TEST(Asymptotics, SingleSourceAntenna)
{
    for (auto [d, a, x] : {std::tuple{SystemDims(1, 2, 3), 0.5, 1e-6}, std::tuple{SystemDims(1, 1, 3), 0.1, 1e-6},
                           std::tuple{SystemDims(1, 4, 2), 0.2, 1e-6}})
    {
        const int q = d.q();
        const double v1 = asym_ns1(d, a);
        EXPECT_GT(v1, 0.0);
        const double ratio = cdf_ns1(d, a, x) / (v1 * std::pow(x, q) / q);
        EXPECT_NEAR(ratio, 1.0, 0.01) << d.str();
        const double slope = std::log(cdf_ns1(d, a, 1e-5) / cdf_ns1(d, a, 1e-6)) / std::log(10.0);
        EXPECT_NEAR(slope, q, 0.05) << d.str();
    }
    // p = q carries a logarithmic factor; no power-law coefficient exists.
    EXPECT_THROW(asym_ns1({1, 2, 2}, 0.1), DomainError);
    EXPECT_THROW(asym_ns1({1, 1, 1}, 0.1), DomainError);
    EXPECT_THROW(asym_ns1({2, 2, 3}, 0.1), DimensionError);
}

TEST(Asymptotics, SingleRelayOrDestinationAntenna)
{
    // p < n_s: v2 = Gamma(n_s - p) / (Gamma(p) Gamma(n_s)) = 1/2 for (3,1,2)
    EXPECT_DOUBLE_EQ(asym_q1_coefficient({3, 1, 2}, 0.2, 1e-6), 0.5);
    EXPECT_NEAR(cdf_q1({3, 1, 2}, 0.2, 1e-6) / asym_q1({3, 1, 2}, 0.2, 1e-6), 1.0, 0.02);
    EXPECT_NEAR(cdf_q1({2, 1, 2}, 0.2, 1e-8) / asym_q1({2, 1, 2}, 0.2, 1e-8), 1.0, 0.05);
    EXPECT_NEAR(cdf_q1({1, 1, 4}, 0.2, 1e-6) / asym_q1({1, 1, 4}, 0.2, 1e-6), 1.0, 0.02);
    for (const auto &d : {SystemDims(3, 1, 2), SystemDims(1, 1, 4), SystemDims(2, 4, 1), SystemDims(4, 1, 2)})
    {
        const double slope = std::log(cdf_q1(d, 0.2, 1e-5) / cdf_q1(d, 0.2, 1e-6)) / std::log(10.0);
        EXPECT_NEAR(slope, d.m(), 0.05) << d.str();
    }
    EXPECT_THROW(asym_q1({2, 2, 2}, 0.1, 1e-6), DimensionError);
}

TEST(Moments, ClosedFormsAgainstQuadrature)
{
    auto quad = [](const SystemDims &d, double a, int m)
    {
        const MaxEigDistribution dist(d, a);
        return oracle::half_line([&](double x) { return x > 0 ? std::pow(x, m) * dist.pdf(x) : 0.0; },
                                 dist.upper_quantile_bound(1e-15));
    };
    EXPECT_LE(rel(moment_ns1({1, 2, 2}, 0.1, 1), quad({1, 2, 2}, 0.1, 1)), 1e-5);
    EXPECT_LE(rel(moment_q1({2, 1, 3}, 0.2, 2), quad({2, 1, 3}, 0.2, 2)), 1e-5);
    EXPECT_LE(rel(moment_numeric(MaxEigDistribution({2, 1, 3}, 0.2), 2), quad({2, 1, 3}, 0.2, 2)), 1e-7);
    for (const auto &d : small_dims())
    {
        if (d.ns != 1 && d.q() != 1)
            continue;
        const double m1 = d.ns == 1 ? moment_ns1(d, 0.3, 1) : moment_q1(d, 0.3, 1);
        const double m2 = d.ns == 1 ? moment_ns1(d, 0.3, 2) : moment_q1(d, 0.3, 2);
        EXPECT_GE(m2, m1 * m1) << d.str();
        if (d.ns == 1 && d.q() == 1)
            for (int m = 1; m <= 3; ++m)
                EXPECT_LE(rel(moment_ns1(d, 0.3, m), moment_q1(d, 0.3, m)), 1e-10) << d.str();
    }
}

TEST(LargeAntenna, EquivalentModels)
{
    const auto nd0 = large_antenna_equiv({2, 3, 5}, 0.0, LargeLimit::nd);
    EXPECT_EQ(nd0.scale, 5.0);
    EXPECT_EQ(nd0.base.rows, 3);
    EXPECT_EQ(nd0.base.cols, 2);
    EXPECT_EQ(nd0.map(2.0), 10.0);
    const auto nr = large_antenna_equiv({2, 7, 3}, 0.1, LargeLimit::nr);
    EXPECT_EQ(nr.base.rows, 2);
    EXPECT_EQ(nr.base.cols, 3);
    EXPECT_DOUBLE_EQ(nr.scale, 7.0 / 1.7);
    const auto ns = large_antenna_equiv({9, 2, 3}, 0.5, LargeLimit::ns);
    EXPECT_DOUBLE_EQ(ns.map(2.0), 9.0 * 2.0 / 2.0);
    EXPECT_FALSE(ns.describe().empty());
    EXPECT_EQ(parse_large_limit("nr"), LargeLimit::nr);
    EXPECT_EQ(to_string(LargeLimit::ns), "ns");
    EXPECT_THROW(parse_large_limit("rx"), DomainError);
}

TEST(LargeAntenna, KolmogorovDistanceAt64)
{
    const SystemDims d(2, 2, 64);
    const double a = 0.1;
    const std::size_t n = 100000;
    auto exact = sample_max_eig(d, a, n, {7, 0});
    const auto e = large_antenna_equiv(d, a, LargeLimit::nd);
    std::mt19937_64 gen(99);
    std::vector<double> mapped(n);
    for (auto &v : mapped)
    {
        const auto G = oracle::gaussian(gen, e.base.rows, e.base.cols);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G.adjoint() * G, Eigen::EigenvaluesOnly);
        v = e.map(es.eigenvalues().maxCoeff());
    }
    std::sort(exact.begin(), exact.end());
    std::sort(mapped.begin(), mapped.end());
    double ks = 0.0;
    for (std::size_t i = 0, j = 0; i < n && j < n;)
    {
        if (exact[i] <= mapped[j])
            ++i;
        else
            ++j;
        ks = std::max(ks, std::abs(static_cast<double>(i) - static_cast<double>(j)) / n);
    }
    EXPECT_LE(ks, 0.02);
}

TEST(Wishart, LargestEigenvalueCdf)
{
    for (double x : {0.1, 1.0, 5.0})
        EXPECT_LE(rel(wishart_maxeig_cdf(1, 1, x), -std::expm1(-x)), 1e-13);
    EXPECT_EQ(wishart_maxeig_cdf(3, 2, 0.0), 0.0);
    EXPECT_NEAR(wishart_maxeig_cdf(4, 3, 200.0), 1.0, 1e-12);
    std::mt19937_64 gen(5);
    const int n = 1000000;
    int below = 0;
    for (int i = 0; i < n; ++i)
    {
        const auto G = oracle::gaussian(gen, 2, 2);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G.adjoint() * G, Eigen::EigenvaluesOnly);
        below += es.eigenvalues().maxCoeff() <= 1.0;
    }
    EXPECT_NEAR(wishart_maxeig_cdf(2, 2, 1.0), static_cast<double>(below) / n, 3e-3);
    // Shape symmetry of the nonzero spectrum.
    EXPECT_LE(rel(wishart_maxeig_cdf(2, 5, 3.0), wishart_maxeig_cdf(5, 2, 3.0)), 1e-12);
}
