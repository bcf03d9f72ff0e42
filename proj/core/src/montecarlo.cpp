// SPDX-License-Identifier: Apache-2.0
//
// afmimo: performance analysis of beamforming over dual-hop AF MIMO links
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#include "afmimo/montecarlo.hpp"

#include "afmimo/error.hpp"
#include "afmimo/specfun.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>
#include <thread>

namespace afmimo
{
    namespace philox
    {
        namespace
        {
            constexpr std::uint32_t m0 = 0xD2511F53u, m1 = 0xCD9E8D57u;
            constexpr std::uint32_t w0 = 0x9E3779B9u, w1 = 0xBB67AE85u;

            inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t &hi, std::uint32_t &lo)
            {
                const std::uint64_t prod = static_cast<std::uint64_t>(a) * b;
                hi = static_cast<std::uint32_t>(prod >> 32);
                lo = static_cast<std::uint32_t>(prod);
            }
        } // namespace

        Counter block(Counter c, Key k)
        {
            for (int round = 0; round < 10; ++round)
            {
                if (round > 0)
                {
                    k[0] += w0;
                    k[1] += w1;
                }
                std::uint32_t hi0, lo0, hi1, lo1;
                mulhilo(m0, c[0], hi0, lo0);
                mulhilo(m1, c[2], hi1, lo1);
                c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
            }
            return c;
        }
    } // namespace philox

    NormalSource::NormalSource(const RngSpec &rng, std::uint32_t chunk)
        : key_{static_cast<std::uint32_t>(rng.seed), static_cast<std::uint32_t>(rng.seed >> 32)},
          ctr_{0, 0, chunk, rng.stream}
    {
    }

    double NormalSource::uniform()
    {
        ctr_[0] = static_cast<std::uint32_t>(block_);
        ctr_[1] = static_cast<std::uint32_t>(block_ >> 32);
        ++block_;
        const auto r = philox::block(ctr_, key_);
        const std::uint64_t bits = (static_cast<std::uint64_t>(r[0]) << 32 | r[1]) >> 11;
        return (static_cast<double>(bits) + 0.5) * 0x1p-53;
    }

    std::complex<double> NormalSource::next()
    {
        // One block yields one Box-Muller pair.
        ctr_[0] = static_cast<std::uint32_t>(block_);
        ctr_[1] = static_cast<std::uint32_t>(block_ >> 32);
        ++block_;
        const auto r = philox::block(ctr_, key_);
        const std::uint64_t b1 = (static_cast<std::uint64_t>(r[0]) << 32 | r[1]) >> 11;
        const std::uint64_t b2 = (static_cast<std::uint64_t>(r[2]) << 32 | r[3]) >> 11;
        const double u1 = (static_cast<double>(b1) + 0.5) * 0x1p-53;
        const double u2 = (static_cast<double>(b2) + 0.5) * 0x1p-53;
        // Each component has variance 1/2.
        const double rad = std::sqrt(-std::log(u1));
        const double ang = 2.0 * std::numbers::pi * u2;
        return {rad * std::cos(ang), rad * std::sin(ang)};
    }

    ChannelSample sample_channel(const SystemDims &dims, NormalSource &src)
    {
        ChannelSample s{Eigen::MatrixXcd(dims.nr, dims.ns), Eigen::MatrixXcd(dims.nd, dims.nr)};
        for (Eigen::Index j = 0; j < s.H1.cols(); ++j)
            for (Eigen::Index i = 0; i < s.H1.rows(); ++i)
                s.H1(i, j) = src.next();
        for (Eigen::Index j = 0; j < s.H2.cols(); ++j)
            for (Eigen::Index i = 0; i < s.H2.rows(); ++i)
                s.H2(i, j) = src.next();
        return s;
    }

    ChannelSample sample_channel(const SystemDims &dims, const RngSpec &rng)
    {
        NormalSource src(rng);
        return sample_channel(dims, src);
    }

    namespace
    {
        // E with E^H E = H1^H H2^H (a H2 H2^H + I)^{-1} H2 H1.
        Eigen::MatrixXcd whitened(const ChannelSample &s, double a)
        {
            const auto &H1 = s.H1, &H2 = s.H2;
            const Eigen::Index nd = H2.rows(), nr = H2.cols();
            if (H1.rows() != nr)
                throw DimensionError("max_eig: H1 rows must equal H2 columns");
            if (!(a >= 0.0))
                throw DomainError("max_eig: a must be non-negative");
            if (nd <= nr)
            {
                Eigen::MatrixXcd K = a * (H2 * H2.adjoint());
                K.diagonal().array() += 1.0;
                Eigen::LLT<Eigen::MatrixXcd> llt(K);
                if (llt.info() != Eigen::Success)
                    throw ConvergenceError("max_eig: Cholesky factorisation failed");
                Eigen::MatrixXcd C = H2;
                llt.matrixL().solveInPlace(C);
                return C * H1;
            }
            const auto eig = jacobi_hermitian(H2.adjoint() * H2, true);
            Eigen::VectorXd w(nr);
            for (Eigen::Index i = 0; i < nr; ++i)
            {
                const double g = std::max(eig.values(i), 0.0);
                w(i) = std::sqrt(g / (a * g + 1.0));
            }
            return w.asDiagonal() * eig.vectors.adjoint() * H1;
        }

        std::size_t env_threads()
        {
            if (const char *env = std::getenv("AFMIMO_THREADS"))
            {
                try
                {
                    const long v = std::stol(env);
                    if (v >= 1)
                        return static_cast<std::size_t>(v);
                }
                catch (const std::exception &)
                {
                }
            }
            return 0;
        }

        constexpr std::size_t chunk_draws = 8192;

        // Runs body(chunk, begin, end) over fixed chunks on the worker pool.
        template <class Body>
        void for_chunks(std::size_t n, Body body)
        {
            const std::size_t chunks = (n + chunk_draws - 1) / chunk_draws;
            const std::size_t workers = std::min<std::size_t>(worker_count(), std::max<std::size_t>(chunks, 1));
            std::atomic<std::size_t> next{0};
            std::exception_ptr failure;
            std::atomic<bool> failed{false};
            auto run = [&]
            {
                for (;;)
                {
                    const std::size_t c = next.fetch_add(1);
                    if (c >= chunks || failed.load())
                        return;
                    try
                    {
                        body(c, c * chunk_draws, std::min(n, (c + 1) * chunk_draws));
                    }
                    catch (...)
                    {
                        if (!failed.exchange(true))
                            failure = std::current_exception();
                        return;
                    }
                }
            };
            if (workers <= 1)
                run();
            else
            {
                std::vector<std::thread> pool;
                for (std::size_t w = 0; w < workers; ++w)
                    pool.emplace_back(run);
                for (auto &t : pool)
                    t.join();
            }
            if (failure)
                std::rethrow_exception(failure);
        }
    } // namespace

    double max_eig(const ChannelSample &sample, double a)
    {
        const Eigen::MatrixXcd E = whitened(sample, a);
        const Eigen::MatrixXcd G = E.rows() < E.cols() ? Eigen::MatrixXcd(E * E.adjoint())
                                                       : Eigen::MatrixXcd(E.adjoint() * E);
        const auto eig = jacobi_hermitian(G);
        return std::max(eig.values(eig.values.size() - 1), 0.0);
    }

    BeamformerCheck beamformer_consistency(const ChannelSample &s, const LinkBudget &budget, const RngSpec &rng,
                                           int n_random)
    {
        const double a = budget.a(static_cast<int>(s.H2.cols()));
        const double arho = a * budget.rho;
        Eigen::MatrixXcd K = a * (s.H2 * s.H2.adjoint());
        K.diagonal().array() += 1.0;
        Eigen::LLT<Eigen::MatrixXcd> llt(K);
        if (llt.info() != Eigen::Success)
            throw ConvergenceError("beamformer_consistency: Cholesky factorisation failed");
        const Eigen::MatrixXcd HH = s.H2 * s.H1;
        const Eigen::MatrixXcd C = llt.matrixL().solve(HH);
        const Eigen::MatrixXcd M = C.adjoint() * C;
        const auto eig = jacobi_hermitian(M, true);
        const Eigen::Index top = eig.values.size() - 1;
        const double lambda = eig.values(top);
        const double opt = arho * lambda;

        // Received SNR for transmit w_t and combiner w_r.
        auto snr = [&](const Eigen::VectorXcd &wt)
        {
            const Eigen::VectorXcd wr = llt.solve(HH * wt);
            const std::complex<double> num = wr.dot(HH * wt);
            const std::complex<double> den = wr.dot(K * wr);
            return std::norm(num) * arho / den.real();
        };

        BeamformerCheck out;
        const Eigen::VectorXcd wt = eig.vectors.col(top);
        out.residual = std::abs(snr(wt) - opt) / opt;

        NormalSource src(rng, 0xFFFFFFFFu);
        for (int r = 0; r < n_random; ++r)
        {
            Eigen::VectorXcd w(s.H1.cols());
            for (Eigen::Index i = 0; i < w.size(); ++i)
                w(i) = src.next();
            w.normalize();
            out.max_ratio = std::max(out.max_ratio, snr(w) / opt);
        }
        return out;
    }

    unsigned worker_count()
    {
        std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
        if (const std::size_t cap = env_threads())
            hw = std::min(hw, cap);
        return static_cast<unsigned>(hw);
    }

    std::vector<double> sample_max_eig(const SystemDims &dims, double a, std::size_t n, const RngSpec &rng)
    {
        if (!(a >= 0.0))
            throw DomainError("sample_max_eig: a must be non-negative");
        std::vector<double> out(n);
        for_chunks(n,
                   [&](std::size_t chunk, std::size_t begin, std::size_t end)
                   {
                       NormalSource src(rng, static_cast<std::uint32_t>(chunk));
                       for (std::size_t i = begin; i < end; ++i)
                           out[i] = max_eig(sample_channel(dims, src), a);
                   });
        return out;
    }

    double dkw_band(std::size_t n, double confidence)
    {
        if (n == 0)
            throw DomainError("dkw_band: no samples");
        if (!(confidence > 0.0 && confidence < 1.0))
            throw DomainError("dkw_band: confidence must lie in (0, 1)");
        return std::sqrt(std::log(2.0 / (1.0 - confidence)) / (2.0 * static_cast<double>(n)));
    }

    CdfEstimate empirical_cdf(std::vector<double> samples, const std::vector<double> &x_grid)
    {
        std::sort(samples.begin(), samples.end());
        CdfEstimate out;
        out.x = x_grid;
        out.n_samples = samples.size();
        out.band = dkw_band(samples.size());
        const double n = static_cast<double>(samples.size());
        for (double x : x_grid)
        {
            const auto it = std::upper_bound(samples.begin(), samples.end(), x);
            out.value.push_back(static_cast<double>(it - samples.begin()) / n);
        }
        return out;
    }

    CdfEstimate estimate_cdf(const SystemDims &dims, double a, const std::vector<double> &x_grid,
                             std::size_t n_samples, const RngSpec &rng)
    {
        if (n_samples < 1000)
            throw DomainError("estimate_cdf: needs at least 1000 samples");
        return empirical_cdf(sample_max_eig(dims, a, n_samples, rng), x_grid);
    }

    McEstimate estimate_metric_from(const std::vector<double> &lambda, const LinkBudget &budget, double a,
                                    const Metric &metric)
    {
        if (lambda.empty())
            throw DomainError("estimate_metric: no samples");
        const double arho = a * budget.rho;
        auto value = [&](double l) -> double
        {
            const double gamma = arho * l;
            if (const auto *o = std::get_if<OutageSpec>(&metric))
                return gamma < o->gamma_th ? 1.0 : 0.0;
            if (const auto *m = std::get_if<ModulationParams>(&metric))
                return m->a1 * gauss_q(std::sqrt(2.0 * m->a2 * gamma));
            return 0.5 * std::log2(1.0 + gamma);
        };
        if (const auto *o = std::get_if<OutageSpec>(&metric))
            o->validate();
        if (const auto *m = std::get_if<ModulationParams>(&metric))
            m->validate();

        // Ordered two-pass mean and variance.
        const double n = static_cast<double>(lambda.size());
        double sum = 0.0;
        for (double l : lambda)
            sum += value(l);
        const double mean = sum / n;
        double ss = 0.0;
        for (double l : lambda)
        {
            const double d = value(l) - mean;
            ss += d * d;
        }
        McEstimate out;
        out.value = mean;
        out.n_samples = lambda.size();
        if (std::holds_alternative<OutageSpec>(metric))
            out.std_error = std::sqrt(mean * (1.0 - mean) / n);
        else
            out.std_error = lambda.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
        return out;
    }

    McEstimate estimate_metric(const SystemDims &dims, const LinkBudget &budget, const Metric &metric,
                               std::size_t n_samples, const RngSpec &rng)
    {
        if (n_samples < 10000)
            throw DomainError("estimate_metric: needs at least 10^4 samples");
        const double a = budget.a(dims.nr);
        return estimate_metric_from(sample_max_eig(dims, a, n_samples, rng), budget, a, metric);
    }
} // namespace afmimo
