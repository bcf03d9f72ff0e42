// SPDX-License-Identifier: Apache-2.0
//
// afmimo: performance analysis of beamforming over dual-hop AF MIMO links
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#pragma once

#include "afmimo/dims.hpp"
#include "afmimo/metrics.hpp"

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

namespace afmimo
{
    // Philox4x32-10 counter-based generator.
    namespace philox
    {
        using Counter = std::array<std::uint32_t, 4>;
        using Key = std::array<std::uint32_t, 2>;

        Counter block(Counter ctr, Key key);
    } // namespace philox

    struct RngSpec
    {
        std::uint64_t seed = 20100519;
        std::uint32_t stream = 0;
    };

    // Sequential CN(0, 1) draws for one (seed, stream, chunk) substream.
    // Counter words: {block lo, block hi, chunk, stream}; key: the seed.
    class NormalSource
    {
    public:
        explicit NormalSource(const RngSpec &rng, std::uint32_t chunk = 0);

        std::complex<double> next();
        double uniform(); // in (0, 1)

    private:
        philox::Key key_;
        philox::Counter ctr_;
        std::uint64_t block_ = 0;
    };

    struct ChannelSample
    {
        Eigen::MatrixXcd H1; // n_r x n_s
        Eigen::MatrixXcd H2; // n_d x n_r
    };

    ChannelSample sample_channel(const SystemDims &dims, const RngSpec &rng);
    ChannelSample sample_channel(const SystemDims &dims, NormalSource &src);

    // Cyclic Jacobi for a Hermitian matrix. Eigenvalues ascending; the
    // columns of vectors (if requested) are the matching eigenvectors.
    struct HermitianEigen
    {
        Eigen::VectorXd values;
        Eigen::MatrixXcd vectors;
    };
    HermitianEigen jacobi_hermitian(const Eigen::MatrixXcd &A, bool want_vectors = false);

    // Largest eigenvalue of H1^H H2^H (a H2 H2^H + I)^{-1} H2 H1.
    double max_eig(const ChannelSample &sample, double a);

    struct BeamformerCheck
    {
        double residual = 0.0;  // |SNR(w_t, w_r) - a rho lambda| / (a rho lambda)
        double max_ratio = 0.0; // max over random w_t of SNR / (a rho lambda)
    };
    BeamformerCheck beamformer_consistency(const ChannelSample &sample, const LinkBudget &budget,
                                           const RngSpec &rng = {}, int n_random = 100);

    // Worker count: hardware concurrency, capped by AFMIMO_THREADS.
    unsigned worker_count();

    // n draws of lambda_max in draw order; independent of worker count.
    std::vector<double> sample_max_eig(const SystemDims &dims, double a, std::size_t n, const RngSpec &rng);

    struct CdfEstimate
    {
        std::vector<double> x;
        std::vector<double> value;
        double band = 0.0; // 99% DKW half-width
        std::size_t n_samples = 0;
    };
    CdfEstimate estimate_cdf(const SystemDims &dims, double a, const std::vector<double> &x_grid,
                             std::size_t n_samples, const RngSpec &rng);
    CdfEstimate empirical_cdf(std::vector<double> samples, const std::vector<double> &x_grid);
    double dkw_band(std::size_t n, double confidence = 0.99);

    struct McEstimate
    {
        double value = 0.0;
        double std_error = 0.0;
        std::size_t n_samples = 0;
    };

    struct CapacityMetric
    {
    };
    using Metric = std::variant<OutageSpec, ModulationParams, CapacityMetric>;

    McEstimate estimate_metric(const SystemDims &dims, const LinkBudget &budget, const Metric &metric,
                               std::size_t n_samples, const RngSpec &rng);
    McEstimate estimate_metric_from(const std::vector<double> &lambda, const LinkBudget &budget, double a,
                                    const Metric &metric);
} // namespace afmimo
