// SPDX-License-Identifier: Apache-2.0
//
// afmimo: performance analysis of beamforming over dual-hop AF MIMO links
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#pragma once

#include <afmimo/dims.hpp>
#include <afmimo/eigdist.hpp>
#include <afmimo/metrics.hpp>
#include <afmimo/montecarlo.hpp>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace afmimo::cli
{
    // Bad flags or a flavor whose preconditions the dims violate. Exit 2.
    class RequestError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    enum class MetricKind
    {
        outage,
        ser,
        capacity,
        cdf
    };

    enum class Flavor
    {
        exact,
        closed,
        highsnr,
        large_antenna,
        jensen,
        taylor,
        montecarlo,
        ostbc_highsnr
    };

    struct SnrGrid
    {
        double lo = 0.0, hi = 30.0, step = 5.0;
        std::vector<double> points() const;
    };

    struct SweepRequest
    {
        SystemDims dims{2, 2, 2};
        double k = 1.0;
        SnrGrid snr;
        MetricKind metric = MetricKind::outage;
        std::vector<Flavor> flavors{Flavor::exact};
        OutageSpec outage{1.0};
        ModulationParams mod = ModulationParams::bpsk();
        OstbcParams ostbc{1.0};
        std::optional<LargeLimit> large_limit;
        RngSpec rng{};
        std::size_t samples = 100000;
        // cdf metric only: fixed a (else derived from k at the first SNR point) and x grid.
        std::optional<double> a;
        std::vector<double> x_grid;

        // Throws RequestError naming the violated precondition.
        void validate() const;
        double cdf_a() const;
    };

    SystemDims parse_dims(const std::string &s);
    SnrGrid parse_snr(const std::string &s);
    MetricKind parse_metric(const std::string &s);
    std::vector<Flavor> parse_flavors(const std::string &s);
    ModulationParams parse_mod(const std::string &s);
    std::vector<double> parse_x_grid(const std::string &s);

    std::string to_string(MetricKind m);
    std::string to_string(Flavor f);
} // namespace afmimo::cli
