// SPDX-License-Identifier: Apache-2.0
//
// afmimo: performance analysis of beamforming over dual-hop AF MIMO links
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#pragma once

#include "afmimo/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace afmimo
{
    // Antenna counts at source, relay and destination plus the derived
    // index quantities used by the determinant formulas.
    struct SystemDims
    {
        int ns = 1, nr = 1, nd = 1;

        SystemDims() = default;
        SystemDims(int ns_, int nr_, int nd_) : ns(ns_), nr(nr_), nd(nd_)
        {
            if (ns < 1 || nr < 1 || nd < 1)
                throw DomainError("antenna counts must be positive");
        }

        int q() const { return std::min(nd, nr); }
        int p() const { return std::max(nd, nr); }
        int s() const { return std::min(ns, q()); }
        int t() const { return std::max(ns, q()); }
        int m() const { return std::min(ns, p()); }
        int n() const { return std::max(ns, p()); }

        // 1-based row i, column j
        int theta(int i, int j) const { return 2 * q() + p() - i - j - s(); }
        int tau(int i, int j) const { return s() + i + j - q() - 2; }

        std::string str() const
        {
            return "(" + std::to_string(ns) + "," + std::to_string(nr) + "," + std::to_string(nd) + ")";
        }

        bool operator==(const SystemDims &) const = default;
    };

    // Transmit SNR rho (linear), relay gain ratio k with alpha = k rho.
    struct LinkBudget
    {
        double rho = 1.0;
        double k = 1.0;

        LinkBudget() = default;
        LinkBudget(double rho_, double k_) : rho(rho_), k(k_)
        {
            if (!(rho > 0.0) || !(k > 0.0))
                throw DomainError("link budget: rho and k must be positive");
        }

        static LinkBudget from_db(double snr_db, double k_) { return {std::pow(10.0, snr_db / 10.0), k_}; }

        double alpha() const { return k * rho; }

        // Fixed-gain constant a = alpha / (n_r (1 + rho)).
        double a(int nr) const { return k * rho / (nr * (1.0 + rho)); }

        // Limit of a as rho grows at fixed k.
        double a_limit(int nr) const { return k / nr; }
    };
} // namespace afmimo
