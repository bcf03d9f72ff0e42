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
#include "afmimo/eigdist.hpp"

#include <string>

namespace afmimo
{
    // SER ~ E[a1 Q(sqrt(2 a2 gamma))]
    struct ModulationParams
    {
        double a1 = 1.0;
        double a2 = 1.0;
        std::string label = "bpsk";

        static ModulationParams bpsk() { return {1.0, 1.0, "bpsk"}; }
        void validate() const;
    };

    struct OutageSpec
    {
        double gamma_th = 1.0;
        void validate() const;
    };

    struct OstbcParams
    {
        double rate = 1.0;
        void validate() const;
    };

    struct HighSnrCapacity
    {
        double slope = 0.5;  // bits/s/Hz per 3 dB
        double offset = 0.0; // in log2 units of rho
    };

    // --- outage ---------------------------------------------------------

    double outage_exact(const SystemDims &dims, const LinkBudget &budget, const OutageSpec &spec);

    // Leading high-SNR term (rho -> inf at fixed k); needs n_s = 1 or q = 1.
    double outage_highsnr(const SystemDims &dims, const LinkBudget &budget, const OutageSpec &spec);

    // --- SER ------------------------------------------------------------

    // Primary route: a1 Q(.) integrated against the density.
    double ser_numeric(const SystemDims &dims, const LinkBudget &budget, const ModulationParams &mod);

    // Cross-check route through the cdf.
    double ser_numeric_cdf(const SystemDims &dims, const LinkBudget &budget, const ModulationParams &mod);

    double ser_closed_ns1(const SystemDims &dims, const LinkBudget &budget, const ModulationParams &mod);
    double ser_closed_q1(const SystemDims &dims, const LinkBudget &budget, const ModulationParams &mod);

    double ser_highsnr(const SystemDims &dims, const LinkBudget &budget, const ModulationParams &mod);

    // High-SNR OSTBC SER; q = 1 and p != n_s. a1 and a2 enter as for
    // beamforming, so BPSK reproduces the published expression.
    double ser_ostbc_highsnr(const SystemDims &dims, const LinkBudget &budget, const ModulationParams &mod,
                             const OstbcParams &ostbc);

    double bf_power_gain_db(int ns, double rate);

    double ser_large_antenna(const SystemDims &dims, const LinkBudget &budget, const ModulationParams &mod,
                             LargeLimit which);

    // Single-link optimal-beamforming references on the Wishart law:
    // S = E[a1 Q(sqrt(2 a2 rho_bar lambda))], I = E[log2(1 + rho_bar lambda)].
    double single_link_ser(int c1, int c2, double rho_bar, const ModulationParams &mod);
    double single_link_capacity(int c1, int c2, double rho_bar);

    // --- capacity -------------------------------------------------------

    double capacity_numeric(const SystemDims &dims, const LinkBudget &budget);
    double capacity_large_antenna(const SystemDims &dims, const LinkBudget &budget, LargeLimit which);
    double capacity_jensen(const SystemDims &dims, const LinkBudget &budget);
    double capacity_taylor(const SystemDims &dims, const LinkBudget &budget);
    HighSnrCapacity capacity_highsnr(const SystemDims &dims, double k);
} // namespace afmimo
