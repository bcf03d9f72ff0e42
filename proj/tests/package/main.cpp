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

#include <cmath>
#include <cstdio>

int main()
{
    const double f = afmimo::cdf_exact(afmimo::MaxEigDistribution({2, 2, 2}, 0.1), 200.0);
    const double c = afmimo::capacity_numeric({2, 2, 2}, afmimo::LinkBudget::from_db(10.0, 1.0));
    std::printf("cdf %.9f capacity %.6f\n", f, c);
    return std::abs(f - 1.0) < 1e-6 && c > 0.0 ? 0 : 1;
}
