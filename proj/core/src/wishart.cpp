// SPDX-License-Identifier: Apache-2.0
//
// afmimo: performance analysis of beamforming over dual-hop AF MIMO links
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

// Largest eigenvalue of a central uncorrelated complex Wishart matrix:
//   F(x) = det[gamma(t - s + i + j - 1, x)] / det[Gamma(t - s + i + j - 1)]

#include "afmimo/eigdist.hpp"

#include "kernel.hpp"

#include <cmath>

namespace afmimo
{
    namespace
    {
        using detail::Estimate;

        // gamma(n, x) and the magnitude of the terms that built it.
        template <class Real>
        std::pair<Real, Real> lower_gamma(int n, const Real &x, const std::vector<Real> &fact)
        {
            using std::exp, std::log, std::abs;
            const Real gn = fact[static_cast<std::size_t>(n - 1)];
            if (x < n + 10)
            {
                Real term = Real(1) / n, sum = term;
                for (int k = 1; k < 100000; ++k)
                {
                    term *= x / (n + k);
                    sum += term;
                    if (term < detail::eps<Real>() * sum)
                        break;
                }
                const Real v = exp(n * log(x) - x) * sum;
                return {v, v};
            }
            Real term = 1, sum = 1;
            for (int k = 1; k < n; ++k)
            {
                term *= x / k;
                sum += term;
            }
            const Real upper = gn * exp(-x) * sum;
            return {gn - upper, gn};
        }

        template <class Real>
        Estimate<Real> wishart_t(int s, int t, const Real &x)
        {
            const auto fact = detail::factorials<Real>(2 * (s + t) + 2);
            detail::MagMatrix<Real> num(s), den(s);
            for (int i = 1; i <= s; ++i)
                for (int j = 1; j <= s; ++j)
                {
                    const int n = t - s + i + j - 1;
                    auto [v, mag] = lower_gamma<Real>(n, x, fact);
                    num.at(i - 1, j - 1) = v;
                    num.mag_at(i - 1, j - 1) = mag;
                    den.at(i - 1, j - 1) = fact[static_cast<std::size_t>(n - 1)];
                    den.mag_at(i - 1, j - 1) = fact[static_cast<std::size_t>(n - 1)];
                }
            auto [dn, en] = detail::det_with_error(std::move(num));
            auto [dd, ed] = detail::det_with_error(std::move(den));
            const Real ratio = dn.mant / dd.mant;
            detail::Scaled<Real> v{ratio, dn.exp2 - dd.exp2};
            detail::Scaled<Real> e{en.mant / dd.mant, en.exp2 - dd.exp2};
            return {v.to(), e.to()};
        }
    } // namespace

    double wishart_maxeig_cdf(int c1, int c2, double x)
    {
        if (c1 < 1 || c2 < 1)
            throw DomainError("wishart_maxeig_cdf: antenna counts must be positive");
        if (!(x >= 0.0))
            throw DomainError("wishart_maxeig_cdf: x must be non-negative");
        const int s = std::min(c1, c2), t = std::max(c1, c2);
        if (s > 8 || t > 128)
            throw PrecisionError("wishart_maxeig_cdf: dimensions outside the precision envelope");
        if (x == 0.0)
            return 0.0;
        if (std::isinf(x))
            return 1.0;
        auto r = detail::escalate([&]<class Real>() { return wishart_t<Real>(s, t, Real(x)); },
                                  "wishart_maxeig_cdf");
        return detail::clamp_probability(r);
    }
} // namespace afmimo
