// SPDX-License-Identifier: Apache-2.0
//
// afmimo: performance analysis of beamforming over dual-hop AF MIMO links
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/float128.hpp>

#include <cmath>
#include <limits>
#include <vector>

namespace afmimo::detail
{
    using quad = boost::multiprecision::float128;
    // 100 decimal digits; reached only in far distribution tails.
    using wide = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<100>,
                                               boost::multiprecision::et_off>;

    template <class Real>
    inline Real eps()
    {
        return std::numeric_limits<Real>::epsilon();
    }

    template <class Real>
    inline double to_double(const Real &v)
    {
        return static_cast<double>(v);
    }

    // n! for n = 0..nmax, exact as long as the type allows.
    template <class Real>
    std::vector<Real> factorials(int nmax)
    {
        std::vector<Real> f(static_cast<std::size_t>(nmax) + 1);
        f[0] = 1;
        for (int n = 1; n <= nmax; ++n)
            f[n] = f[n - 1] * n;
        return f;
    }

    // Pascal triangle rows 0..nmax.
    template <class Real>
    std::vector<std::vector<Real>> binomials(int nmax)
    {
        std::vector<std::vector<Real>> c(static_cast<std::size_t>(nmax) + 1);
        for (int n = 0; n <= nmax; ++n)
        {
            c[n].assign(static_cast<std::size_t>(n) + 1, Real(1));
            for (int k = 1; k < n; ++k)
                c[n][k] = c[n - 1][k - 1] + c[n - 1][k];
        }
        return c;
    }

    // Value with an absolute rounding-error estimate.
    template <class Real>
    struct Estimate
    {
        Real value = 0;
        Real error = 0;
    };
} // namespace afmimo::detail
