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
#include "detail/real.hpp"

#include <boost/math/constants/constants.hpp>

#include <vector>

namespace afmimo::detail
{
    // e^z K_0(z) and e^z K_1(z) for z > 0.
    // Power series up to z = 2, Steed's continued fraction (CF2) beyond.
    template <class Real>
    void bessel_k01_scaled(const Real &z, Real &k0, Real &k1)
    {
        using std::abs, std::exp, std::log, std::sqrt;
        const Real tol = eps<Real>();
        const int max_iter = 100000;

        if (z <= 2)
        {
            const Real t = z * z / 4;
            const Real lnh = log(z / 2);
            const Real g = boost::math::constants::euler<Real>();

            // k-th terms: t^k/(k!)^2 and t^k/(k!(k+1)!)
            Real u0 = 1, u1 = 1;
            Real i0 = 1, s0 = 0, i1 = 1, s1 = 0;
            Real harm = 0;     // H_k
            Real psi1 = -g;    // psi(k+1)
            Real psi2 = 1 - g; // psi(k+2)
            s1 = (psi1 + psi2) * u1;
            for (int k = 1; k < max_iter; ++k)
            {
                u0 *= t / (Real(k) * k);
                u1 *= t / (Real(k) * (k + 1));
                harm += Real(1) / k;
                psi1 += Real(1) / k;
                psi2 += Real(1) / (k + 1);
                i0 += u0;
                s0 += harm * u0;
                i1 += u1;
                s1 += (psi1 + psi2) * u1;
                if (u0 < tol * i0 && u1 < tol * i1 && harm * u0 < tol * abs(s0))
                    break;
            }
            const Real ez = exp(z);
            k0 = (-(lnh + g) * i0 + s0) * ez;
            const Real I1 = z / 2 * i1;
            k1 = (1 / z + lnh * I1 - z / 4 * s1) * ez;
            return;
        }

        const Real a1 = Real(1) / 4;
        Real b = 2 * (1 + z), d = 1 / b, h = d, delh = d;
        Real q1 = 0, q2 = 1, q = a1, c = a1, a = -a1;
        Real s = 1 + q * delh;
        int i = 1;
        for (; i < max_iter; ++i)
        {
            a -= 2 * i;
            c = -a * c / (i + 1);
            const Real qnew = (q1 - b * q2) / a;
            q1 = q2;
            q2 = qnew;
            q += c * qnew;
            b += 2;
            d = 1 / (b + a * d);
            delh = (b * d - 1) * delh;
            h += delh;
            const Real dels = q * delh;
            s += dels;
            if (abs(dels / s) < tol)
                break;
        }
        if (i == max_iter)
            throw ConvergenceError("Bessel K continued fraction did not converge");
        h = a1 * h;
        k0 = sqrt(boost::math::constants::pi<Real>() / (2 * z)) / s;
        k1 = k0 * (z + Real(0.5) - h) / z;
    }

    // out[v] = e^{2 sqrt x} x^{v/2} K_v(2 sqrt x) for v = 0..vmax, x > 0.
    // Uses S_{v+1} = v S_v + x S_{v-1}, which is the order recurrence of K
    // rewritten for the scaled argument; it is dominant and stable upward.
    template <class Real>
    std::vector<Real> scaled_bessel_s(const Real &x, int vmax)
    {
        using std::sqrt;
        const Real r = sqrt(x);
        Real k0, k1;
        bessel_k01_scaled(2 * r, k0, k1);
        std::vector<Real> out(static_cast<std::size_t>(vmax < 1 ? 2 : vmax + 1));
        out[0] = k0;
        out[1] = r * k1;
        for (int v = 1; v < vmax; ++v)
            out[v + 1] = v * out[v] + x * out[v - 1];
        return out;
    }
} // namespace afmimo::detail
