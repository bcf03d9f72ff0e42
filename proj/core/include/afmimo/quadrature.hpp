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

#include <array>
#include <cmath>
#include <queue>
#include <sstream>
#include <string>
#include <vector>

namespace afmimo
{
    struct QuadOptions
    {
        double rel_tol = 1e-10;
        double abs_tol = 0.0;
        double abs_floor = 1e-300;
        int max_intervals = 4000;
    };

    struct QuadResult
    {
        double value = 0.0;
        double abs_error = 0.0;
        int intervals = 0;
    };

    namespace detail
    {
        // Kronrod 15-point abscissae (x_k) with Kronrod and embedded Gauss 7 weights.
        inline constexpr std::array<double, 8> gk15_x = {
            0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
        inline constexpr std::array<double, 8> gk15_wk = {
            0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
        inline constexpr std::array<double, 4> gk15_wg = {
            0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
            0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

        struct Segment
        {
            double a, b, value, error;
            bool operator<(const Segment &o) const { return error < o.error; }
        };

        template <class F>
        Segment gk15(F &f, double a, double b)
        {
            const double c = 0.5 * (a + b), h = 0.5 * (b - a);
            const double fc = f(c);
            double rk = fc * gk15_wk[7], rg = fc * gk15_wg[3];
            for (int k = 0; k < 7; ++k)
            {
                const double dx = h * gk15_x[k];
                const double s = f(c - dx) + f(c + dx);
                rk += gk15_wk[k] * s;
                if (k % 2 == 1)
                    rg += gk15_wg[k / 2] * s;
            }
            return {a, b, rk * h, std::abs((rk - rg) * h)};
        }
    } // namespace detail

    // Globally adaptive Gauss-Kronrod 15/7 on [a, b]; the interval with the
    // largest error estimate is bisected until the total meets tolerance.
    template <class F>
    QuadResult integrate(F f, double a, double b, const QuadOptions &opt = {})
    {
        if (!(b > a))
            return {};
        std::priority_queue<detail::Segment> heap;
        auto first = detail::gk15(f, a, b);
        double value = first.value, error = first.error;
        heap.push(first);
        int n = 1;
        auto target = [&]
        { return std::max({opt.abs_floor, opt.abs_tol, opt.rel_tol * std::abs(value)}); };
        while (error > target())
        {
            if (n >= opt.max_intervals)
            {
                std::ostringstream msg;
                msg << "adaptive quadrature did not converge: error " << error << " on value " << value;
                throw ConvergenceError(msg.str());
            }
            auto seg = heap.top();
            heap.pop();
            const double mid = 0.5 * (seg.a + seg.b);
            if (!(mid > seg.a && mid < seg.b))
                break; // interval cannot be split further in double
            auto l = detail::gk15(f, seg.a, mid);
            auto r = detail::gk15(f, mid, seg.b);
            value += l.value + r.value - seg.value;
            error += l.error + r.error - seg.error;
            heap.push(l);
            heap.push(r);
            ++n;
            if (!std::isfinite(value))
                throw ConvergenceError("adaptive quadrature produced a non-finite value");
        }
        // Re-sum to shed the drift of the incremental updates.
        double v = 0.0, e = 0.0;
        while (!heap.empty())
        {
            v += heap.top().value;
            e += heap.top().error;
            heap.pop();
        }
        return {v, e, n};
    }

    // Integral over [a, inf) through t = a + s u / (1 - u), u in [0, 1).
    // s should be of the order of the integrand's decay length.
    template <class F>
    QuadResult integrate_to_inf(F f, double a, double s, const QuadOptions &opt = {})
    {
        auto g = [&](double u)
        {
            const double w = 1.0 - u;
            const double t = a + s * u / w;
            if (!std::isfinite(t))
                return 0.0;
            return f(t) * s / (w * w);
        };
        return integrate(g, 0.0, 1.0, opt);
    }

    // Sum over consecutive pieces [pts[i], pts[i+1]] followed by a tail to infinity.
    template <class F>
    QuadResult integrate_pieces_to_inf(F f, const std::vector<double> &pts, double tail_scale,
                                       const QuadOptions &opt = {})
    {
        QuadResult out;
        for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        {
            auto r = integrate(f, pts[i], pts[i + 1], opt);
            out.value += r.value;
            out.abs_error += r.abs_error;
            out.intervals += r.intervals;
        }
        auto r = integrate_to_inf(f, pts.back(), tail_scale, opt);
        out.value += r.value;
        out.abs_error += r.abs_error;
        out.intervals += r.intervals;
        return out;
    }
} // namespace afmimo
