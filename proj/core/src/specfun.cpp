// SPDX-License-Identifier: Apache-2.0
//
// afmimo: performance analysis of beamforming over dual-hop AF MIMO links
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#include "afmimo/specfun.hpp"

#include "afmimo/error.hpp"
#include "afmimo/quadrature.hpp"
#include "detail/bessel.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace afmimo
{
    void FnAccuracy::validate() const
    {
        if (!(rel_tol > 0.0 && rel_tol <= 1e-6))
            throw DomainError("FnAccuracy: rel_tol must lie in (0, 1e-6]");
        if (max_terms < 50)
            throw DomainError("FnAccuracy: max_terms must be at least 50");
    }

    double ln_gamma(double x)
    {
        if (!(x > 0.0))
            throw DomainError("ln_gamma: argument must be positive");
        return std::lgamma(x);
    }

    double lower_inc_gamma_int(int n, double x)
    {
        if (n < 1)
            throw DomainError("lower_inc_gamma_int: order must be >= 1");
        if (!(x >= 0.0))
            throw DomainError("lower_inc_gamma_int: argument must be non-negative");
        if (x == 0.0)
            return 0.0;
        const double gn = std::tgamma(static_cast<double>(n));
        if (x < n + 1.0)
        {
            // gamma(n, x) = x^n e^{-x} sum_k x^k / (n (n+1) ... (n+k))
            double term = 1.0 / n, sum = term;
            for (int k = 1; k < 10000; ++k)
            {
                term *= x / (n + k);
                sum += term;
                if (term < 1e-17 * sum)
                    break;
            }
            return std::exp(n * std::log(x) - x) * sum;
        }
        return gn * (1.0 - upper_inc_gamma_q_int(n, x));
    }

    double upper_inc_gamma_q_int(int n, double x)
    {
        if (n < 1)
            throw DomainError("upper_inc_gamma_q_int: order must be >= 1");
        if (!(x >= 0.0))
            throw DomainError("upper_inc_gamma_q_int: argument must be non-negative");
        if (x < n + 1.0)
            return 1.0 - lower_inc_gamma_int(n, x) / std::tgamma(static_cast<double>(n));
        // e^{-x} sum_{k<n} x^k / k!
        double term = 1.0, sum = 1.0;
        for (int k = 1; k < n; ++k)
        {
            term *= x / k;
            sum += term;
        }
        return std::exp(-x) * sum;
    }

    namespace
    {
        double bessel_k_scaled_impl(int v, double x)
        {
            double k0, k1;
            detail::bessel_k01_scaled(x, k0, k1);
            if (v == 0)
                return k0;
            double km = k0, kv = k1;
            for (int n = 1; n < v; ++n)
            {
                const double kp = km + (2.0 * n / x) * kv;
                km = kv;
                kv = kp;
            }
            return kv;
        }
    } // namespace

    double bessel_k_int_scaled(int v, double x)
    {
        if (!(x > 0.0))
            throw DomainError("bessel_k: argument must be positive");
        const double r = bessel_k_scaled_impl(v < 0 ? -v : v, x);
        if (!std::isfinite(r))
            throw OverflowError("bessel_k: result exceeds double range for order " + std::to_string(v));
        return r;
    }

    double bessel_k_int(int v, double x)
    {
        if (!(x > 0.0))
            throw DomainError("bessel_k: argument must be positive");
        const int n = v < 0 ? -v : v;
        const double s = bessel_k_scaled_impl(n, x);
        if (!std::isfinite(s))
            throw OverflowError("bessel_k: result exceeds double range for order " + std::to_string(v));
        // Undo the scaling in log space so that large x underflows cleanly.
        if (x > 600.0)
            return std::exp(std::log(s) - x);
        const double r = s * std::exp(-x);
        if (!std::isfinite(r))
            throw OverflowError("bessel_k: result exceeds double range for order " + std::to_string(v));
        return r;
    }

    double hyp_u(double a, double b, double z, const FnAccuracy &acc)
    {
        if (!(a > 0.0))
            throw DomainError("hyp_u: a must be positive");
        if (!(z > 0.0))
            throw DomainError("hyp_u: z must be positive");
        acc.validate();

        QuadOptions opt;
        opt.rel_tol = acc.rel_tol;
        opt.max_intervals = 20 * acc.max_terms;

        // [0, 1] with t = w^{1/a}, which absorbs the t^{a-1} endpoint behaviour.
        const double ia = 1.0 / a;
        auto near = [&](double w)
        {
            const double t = std::pow(w, ia);
            return std::exp(-z * t) * std::pow(1.0 + t, b - a - 1.0) * ia;
        };
        auto far = [&](double t)
        { return std::exp(-z * t + (a - 1.0) * std::log(t) + (b - a - 1.0) * std::log1p(t)); };

        // Tail scale: the mode of t^{b-2} e^{-z t}, or the exponential length.
        const double scale = std::max(1.0, std::max(b - 2.0, 1.0) / z);
        const auto r0 = integrate(near, 0.0, 1.0, opt);
        const auto r1 = integrate_to_inf(far, 1.0, scale, opt);
        const double val = (r0.value + r1.value) * std::exp(-std::lgamma(a));
        if (!std::isfinite(val))
            throw OverflowError("hyp_u: result exceeds double range");
        return val;
    }

    namespace
    {
        // e^x E_n(x) by the modified Lentz continued fraction, x > 0.
        double expint_cf_scaled(int n, double x)
        {
            const double tiny = 1e-300;
            double b = x + n, c = 1.0 / tiny, d = 1.0 / b, h = d;
            for (int i = 1; i < 100000; ++i)
            {
                const double an = -static_cast<double>(i) * (n - 1 + i);
                b += 2.0;
                d = 1.0 / (an * d + b);
                c = b + an / c;
                const double del = c * d;
                h *= del;
                if (std::abs(del - 1.0) < 1e-16)
                    return h;
            }
            throw ConvergenceError("expint: continued fraction did not converge");
        }

        double expint1_series(double x)
        {
            double sum = 0.0, term = 1.0;
            for (int k = 1; k < 1000; ++k)
            {
                term *= -x / k;
                const double add = term / k;
                sum += add;
                if (std::abs(add) < 1e-17 * std::abs(sum))
                    break;
            }
            return -euler_gamma - std::log(x) - sum;
        }
    } // namespace

    double expint_n(int n, double x)
    {
        if (n < 1)
            throw DomainError("expint_n: order must be >= 1");
        if (!(x > 0.0))
            throw DomainError("expint_n: argument must be positive");
        if (x > 1.0)
            return expint_cf_scaled(n, x) * std::exp(-x);
        // Upward recurrence is well conditioned for x <= 1.
        double e = expint1_series(x);
        const double emx = std::exp(-x);
        for (int k = 1; k < n; ++k)
            e = (emx - x * e) / k;
        return e;
    }

    double expint_n_scaled(int n, double x)
    {
        if (n < 1)
            throw DomainError("expint_n: order must be >= 1");
        if (!(x > 0.0))
            throw DomainError("expint_n: argument must be positive");
        if (x > 1.0)
            return expint_cf_scaled(n, x);
        return expint_n(n, x) * std::exp(x);
    }

    double digamma_int(int n)
    {
        if (n < 1)
            throw DomainError("digamma_int: argument must be >= 1");
        double h = 0.0;
        for (int k = 1; k < n; ++k)
            h += 1.0 / k;
        return h - euler_gamma;
    }

    double gauss_q(double x)
    {
        return 0.5 * std::erfc(x / std::sqrt(2.0));
    }

    double bessel_laplace_closed(double mu, int v, double beta, double m_rate)
    {
        const double av = std::abs(static_cast<double>(v));
        const double c = mu - av / 2.0 + 1.0;
        if (!(c > 0.0) || !(beta > 0.0) || !(m_rate > 0.0))
            throw DomainError("integral identity: parameters outside the convergence region");
        const double lg = std::lgamma(mu + av / 2.0 + 1.0) + std::lgamma(c) - (av / 2.0) * std::log(beta) -
                          c * std::log(m_rate);
        FnAccuracy acc;
        acc.rel_tol = 1e-13;
        return 0.5 * std::exp(lg) * hyp_u(c, 1.0 - av, beta / m_rate, acc);
    }

    double verify_integral_identity(double mu, int v, double beta, double m_rate)
    {
        const double rhs = bessel_laplace_closed(mu, v, beta, m_rate);
        const double av = std::abs(static_cast<double>(v));
        const double c = mu - av / 2.0 + 1.0;

        QuadOptions opt;
        opt.rel_tol = 1e-13;

        // Near zero the integrand behaves like x^{c-1}; x = w^{1/c} flattens it.
        auto near = [&](double w)
        {
            const double x = std::pow(w, 1.0 / c);
            const double kv = bessel_k_int(v, 2.0 * std::sqrt(beta * x));
            return std::pow(x, mu) * std::exp(-m_rate * x) * kv * x / (c * w);
        };
        auto far = [&](double x)
        {
            const double arg = 2.0 * std::sqrt(beta * x);
            const double ks = bessel_k_int_scaled(v, arg);
            return std::exp(mu * std::log(x) - m_rate * x - arg) * ks;
        };
        const double tail_scale = std::max(1.0, 1.0 / m_rate);
        const double lhs = integrate(near, 0.0, 1.0, opt).value + integrate_to_inf(far, 1.0, tail_scale, opt).value;
        return std::abs(lhs - rhs) / std::abs(rhs);
    }
} // namespace afmimo
