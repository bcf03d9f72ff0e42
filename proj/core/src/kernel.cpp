// SPDX-License-Identifier: Apache-2.0
//
// afmimo: performance analysis of beamforming over dual-hop AF MIMO links
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#include "kernel.hpp"

#include "afmimo/eigdist.hpp"

#include <algorithm>
#include <cmath>

namespace afmimo
{
    namespace
    {
        void check_args(const SystemDims &dims, double a, double x)
        {
            if (!(a >= 0.0))
                throw DomainError("fixed-gain constant a must be non-negative");
            if (!(x >= 0.0))
                throw DomainError("eigenvalue argument must be non-negative");
            if (dims.q() > 8 || dims.p() > 16 || dims.ns > 16)
                throw PrecisionError("antenna configuration " + dims.str() +
                                     " is outside the determinant precision envelope");
        }

        KernelMatrix pack(detail::MagMatrix<double> m)
        {
            KernelMatrix out;
            out.order = m.n;
            std::vector<int> row_exp;
            // Only the equilibration side effect is wanted here.
            auto scaled = m;
            detail::det_with_error(scaled, &row_exp);
            out.row_log2_scales = row_exp;
            out.entries.resize(m.v.size());
            for (int i = 0; i < m.n; ++i)
                for (int j = 0; j < m.n; ++j)
                    out.entries[static_cast<std::size_t>(i * m.n + j)] =
                        std::ldexp(m.at(i, j), -row_exp[static_cast<std::size_t>(i)]);
            return out;
        }
    } // namespace

    double KernelMatrix::true_entry(int i, int j) const
    {
        return std::ldexp(at(i, j), row_log2_scales[static_cast<std::size_t>(i)]);
    }

    double phi_entry(const SystemDims &dims, double a, double x, int i, int j)
    {
        check_args(dims, a, x);
        const int q = dims.q();
        if (i < 1 || i > q || j < 1 || j > q)
            throw DomainError("phi_entry: index out of range for order " + std::to_string(q));
        detail::KernelContext<double> c(dims, a, x);
        detail::MagMatrix<double> m(q);
        detail::cdf_row(c, i, m);
        return m.at(i - 1, j - 1);
    }

    KernelMatrix kernel_matrix(const SystemDims &dims, double a, double x)
    {
        check_args(dims, a, x);
        detail::KernelContext<double> c(dims, a, x);
        detail::MagMatrix<double> m(dims.q());
        for (int i = 1; i <= dims.q(); ++i)
            detail::cdf_row(c, i, m);
        return pack(std::move(m));
    }

    KernelMatrix kernel_derivative_matrix(const SystemDims &dims, double a, double x, int l)
    {
        check_args(dims, a, x);
        const int q = dims.q(), s = dims.s();
        if (l <= q - s || l > q)
            throw DomainError("kernel_derivative_matrix: row must lie in (q - s, q]");
        if (!(x > 0.0))
            throw DomainError("kernel_derivative_matrix: x must be positive");
        detail::KernelContext<double> c(dims, a, x);
        detail::MagMatrix<double> m(q);
        for (int i = 1; i <= q; ++i)
            detail::cdf_row(c, i, m);
        detail::derivative_row(c, l, m);
        return pack(std::move(m));
    }

    MaxEigDistribution::MaxEigDistribution(const SystemDims &dims, double a)
        : dims_(dims), a_(a), norm_log_(detail::log_norm<double>(dims)), sign_(detail::cdf_sign(dims))
    {
        check_args(dims, a, 0.0);
    }

    double MaxEigDistribution::cdf(double x) const
    {
        check_args(dims_, a_, x);
        if (x == 0.0)
            return 0.0;
        if (std::isinf(x))
            return 1.0;
        auto r = detail::escalate([&]<class Real>()
                                  { return detail::general_cdf<Real>(dims_, Real(a_), Real(x)); },
                                  "cdf", rel_target_);
        return detail::clamp_probability(r);
    }

    double MaxEigDistribution::pdf(double x) const
    {
        check_args(dims_, a_, x);
        if (!(x > 0.0))
            throw DomainError("pdf: x must be positive");
        if (std::isinf(x))
            return 0.0;
        auto r = detail::escalate([&]<class Real>()
                                  { return detail::general_pdf<Real>(dims_, Real(a_), Real(x)); },
                                  "pdf", rel_target_);
        return detail::clamp_density(r);
    }

    MaxEigDistribution &MaxEigDistribution::set_rel_target(double r)
    {
        if (!(r > 0.0 && r < 1.0))
            throw DomainError("rel_target must lie in (0, 1)");
        rel_target_ = r;
        return *this;
    }

    double MaxEigDistribution::upper_quantile_bound(double tol) const
    {
        // 1 - F cannot be resolved below the evaluation target.
        const double floor_tol = std::max(tol, 16.0 * rel_target_);
        double x = 1.0;
        for (int it = 0; it < 80; ++it)
        {
            if (1.0 - cdf(x) <= floor_tol)
                return x;
            x *= 2.0;
        }
        throw ConvergenceError("upper_quantile_bound: cdf does not approach one");
    }

    double cdf_exact(const MaxEigDistribution &dist, double x) { return dist.cdf(x); }
    double pdf_exact(const MaxEigDistribution &dist, double x) { return dist.pdf(x); }
} // namespace afmimo
