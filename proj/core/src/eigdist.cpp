// SPDX-License-Identifier: Apache-2.0
//
// afmimo: performance analysis of beamforming over dual-hop AF MIMO links
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#include "afmimo/eigdist.hpp"

#include "afmimo/quadrature.hpp"
#include "afmimo/specfun.hpp"
#include "kernel.hpp"

#include <cmath>
#include <sstream>

namespace afmimo
{
    namespace
    {
        using detail::Estimate;
        using detail::KernelContext;

        void require_ns1(const SystemDims &d, const char *what)
        {
            if (d.ns != 1)
                throw DimensionError(std::string(what) + " requires n_s = 1, got " + d.str());
        }

        void require_q1(const SystemDims &d, const char *what)
        {
            if (d.q() != 1)
                throw DimensionError(std::string(what) + " requires min(n_r, n_d) = 1, got " + d.str());
        }

        void require_a(double a, bool positive)
        {
            if (positive ? !(a > 0.0) : !(a >= 0.0))
                throw DomainError(positive ? "fixed-gain constant a must be positive"
                                           : "fixed-gain constant a must be non-negative");
        }

        // Cofactors D_j of the (q, j) position, from (q-1) x (q-1) minors.
        template <class Real>
        std::vector<Estimate<Real>> cofactors(const KernelContext<Real> &c)
        {
            const int q = c.dims.q(), p = c.dims.p();
            std::vector<Estimate<Real>> out(static_cast<std::size_t>(q));
            if (q == 1)
            {
                out[0] = {Real(1), Real(0)};
                return out;
            }
            for (int jc = 1; jc <= q; ++jc)
            {
                detail::MagMatrix<Real> minor(q - 1);
                for (int i = 1; i <= q - 1; ++i)
                {
                    int col = 0;
                    for (int j = 1; j <= q; ++j)
                    {
                        if (j == jc)
                            continue;
                        const int n = q - i + j - 1;
                        Real v = 0;
                        for (int l = 0; l <= n; ++l)
                            v += c.binom[n][l] * c.apow[l] * c.gamma_int(p + l + i - j);
                        minor.mag_at(i - 1, col) = v;
                        minor.at(i - 1, col) = (q - 1 - i) % 2 == 0 ? v : -v;
                        ++col;
                    }
                }
                auto [det, err] = detail::det_with_error(std::move(minor));
                const Real sgn = (q + jc) % 2 == 0 ? Real(1) : Real(-1);
                out[static_cast<std::size_t>(jc - 1)] = {sgn * det.to(), err.to()};
            }
            return out;
        }

        template <class Real>
        Real inv_norm(const SystemDims &d)
        {
            using std::exp;
            return exp(-detail::log_norm<Real>(d));
        }

        template <class Real>
        Estimate<Real> ns1_cdf_t(const SystemDims &d, const Real &a, const Real &x)
        {
            using std::abs;
            KernelContext<Real> c(d, a, x);
            const auto D = cofactors(c);
            const int q = d.q(), p = d.p();
            Real sum = 0, mag = 0;
            for (int j = 1; j <= q; ++j)
            {
                Real inner = 0, inner_mag = 0;
                for (int l = 0; l <= j - 1; ++l)
                {
                    const int eta = p + q + l - j;
                    const Real w = c.binom[j - 1][l] * c.apow[l];
                    const Real g = c.gamma_int(eta);
                    const Real b = 2 * c.damp * c.T(0, eta);
                    inner += w * (g - b);
                    inner_mag += w * (g + b);
                }
                const auto &dj = D[static_cast<std::size_t>(j - 1)];
                sum += dj.value * inner;
                mag += abs(dj.value) * inner_mag + dj.error * inner_mag;
            }
            const Real sgn = (q - 1) % 2 == 0 ? Real(1) : Real(-1);
            const Real in = inv_norm<Real>(d);
            return {sgn * sum * in, Real(16) * q * detail::eps<Real>() * mag * in};
        }

        template <class Real>
        Estimate<Real> ns1_pdf_t(const SystemDims &d, const Real &a, const Real &x)
        {
            using std::abs;
            KernelContext<Real> c(d, a, x);
            const auto D = cofactors(c);
            const int q = d.q(), p = d.p();
            Real sum = 0, mag = 0;
            for (int j = 1; j <= q; ++j)
            {
                Real inner = 0;
                for (int l = 0; l <= j - 1; ++l)
                {
                    const int eta = p + q + l - j;
                    inner += c.binom[j - 1][l] * c.apow[l] * (a * c.T(0, eta) + c.T(0, eta - 1));
                }
                const auto &dj = D[static_cast<std::size_t>(j - 1)];
                sum += dj.value * inner;
                mag += (abs(dj.value) + dj.error) * inner;
            }
            const Real sgn = (q - 1) % 2 == 0 ? Real(1) : Real(-1);
            const Real f = 2 * c.damp * inv_norm<Real>(d);
            return {sgn * sum * f, Real(16) * q * detail::eps<Real>() * mag * f};
        }

        template <class Real>
        Estimate<Real> q1_cdf_t(const SystemDims &d, const Real &a, const Real &x)
        {
            KernelContext<Real> c(d, a, x);
            const int p = d.p();
            Real sum = 0;
            for (int k = 0; k < d.ns; ++k)
            {
                Real inner = 0;
                for (int l = 0; l <= k; ++l)
                    inner += c.binom[k][l] * c.apow[l] * c.T(k, p + l - k);
                sum += inner / c.fact[k];
            }
            sum *= 2 * c.damp / c.gamma_int(p);
            return {1 - sum, Real(16) * d.ns * detail::eps<Real>() * (1 + sum)};
        }

        template <class Real>
        Estimate<Real> q1_pdf_t(const SystemDims &d, const Real &a, const Real &x)
        {
            KernelContext<Real> c(d, a, x);
            const int p = d.p();
            Real sum = 0, mag = 0;
            for (int k = 0; k < d.ns; ++k)
            {
                Real inner = 0, inner_mag = 0;
                for (int l = 0; l <= k; ++l)
                {
                    const Real w = c.binom[k][l] * c.apow[k - l];
                    const Real up = a * c.T(k, p - l) + c.T(k, p - l - 1);
                    const Real dn = k > 0 ? Real(k) * c.T(k - 1, p - l) : Real(0);
                    inner += w * (up - dn);
                    inner_mag += w * (up + dn);
                }
                sum += inner / c.fact[k];
                mag += inner_mag / c.fact[k];
            }
            const Real f = 2 * c.damp / c.gamma_int(p);
            return {sum * f, Real(16) * d.ns * detail::eps<Real>() * mag * f};
        }

        template <class Real>
        Estimate<Real> q1_pdf_single_t(const SystemDims &d, const Real &a, const Real &x)
        {
            KernelContext<Real> c(d, a, x);
            const int p = d.p(), ns = d.ns;
            Real sum = 0;
            for (int i = 0; i <= ns; ++i)
                sum += c.binom[ns][i] * c.apow[i] * c.T(ns - 1, p - ns + i);
            const Real f = 2 * c.damp / (c.gamma_int(p) * c.gamma_int(ns));
            return {sum * f, Real(8) * detail::eps<Real>() * sum * f};
        }

        template <class Real>
        Estimate<Real> psi_det_t(const SystemDims &d, const Real &a)
        {
            KernelContext<Real> c(d, a, Real(0));
            const int q = d.q(), p = d.p();
            detail::MagMatrix<Real> m(q);
            for (int i = 1; i <= q; ++i)
                for (int j = 1; j <= q; ++j)
                {
                    const int n = 2 * q - i - j + 1;
                    Real v = 0;
                    for (int k = 0; k <= n; ++k)
                        v += c.binom[n][k] * c.apow[k] * c.gamma_int(p - q + k + i + j - 2);
                    m.at(i - 1, j - 1) = v;
                    m.mag_at(i - 1, j - 1) = v;
                }
            auto [det, err] = detail::det_with_error(std::move(m));
            // divide by Gamma(q) * norm
            const Real scale = inv_norm<Real>(d) / c.gamma_int(q);
            return {det.to() * scale, err.to() * scale};
        }

        void check_x(double x)
        {
            if (!(x >= 0.0))
                throw DomainError("eigenvalue argument must be non-negative");
        }
    } // namespace

    std::vector<double> ns1_cofactors(const SystemDims &dims, double a)
    {
        require_ns1(dims, "ns1_cofactors");
        require_a(a, false);
        KernelContext<double> c(dims, a, 0.0);
        std::vector<double> out;
        for (const auto &e : cofactors(c))
            out.push_back(e.value);
        return out;
    }

    double cdf_ns1(const SystemDims &dims, double a, double x)
    {
        require_ns1(dims, "cdf_ns1");
        require_a(a, false);
        check_x(x);
        if (x == 0.0)
            return 0.0;
        auto r = detail::escalate([&]<class Real>() { return ns1_cdf_t<Real>(dims, Real(a), Real(x)); },
                                  "cdf_ns1");
        return detail::clamp_probability(r);
    }

    double pdf_ns1(const SystemDims &dims, double a, double x)
    {
        require_ns1(dims, "pdf_ns1");
        require_a(a, false);
        if (!(x > 0.0))
            throw DomainError("pdf_ns1: x must be positive");
        auto r = detail::escalate([&]<class Real>() { return ns1_pdf_t<Real>(dims, Real(a), Real(x)); },
                                  "pdf_ns1");
        return detail::clamp_density(r);
    }

    double cdf_q1(const SystemDims &dims, double a, double x)
    {
        require_q1(dims, "cdf_q1");
        require_a(a, false);
        check_x(x);
        if (x == 0.0)
            return 0.0;
        auto r = detail::escalate([&]<class Real>() { return q1_cdf_t<Real>(dims, Real(a), Real(x)); },
                                  "cdf_q1");
        return detail::clamp_probability(r);
    }

    double pdf_q1(const SystemDims &dims, double a, double x)
    {
        require_q1(dims, "pdf_q1");
        require_a(a, false);
        if (!(x > 0.0))
            throw DomainError("pdf_q1: x must be positive");
        auto r = detail::escalate([&]<class Real>() { return q1_pdf_t<Real>(dims, Real(a), Real(x)); },
                                  "pdf_q1");
        return detail::clamp_density(r);
    }

    double pdf_q1_single_sum(const SystemDims &dims, double a, double x)
    {
        require_q1(dims, "pdf_q1_single_sum");
        require_a(a, false);
        if (!(x > 0.0))
            throw DomainError("pdf_q1_single_sum: x must be positive");
        auto r = detail::escalate([&]<class Real>()
                                  { return q1_pdf_single_t<Real>(dims, Real(a), Real(x)); },
                                  "pdf_q1_single_sum");
        return r.value;
    }

    double asym_ns1(const SystemDims &dims, double a)
    {
        require_ns1(dims, "asym_ns1");
        require_a(a, false);
        if (dims.p() <= dims.q())
            throw DomainError("asym_ns1: the power-law expansion needs p > q; for p = q the "
                              "small-x cdf carries a logarithmic factor");
        auto r = detail::escalate([&]<class Real>() { return psi_det_t<Real>(dims, Real(a)); }, "asym_ns1");
        return r.value;
    }

    double asym_q1_coefficient(const SystemDims &dims, double a, double x)
    {
        require_q1(dims, "asym_q1");
        require_a(a, false);
        const int p = dims.p(), ns = dims.ns;
        const double den = std::tgamma(static_cast<double>(p)) * std::tgamma(static_cast<double>(ns));
        if (p > ns)
        {
            double sum = 0.0;
            for (int i = 0; i <= ns; ++i)
                sum += std::tgamma(ns + 1.0) / (std::tgamma(i + 1.0) * std::tgamma(ns - i + 1.0)) * std::pow(a, i) *
                       std::tgamma(static_cast<double>(p - ns + i));
            return sum / den;
        }
        if (p == ns)
        {
            if (!(x > 0.0))
                throw DomainError("asym_q1: the p = n_s branch needs x > 0");
            double sum = -euler_gamma - std::log(x);
            for (int i = 1; i <= ns; ++i)
                sum += std::tgamma(ns + 1.0) / (std::tgamma(i + 1.0) * std::tgamma(ns - i + 1.0)) * std::pow(a, i) *
                       std::tgamma(static_cast<double>(i));
            return sum / den;
        }
        return std::tgamma(static_cast<double>(ns - p)) / den;
    }

    double asym_q1(const SystemDims &dims, double a, double x)
    {
        const int m = dims.m();
        return asym_q1_coefficient(dims, a, x) / m * std::pow(x, m);
    }

    double moment_ns1(const SystemDims &dims, double a, int m_order)
    {
        require_ns1(dims, "moment_ns1");
        require_a(a, true);
        if (m_order < 1)
            throw DomainError("moment order must be >= 1");
        const int q = dims.q(), p = dims.p(), m = m_order;
        const auto D = ns1_cofactors(dims, a);
        FnAccuracy acc;
        acc.rel_tol = 1e-13;
        double sum = 0.0;
        for (int j = 1; j <= q; ++j)
        {
            double inner = 0.0;
            for (int l = 0; l <= j - 1; ++l)
            {
                const double eta = p + q + l - j;
                const double binom = std::tgamma(static_cast<double>(j)) /
                                     (std::tgamma(l + 1.0) * std::tgamma(static_cast<double>(j - l)));
                const double u1 = hyp_u(m + 1.0, 1.0 - eta, 1.0 / a, acc);
                const double u2 = hyp_u(m + 1.0, 2.0 - eta, 1.0 / a, acc);
                inner += binom * std::pow(a, l - m) * std::tgamma(eta + m) * ((eta + m) * u1 + u2 / a);
            }
            sum += D[static_cast<std::size_t>(j - 1)] * inner;
        }
        const double sgn = (q - 1) % 2 == 0 ? 1.0 : -1.0;
        return sgn * std::tgamma(m + 1.0) * sum * std::exp(-detail::log_norm<double>(dims));
    }

    double moment_q1(const SystemDims &dims, double a, int m_order)
    {
        require_q1(dims, "moment_q1");
        require_a(a, true);
        if (m_order < 1)
            throw DomainError("moment order must be >= 1");
        const int p = dims.p(), ns = dims.ns, m = m_order;
        FnAccuracy acc;
        acc.rel_tol = 1e-13;
        double sum = 0.0;
        for (int i = 0; i <= ns; ++i)
        {
            const double lg = std::lgamma(ns + 1.0) - std::lgamma(i + 1.0) - std::lgamma(ns - i + 1.0) +
                              std::lgamma(static_cast<double>(p + i + m)) - (ns + m - i) * std::log(a);
            sum += std::exp(lg) * hyp_u(ns + m, 1.0 - p + ns - i, 1.0 / a, acc);
        }
        return std::exp(std::lgamma(static_cast<double>(ns + m)) - std::lgamma(static_cast<double>(p)) -
                        std::lgamma(static_cast<double>(ns))) *
               sum;
    }

    double moment_numeric(const MaxEigDistribution &dist, int m_order)
    {
        if (m_order < 0)
            throw DomainError("moment order must be >= 0");
        const double hi = dist.upper_quantile_bound(1e-15);
        QuadOptions opt;
        opt.rel_tol = 1e-11;
        auto f = [&](double x) { return x > 0.0 ? std::pow(x, m_order) * dist.pdf(x) : 0.0; };
        std::vector<double> pts{0.0};
        for (double b = hi / 64.0; b < hi; b *= 4.0)
            pts.push_back(b);
        pts.push_back(hi);
        return integrate_pieces_to_inf(f, pts, hi / 4.0, opt).value;
    }

    LargeLimit parse_large_limit(const std::string &s)
    {
        if (s == "ns")
            return LargeLimit::ns;
        if (s == "nd")
            return LargeLimit::nd;
        if (s == "nr")
            return LargeLimit::nr;
        throw DomainError("unknown large-antenna limit '" + s + "' (expected ns, nd or nr)");
    }

    std::string to_string(LargeLimit which)
    {
        switch (which)
        {
        case LargeLimit::ns:
            return "ns";
        case LargeLimit::nd:
            return "nd";
        case LargeLimit::nr:
            return "nr";
        }
        return "?";
    }

    double EquivalentModel::map(double lambda_w) const
    {
        if (which == LargeLimit::ns)
            return scale * lambda_w / (a * lambda_w + 1.0);
        return scale * lambda_w;
    }

    std::string EquivalentModel::describe() const
    {
        std::ostringstream os;
        os.precision(17);
        if (which == LargeLimit::ns)
            os << scale << " * l / (" << a << " * l + 1)";
        else
            os << scale << " * l";
        os << " with l the largest eigenvalue of G^H G, G " << base.rows << "x" << base.cols;
        return os.str();
    }

    EquivalentModel large_antenna_equiv(const SystemDims &dims, double a, LargeLimit which)
    {
        require_a(a, false);
        EquivalentModel e;
        e.which = which;
        e.a = a;
        switch (which)
        {
        case LargeLimit::ns: // H2^H H2
            e.base = {dims.nd, dims.nr};
            e.scale = dims.ns;
            break;
        case LargeLimit::nd: // H1^H H1
            e.base = {dims.nr, dims.ns};
            e.scale = dims.nd / (a * dims.nd + 1.0);
            break;
        case LargeLimit::nr: // n_s x n_d Gaussian
            e.base = {dims.ns, dims.nd};
            e.scale = dims.nr / (a * dims.nr + 1.0);
            break;
        }
        return e;
    }
} // namespace afmimo
