// SPDX-License-Identifier: Apache-2.0
//
// afmimo: performance analysis of beamforming over dual-hop AF MIMO links
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#include "afmimo/metrics.hpp"

#include "afmimo/quadrature.hpp"
#include "afmimo/specfun.hpp"

#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

namespace afmimo
{
    void ModulationParams::validate() const
    {
        if (!(a1 > 0.0 && a1 <= 4.0))
            throw DomainError("modulation: a1 must lie in (0, 4]");
        if (!(a2 > 0.0))
            throw DomainError("modulation: a2 must be positive");
    }

    void OutageSpec::validate() const
    {
        if (!(gamma_th > 0.0))
            throw DomainError("outage: gamma_th must be positive");
    }

    void OstbcParams::validate() const
    {
        if (!(rate > 0.0 && rate <= 1.0))
            throw DomainError("OSTBC: code rate must lie in (0, 1]");
    }

    namespace
    {
        constexpr double log2e = std::numbers::log2e;
        constexpr double integrand_rel_target = 1e-10;

        double binom(int n, int k)
        {
            return std::round(std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)));
        }

        double gamma_fn(double x) { return std::tgamma(x); }

        QuadOptions metric_quad()
        {
            QuadOptions opt;
            opt.rel_tol = 1e-10;
            opt.abs_tol = 1e-15;
            return opt;
        }

        // 0, then a geometric ladder from lo to hi.
        std::vector<double> ladder(double lo, double hi, double ratio = 8.0)
        {
            std::vector<double> pts{0.0};
            for (double x = lo; x < hi; x *= ratio)
                pts.push_back(x);
            pts.push_back(hi);
            return pts;
        }

        template <class G>
        double integrate_against_pdf(const MaxEigDistribution &dist, double char_scale, G g)
        {
            const double hi = dist.upper_quantile_bound(1e-15);
            auto f = [&](double x) { return x > 0.0 ? g(x) * dist.pdf(x) : 0.0; };
            const double lo = std::min(char_scale, hi) * 1e-6;
            return integrate_pieces_to_inf(f, ladder(lo, hi), hi / 8.0, metric_quad()).value;
        }

        // (a1 sqrt(a2) / sqrt(pi)) int_0^inf e^{-a2 w^2} F(w^2) dw
        template <class Cdf>
        double ser_from_snr_cdf(const ModulationParams &mod, Cdf cdf_gamma)
        {
            const double wmax = 28.0 / std::sqrt(mod.a2);
            auto f = [&](double w) { return std::exp(-mod.a2 * w * w) * cdf_gamma(w * w); };
            double sum = 0.0;
            const auto pts = ladder(wmax * std::pow(2.0, -24), wmax, 4.0);
            for (std::size_t i = 0; i + 1 < pts.size(); ++i)
                sum += integrate(f, pts[i], pts[i + 1], metric_quad()).value;
            return mod.a1 * std::sqrt(mod.a2) / std::sqrt(std::numbers::pi) * sum;
        }

        std::pair<double, double> first_two_moments(const SystemDims &dims, double a, const char *what)
        {
            if (dims.q() == 1)
                return {moment_q1(dims, a, 1), moment_q1(dims, a, 2)};
            if (dims.ns == 1)
                return {moment_ns1(dims, a, 1), moment_ns1(dims, a, 2)};
            throw DimensionError(std::string(what) + " requires n_s = 1 or min(n_r, n_d) = 1, got " + dims.str());
        }

        double wishart_upper(int c1, int c2)
        {
            double x = 1.0;
            for (int it = 0; it < 80; ++it, x *= 2.0)
                if (1.0 - wishart_maxeig_cdf(c1, c2, x) <= 1e-15)
                    return x;
            throw ConvergenceError("Wishart cdf does not approach one");
        }
    } // namespace

    double outage_exact(const SystemDims &dims, const LinkBudget &budget, const OutageSpec &spec)
    {
        spec.validate();
        const double a = budget.a(dims.nr);
        return MaxEigDistribution(dims, a).cdf(spec.gamma_th / (a * budget.rho));
    }

    double outage_highsnr(const SystemDims &dims, const LinkBudget &budget, const OutageSpec &spec)
    {
        spec.validate();
        const double k = budget.k, rho = budget.rho, nr = dims.nr;
        const double ak = budget.a_limit(dims.nr);
        if (dims.q() == 1)
        {
            const int p = dims.p(), ns = dims.ns, m = dims.m();
            const double lead = std::pow(nr / k, m) / (m * gamma_fn(p) * gamma_fn(ns)) * std::pow(spec.gamma_th / rho, m);
            if (p > ns)
            {
                double sum = 0.0;
                for (int i = 0; i <= ns; ++i)
                    sum += binom(ns, i) * std::pow(ak, i) * gamma_fn(p - ns + i);
                return lead * sum;
            }
            if (p == ns)
                return lead * std::log(k * rho / (nr * spec.gamma_th));
            return lead * gamma_fn(ns - p);
        }
        if (dims.ns == 1)
        {
            const int q = dims.q();
            return asym_ns1(dims, ak) / q * std::pow(spec.gamma_th * nr / (k * rho), q);
        }
        throw DimensionError("outage_highsnr requires n_s = 1 or min(n_r, n_d) = 1, got " + dims.str());
    }

    double ser_numeric(const SystemDims &dims, const LinkBudget &budget, const ModulationParams &mod)
    {
        mod.validate();
        const double a = budget.a(dims.nr), g = a * budget.rho;
        MaxEigDistribution dist(dims, a);
        dist.set_rel_target(integrand_rel_target);
        return integrate_against_pdf(dist, 1.0 / (mod.a2 * g),
                                     [&](double x) { return mod.a1 * gauss_q(std::sqrt(2.0 * mod.a2 * g * x)); });
    }

    double ser_numeric_cdf(const SystemDims &dims, const LinkBudget &budget, const ModulationParams &mod)
    {
        mod.validate();
        const double a = budget.a(dims.nr), g = a * budget.rho;
        MaxEigDistribution dist(dims, a);
        dist.set_rel_target(integrand_rel_target);
        return ser_from_snr_cdf(mod, [&](double gamma) { return dist.cdf(gamma / g); });
    }

    double ser_closed_ns1(const SystemDims &dims, const LinkBudget &budget, const ModulationParams &mod)
    {
        mod.validate();
        if (dims.ns != 1)
            throw DimensionError("ser_closed_ns1 requires n_s = 1, got " + dims.str());
        const int q = dims.q(), p = dims.p();
        const double a = budget.a(dims.nr), rho = budget.rho, a2 = mod.a2;
        const auto D = ns1_cofactors(dims, a);
        FnAccuracy acc;
        acc.rel_tol = 1e-13;
        const double z = 1.0 / (a * (rho * a2 + 1.0));
        const double sq = std::sqrt(std::numbers::pi);
        double sum = 0.0;
        for (int j = 1; j <= q; ++j)
        {
            double inner = 0.0;
            for (int l = 0; l <= j - 1; ++l)
            {
                const double eta = p + q + l - j;
                const double t1 = gamma_fn(eta) * std::sqrt(std::numbers::pi / a2);
                const double t2 = gamma_fn(eta + 0.5) * sq / std::sqrt(1.0 / rho + a2) * hyp_u(0.5, 1.0 - eta, z, acc);
                inner += binom(j - 1, l) * std::pow(a, l) * (t1 - t2);
            }
            sum += D[static_cast<std::size_t>(j - 1)] * inner;
        }
        double norm = 1.0;
        for (int i = 1; i <= q; ++i)
            norm *= gamma_fn(q - i + 1.0) * gamma_fn(p - i + 1.0);
        const double sgn = (q - 1) % 2 == 0 ? 1.0 : -1.0;
        return mod.a1 * std::sqrt(a2) * sgn / (2.0 * sq * norm) * sum;
    }

    double ser_closed_q1(const SystemDims &dims, const LinkBudget &budget, const ModulationParams &mod)
    {
        mod.validate();
        if (dims.q() != 1)
            throw DimensionError("ser_closed_q1 requires min(n_r, n_d) = 1, got " + dims.str());
        const int p = dims.p(), ns = dims.ns;
        const double a = budget.a(dims.nr), rho = budget.rho, a2 = mod.a2;
        FnAccuracy acc;
        acc.rel_tol = 1e-13;
        const double z = 1.0 / (a * (rho * a2 + 1.0));
        double sum = 0.0;
        for (int k = 0; k < ns; ++k)
        {
            double inner = 0.0;
            for (int l = 0; l <= k; ++l)
            {
                const double lg = std::lgamma(p + l + 0.5) + std::lgamma(k + 0.5) - k * std::log(a * rho) -
                                  (k + 0.5) * std::log(a2 + 1.0 / rho);
                inner += binom(k, l) * std::pow(a, l) * std::exp(lg) * hyp_u(k + 0.5, 1.0 + k - p - l, z, acc);
            }
            sum += inner / gamma_fn(k + 1.0);
        }
        // Gamma(p) in the prefactor; see the decisions ledger.
        return mod.a1 / 2.0 - mod.a1 * std::sqrt(a2) / (2.0 * std::sqrt(std::numbers::pi) * gamma_fn(p)) * sum;
    }

    double ser_highsnr(const SystemDims &dims, const LinkBudget &budget, const ModulationParams &mod)
    {
        mod.validate();
        const double k = budget.k, rho = budget.rho, nr = dims.nr, a1 = mod.a1, a2 = mod.a2;
        const double ak = budget.a_limit(dims.nr);
        const double sq = 2.0 * std::sqrt(std::numbers::pi);
        if (dims.q() == 1)
        {
            const int p = dims.p(), ns = dims.ns;
            if (p > ns)
            {
                double sum = 0.0;
                for (int i = 0; i <= ns; ++i)
                    sum += binom(ns, i) * std::pow(ak, i) * gamma_fn(p - ns + i);
                return a1 * std::pow(nr, ns) * gamma_fn(ns + 0.5) * sum /
                       (sq * std::pow(k * a2, ns) * gamma_fn(p) * gamma_fn(ns + 1.0)) * std::pow(rho, -ns);
            }
            const double base = a1 * std::pow(nr, p) * gamma_fn(p + 0.5) /
                                (sq * std::pow(k * a2, p) * gamma_fn(p + 1.0) * gamma_fn(ns)) * std::pow(rho, -p);
            if (p == ns)
                return base * std::log(k * rho / nr);
            return base * gamma_fn(ns - p);
        }
        if (dims.ns == 1)
        {
            // F_gamma(g) ~ (v1 / q) (n_r g / (k rho))^q; the moment of the Q
            // tail gives Gamma(q + 1/2) / (2 sqrt(pi) a2^q).
            const int q = dims.q();
            return a1 * std::pow(nr, q) * gamma_fn(q + 0.5) * asym_ns1(dims, ak) /
                   (sq * std::pow(a2 * k, q) * q) * std::pow(rho, -q);
        }
        throw DimensionError("ser_highsnr requires n_s = 1 or min(n_r, n_d) = 1, got " + dims.str());
    }

    double ser_ostbc_highsnr(const SystemDims &dims, const LinkBudget &budget, const ModulationParams &mod,
                             const OstbcParams &ostbc)
    {
        mod.validate();
        ostbc.validate();
        if (dims.q() != 1)
            throw DimensionError("ser_ostbc_highsnr requires min(n_r, n_d) = 1, got " + dims.str());
        const int p = dims.p(), ns = dims.ns;
        if (p == ns)
            throw DimensionError("ser_ostbc_highsnr has no p = n_s branch, got " + dims.str());
        const double k = budget.k, rho = budget.rho, nr = dims.nr, R = ostbc.rate;
        const double ak = budget.a_limit(dims.nr);
        const double sq = 2.0 * std::sqrt(std::numbers::pi);
        const int m = dims.m();
        const double modf = mod.a1 / std::pow(mod.a2, m);
        if (p > ns)
        {
            double sum = 0.0;
            for (int i = 0; i <= ns; ++i)
                sum += binom(ns, i) * std::pow(ak, i) * gamma_fn(p - ns + i);
            // (k / n_r)^{-n_s}: the exponent is n_s; see the decisions ledger.
            return modf * std::pow(R * ns, ns) * gamma_fn(ns + 0.5) * sum * std::pow(k / nr, -ns) /
                   (sq * gamma_fn(p) * gamma_fn(ns + 1.0)) * std::pow(rho, -ns);
        }
        return modf * std::pow(R * ns * nr, p) * gamma_fn(p + 0.5) * gamma_fn(ns - p) /
               (sq * std::pow(k, p) * gamma_fn(p + 1.0) * gamma_fn(ns)) * std::pow(rho, -p);
    }

    double bf_power_gain_db(int ns, double rate)
    {
        if (ns < 1)
            throw DomainError("bf_power_gain_db: n_s must be >= 1");
        OstbcParams{rate}.validate();
        return 10.0 * std::log10(rate * ns);
    }

    double single_link_ser(int c1, int c2, double rho_bar, const ModulationParams &mod)
    {
        mod.validate();
        if (!(rho_bar > 0.0))
            throw DomainError("single_link_ser: rho_bar must be positive");
        return ser_from_snr_cdf(mod, [&](double gamma) { return wishart_maxeig_cdf(c1, c2, gamma / rho_bar); });
    }

    double single_link_capacity(int c1, int c2, double rho_bar)
    {
        if (!(rho_bar >= 0.0))
            throw DomainError("single_link_capacity: rho_bar must be non-negative");
        if (rho_bar == 0.0)
            return 0.0;
        // Integration by parts: int rho_bar log2(e) / (1 + rho_bar x) (1 - F(x)) dx
        const double hi = wishart_upper(c1, c2);
        auto f = [&](double x) { return rho_bar * log2e / (1.0 + rho_bar * x) * (1.0 - wishart_maxeig_cdf(c1, c2, x)); };
        const double lo = std::min(1.0 / rho_bar, hi) * 1e-3;
        return integrate_pieces_to_inf(f, ladder(lo, hi), hi / 8.0, metric_quad()).value;
    }

    double ser_large_antenna(const SystemDims &dims, const LinkBudget &budget, const ModulationParams &mod,
                             LargeLimit which)
    {
        const double a = budget.a(dims.nr), rho_bar = a * budget.rho;
        switch (which)
        {
        case LargeLimit::nr:
            return single_link_ser(dims.nd, dims.ns, dims.nr / (a * dims.nr + 1.0) * rho_bar, mod);
        case LargeLimit::nd:
            return single_link_ser(dims.nr, dims.ns, dims.nd / (a * dims.nd + 1.0) * rho_bar, mod);
        case LargeLimit::ns:
            break;
        }
        throw DomainError("ser_large_antenna: no approximation exists for the n_s limit");
    }

    double capacity_numeric(const SystemDims &dims, const LinkBudget &budget)
    {
        const double a = budget.a(dims.nr), g = a * budget.rho;
        MaxEigDistribution dist(dims, a);
        dist.set_rel_target(integrand_rel_target);
        return integrate_against_pdf(dist, 1.0 / g, [&](double x) { return 0.5 * log2e * std::log1p(g * x); });
    }

    double capacity_large_antenna(const SystemDims &dims, const LinkBudget &budget, LargeLimit which)
    {
        const double a = budget.a(dims.nr), rho_bar = a * budget.rho;
        switch (which)
        {
        case LargeLimit::ns:
            return 0.5 * (single_link_capacity(dims.nr, dims.nd, dims.ns * rho_bar + a) -
                          single_link_capacity(dims.nr, dims.nd, a));
        case LargeLimit::nr:
            return 0.5 * single_link_capacity(dims.nd, dims.ns, dims.nr / (a * dims.nr + 1.0) * rho_bar);
        case LargeLimit::nd:
            return 0.5 * single_link_capacity(dims.nr, dims.ns, dims.nd / (a * dims.nd + 1.0) * rho_bar);
        }
        return 0.0;
    }

    double capacity_jensen(const SystemDims &dims, const LinkBudget &budget)
    {
        const double a = budget.a(dims.nr);
        const double m1 = dims.q() == 1 ? moment_q1(dims, a, 1)
                          : dims.ns == 1
                              ? moment_ns1(dims, a, 1)
                              : throw DimensionError("capacity_jensen requires n_s = 1 or min(n_r, n_d) = 1, got " +
                                                     dims.str());
        return 0.5 * std::log2(1.0 + a * budget.rho * m1);
    }

    double capacity_taylor(const SystemDims &dims, const LinkBudget &budget)
    {
        const double a = budget.a(dims.nr), g = a * budget.rho;
        const auto [m1, m2] = first_two_moments(dims, a, "capacity_taylor");
        const double u = 1.0 + g * m1;
        return 0.5 * log2e * (std::log(u) - g * g * (m2 - m1 * m1) / (2.0 * u * u));
    }

    HighSnrCapacity capacity_highsnr(const SystemDims &dims, double k)
    {
        if (dims.q() != 1)
            throw DimensionError("capacity_highsnr requires min(n_r, n_d) = 1, got " + dims.str());
        if (!(k > 0.0))
            throw DomainError("capacity_highsnr: k must be positive");
        const int p = dims.p();
        const double z = dims.nr / k;
        double tail = 0.0;
        for (int i = 0; i < p; ++i)
            tail += expint_n_scaled(i + 1, z);
        HighSnrCapacity out;
        out.slope = 0.5;
        out.offset = std::log2(z) - log2e * (digamma_int(dims.ns) + digamma_int(p) - tail);
        return out;
    }
} // namespace afmimo
