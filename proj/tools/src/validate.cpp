// SPDX-License-Identifier: Apache-2.0
//
// afmimo: performance analysis of beamforming over dual-hop AF MIMO links
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#include "afmimo_cli/validate.hpp"

#include <afmimo/eigdist.hpp>
#include <afmimo/metrics.hpp>
#include <afmimo/montecarlo.hpp>
#include <afmimo/quadrature.hpp>
#include <afmimo/specfun.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <exception>

namespace afmimo::cli
{
    namespace
    {
        std::string strf(const char *f, ...)
        {
            char buf[512];
            va_list ap;
            va_start(ap, f);
            std::vsnprintf(buf, sizeof buf, f, ap);
            va_end(ap);
            return buf;
        }

        double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

        double q_func(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

        // x with cdf(x) = p.
        double quantile(const MaxEigDistribution &dist, double p)
        {
            double lo = 0.0, hi = 1.0;
            while (dist.cdf(hi) < p)
                hi *= 2.0;
            for (int it = 0; it < 100 && hi - lo > 1e-14 * hi; ++it)
            {
                const double mid = 0.5 * (lo + hi);
                (dist.cdf(mid) < p ? lo : hi) = mid;
            }
            return 0.5 * (lo + hi);
        }

        struct Mean
        {
            double value, std_error;
        };

        template <class F>
        Mean sample_mean(const std::vector<double> &lambda, F f)
        {
            const double n = static_cast<double>(lambda.size());
            double s = 0.0;
            for (double l : lambda)
                s += f(l);
            const double mean = s / n;
            double ss = 0.0;
            for (double l : lambda)
                ss += (f(l) - mean) * (f(l) - mean);
            return {mean, std::sqrt(ss / (n - 1.0) / n)};
        }

        // --- 1: empirical cdf inside the 99% DKW band ---------------------
        CriterionResult c1(const ValidationOracles &o, const ValidateOptions &opt)
        {
            CriterionResult r;
            r.passed = true;
            const std::size_t n = 1000000;
            const double band = dkw_band(n, 0.99);
            double worst = 0.0;
            std::uint64_t seed = opt.seed;
            for (auto d : {SystemDims(2, 2, 2), SystemDims(2, 3, 2), SystemDims(1, 3, 3), SystemDims(3, 1, 2)})
                for (double k : {0.5, 1.0})
                {
                    const double a = LinkBudget::from_db(10.0, k).a(d.nr);
                    MaxEigDistribution dist(d, a);
                    const double lo = quantile(dist, 0.005), hi = quantile(dist, 0.995);
                    std::vector<double> grid;
                    for (int i = 0; i < 40; ++i)
                        grid.push_back(lo + (hi - lo) * i / 39.0);
                    auto lambda = o.sample_lambda(d, a, n, seed++);
                    const auto emp = empirical_cdf(std::move(lambda), grid);
                    for (std::size_t i = 0; i < grid.size(); ++i)
                    {
                        const double dev = std::abs(emp.value[i] - dist.cdf(grid[i]));
                        worst = std::max(worst, dev / band);
                        if (dev > band)
                        {
                            r.passed = false;
                            r.detail += strf("%s k=%g x=%.4g off by %.3g; ", d.str().c_str(), k, grid[i], dev);
                        }
                    }
                }
            r.detail += strf("max |F_emp - F| / band = %.3f (band %.3g, 8 configs x 40 points)", worst, band);
            return r;
        }

        // --- 2: normalisation, derivative, special-case agreement ---------
        CriterionResult c2(const ValidationOracles &o, const ValidateOptions &)
        {
            CriterionResult r;
            r.passed = true;
            const double a = 0.3;
            double worst_norm = 0.0, worst_deriv = 0.0, worst_special = 0.0;
            int configs = 0;
            for (int ns = 1; ns <= 4; ++ns)
                for (int nr = 1; nr <= 4; ++nr)
                    for (int nd = 1; nd <= 4; ++nd)
                    {
                        const SystemDims d(ns, nr, nd);
                        MaxEigDistribution dist(d, a);
                        ++configs;
                        const double hi = dist.upper_quantile_bound(1e-15);
                        const double mass = o.integrate_half_line([&](double x) { return x > 0 ? dist.pdf(x) : 0.0; }, hi);
                        const double norm_err = std::abs(mass - 1.0);
                        worst_norm = std::max(worst_norm, norm_err);
                        if (norm_err > 1e-6)
                        {
                            r.passed = false;
                            r.detail += strf("%s integral %.10g; ", d.str().c_str(), mass);
                        }
                        for (double pq : {0.25, 0.5, 0.75})
                        {
                            const double x = quantile(dist, pq), h = 1e-3 * x;
                            const double deriv = (-dist.cdf(x + 2 * h) + 8 * dist.cdf(x + h) - 8 * dist.cdf(x - h) +
                                                  dist.cdf(x - 2 * h)) /
                                                 (12 * h);
                            const double pdf = dist.pdf(x);
                            const double de = rel(deriv, pdf);
                            worst_deriv = std::max(worst_deriv, de);
                            if (de > 1e-4)
                            {
                                r.passed = false;
                                r.detail += strf("%s x=%.4g dF/dx gap %.3g; ", d.str().c_str(), x, de);
                            }
                            std::vector<double> gaps;
                            if (ns == 1)
                            {
                                gaps.push_back(rel(cdf_ns1(d, a, x), dist.cdf(x)));
                                gaps.push_back(rel(pdf_ns1(d, a, x), pdf));
                            }
                            if (d.q() == 1)
                            {
                                gaps.push_back(rel(cdf_q1(d, a, x), dist.cdf(x)));
                                gaps.push_back(rel(pdf_q1(d, a, x), pdf));
                                gaps.push_back(rel(pdf_q1_single_sum(d, a, x), pdf));
                            }
                            for (double g : gaps)
                            {
                                worst_special = std::max(worst_special, g);
                                if (g > 1e-10)
                                {
                                    r.passed = false;
                                    r.detail += strf("%s x=%.4g special-case gap %.3g; ", d.str().c_str(), x, g);
                                }
                            }
                        }
                    }
            r.detail += strf("%d configs: max |int pdf - 1| = %.3g, max derivative gap = %.3g, "
                             "max special-case gap = %.3g",
                             configs, worst_norm, worst_deriv, worst_special);
            return r;
        }

        // --- 3: moment closed forms versus quadrature ---------------------
        CriterionResult c3(const ValidationOracles &o, const ValidateOptions &)
        {
            CriterionResult r;
            r.passed = true;
            double worst = 0.0;
            const std::pair<SystemDims, double> cases[] = {
                {SystemDims(1, 2, 2), 0.1}, {SystemDims(1, 2, 3), 0.2}, {SystemDims(1, 3, 4), 0.3},
                {SystemDims(2, 1, 3), 0.2}, {SystemDims(3, 1, 2), 0.1}, {SystemDims(2, 4, 1), 0.5}};
            for (const auto &[d, a] : cases)
            {
                MaxEigDistribution dist(d, a);
                const double hi = dist.upper_quantile_bound(1e-15);
                for (int m = 1; m <= 3; ++m)
                {
                    const double closed = d.ns == 1 ? moment_ns1(d, a, m) : moment_q1(d, a, m);
                    const double quad = o.integrate_half_line(
                        [&](double x) { return x > 0 ? std::pow(x, m) * dist.pdf(x) : 0.0; }, hi);
                    const double g = rel(closed, quad);
                    worst = std::max(worst, g);
                    if (g > 1e-5)
                    {
                        r.passed = false;
                        r.detail += strf("%s a=%g m=%d closed %.10g quad %.10g; ", d.str().c_str(), a, m, closed, quad);
                    }
                }
            }
            r.detail += strf("6 configs x m in {1,2,3}: max relative gap = %.3g", worst);
            return r;
        }

        // --- 4: Bessel-K Laplace identity ---------------------------------
        CriterionResult c4(const ValidationOracles &o, const ValidateOptions &)
        {
            CriterionResult r;
            r.passed = true;
            struct P
            {
                double mu;
                int v;
                double beta, m;
            };
            const P grid[] = {{0.0, 0, 1.0, 1.0}, {1.0, 1, 0.5, 1.0}, {2.0, 2, 1.0, 0.5}, {3.0, 1, 2.0, 2.0},
                              {0.5, 0, 0.3, 1.5}, {4.0, 3, 1.0, 1.0}, {2.0, 0, 5.0, 0.2}, {1.5, 2, 0.1, 3.0},
                              {5.0, 4, 2.0, 1.0}, {3.0, 2, 10.0, 4.0}};
            double worst = 0.0;
            for (const auto &p : grid)
            {
                const double res = o.identity_residual(p.mu, p.v, p.beta, p.m);
                worst = std::max(worst, res);
                if (!(res <= 1e-8))
                {
                    r.passed = false;
                    r.detail += strf("(mu=%g, v=%d, beta=%g, m=%g) residual %.3g; ", p.mu, p.v, p.beta, p.m, res);
                }
            }
            r.detail += strf("10 points: max residual = %.3g", worst);
            return r;
        }

        // --- 5: diversity orders from the exact outage -------------------
        CriterionResult c5(const ValidationOracles &, const ValidateOptions &)
        {
            CriterionResult r;
            r.passed = true;
            struct Case
            {
                SystemDims d;
                double k;
                double order;
            };
            const Case cases[] = {{SystemDims(3, 1, 2), 0.5, 2.0},
                                  {SystemDims(3, 1, 3), 0.5, 3.0},
                                  {SystemDims(3, 1, 4), 0.5, 3.0},
                                  {SystemDims(1, 2, 2), 1.0, 2.0}};
            const OutageSpec spec{1.0};
            for (const auto &c : cases)
            {
                const double p35 = outage_exact(c.d, LinkBudget::from_db(35.0, c.k), spec);
                const double p40 = outage_exact(c.d, LinkBudget::from_db(40.0, c.k), spec);
                const double slope = -(std::log10(p40) - std::log10(p35)) / 0.5;
                const bool ok = std::abs(slope - c.order) <= 0.1;
                r.passed = r.passed && ok;
                r.detail += strf("%s slope %.4f (want %g)%s; ", c.d.str().c_str(), slope, c.order, ok ? "" : " FAIL");
            }
            return r;
        }

        // --- 6: beamforming versus OSTBC gap -----------------------------
        double snr_at(const std::function<double(double)> &ser_of_db, double target)
        {
            double lo = -20.0, hi = 80.0;
            for (int it = 0; it < 200; ++it)
            {
                const double mid = 0.5 * (lo + hi);
                (ser_of_db(mid) > target ? lo : hi) = mid;
            }
            return 0.5 * (lo + hi);
        }

        CriterionResult c6(const ValidationOracles &, const ValidateOptions &)
        {
            CriterionResult r;
            const SystemDims d(2, 1, 3);
            const auto mod = ModulationParams::bpsk();
            const double bf = snr_at([&](double db) { return ser_highsnr(d, LinkBudget::from_db(db, 1.0), mod); }, 1e-4);
            const double os = snr_at(
                [&](double db) { return ser_ostbc_highsnr(d, LinkBudget::from_db(db, 1.0), mod, OstbcParams{1.0}); },
                1e-4);
            const double gap = os - bf;
            r.passed = std::abs(gap - 3.01) <= 0.1;
            r.detail = strf("SER 1e-4 reached at %.4f dB (beamforming) and %.4f dB (OSTBC): gap %.4f dB, "
                            "10 log10(R n_s) = %.4f dB",
                            bf, os, gap, bf_power_gain_db(2, 1.0));
            return r;
        }

        // --- 7: SER closed forms versus quadrature and Monte Carlo --------
        CriterionResult c7(const ValidationOracles &o, const ValidateOptions &opt)
        {
            CriterionResult r;
            r.passed = true;
            const auto mod = ModulationParams::bpsk();
            double worst_quad = 0.0, worst_z = 0.0;
            std::uint64_t seed = opt.seed + 100;
            for (auto d : {SystemDims(1, 2, 2), SystemDims(2, 1, 3)})
                for (double db : {0.0, 10.0, 20.0})
                {
                    const auto b = LinkBudget::from_db(db, 1.0);
                    const double closed = d.ns == 1 ? ser_closed_ns1(d, b, mod) : ser_closed_q1(d, b, mod);
                    const double quad = ser_numeric(d, b, mod);
                    const double g = rel(closed, quad);
                    worst_quad = std::max(worst_quad, g);
                    const double a = b.a(d.nr), arho = a * b.rho;
                    const auto lambda = o.sample_lambda(d, a, 1000000, seed++);
                    const auto mc = sample_mean(lambda, [&](double l)
                                                { return mod.a1 * q_func(std::sqrt(2.0 * mod.a2 * arho * l)); });
                    const double z = std::abs(mc.value - closed) / mc.std_error;
                    worst_z = std::max(worst_z, z);
                    if (g > 1e-6 || z > 3.0)
                    {
                        r.passed = false;
                        r.detail += strf("%s %g dB: closed %.8g quad %.8g MC %.8g +- %.3g; ", d.str().c_str(), db,
                                         closed, quad, mc.value, mc.std_error);
                    }
                }
            r.detail += strf("max closed-vs-quadrature gap = %.3g, max |MC - closed| / stderr = %.3f", worst_quad,
                             worst_z);
            return r;
        }

        // --- 8: capacity suite ---------------------------------------------
        CriterionResult c8(const ValidationOracles &, const ValidateOptions &)
        {
            CriterionResult r;
            r.passed = true;
            double worst_app = 0.0, min_up_gap = 1e300;
            for (auto d : {SystemDims(3, 1, 4), SystemDims(10, 1, 4)})
            {
                for (double db = 0.0; db <= 25.0; db += 5.0)
                {
                    const auto b = LinkBudget::from_db(db, 1.0);
                    const double c = capacity_numeric(d, b);
                    const double up = capacity_jensen(d, b);
                    const double app = capacity_taylor(d, b);
                    min_up_gap = std::min(min_up_gap, up - c);
                    worst_app = std::max(worst_app, rel(app, c));
                    if (up < c)
                    {
                        r.passed = false;
                        r.detail += strf("%s %g dB: C_up %.8g < C %.8g; ", d.str().c_str(), db, up, c);
                    }
                    if (rel(app, c) > 0.02)
                    {
                        r.passed = false;
                        r.detail += strf("%s %g dB: C_app %.8g vs C %.8g; ", d.str().c_str(), db, app, c);
                    }
                }
                const auto hs = capacity_highsnr(d, 1.0);
                const auto b30 = LinkBudget::from_db(30.0, 1.0), b40 = LinkBudget::from_db(40.0, 1.0);
                const double c30 = capacity_numeric(d, b30), c40 = capacity_numeric(d, b40);
                const double asym = hs.slope * (std::log2(b40.rho) - hs.offset);
                const double slope = (c40 - c30) / (std::log2(b40.rho) - std::log2(b30.rho));
                const bool ok_hs = std::abs(c40 - asym) <= 0.05, ok_slope = std::abs(slope - 0.5) <= 0.01;
                r.passed = r.passed && ok_hs && ok_slope;
                r.detail += strf("%s: |C(40 dB) - high-SNR| = %.4f, slope %.4f; ", d.str().c_str(), std::abs(c40 - asym),
                                 slope);
            }
            r.detail += strf("min C_up - C = %.3g, max |C_app - C| / C = %.3g", min_up_gap, worst_app);
            return r;
        }

        // --- 9: large-antenna approximations at 32 antennas ----------------
        CriterionResult c9(const ValidationOracles &o, const ValidateOptions &opt)
        {
            CriterionResult r;
            r.passed = true;
            const auto mod = ModulationParams::bpsk();
            const auto b = LinkBudget::from_db(10.0, 1.0);
            const std::size_t n = 200000;
            std::uint64_t seed = opt.seed + 200;
            // The SER average is carried by rare deep fades: at 2e5 draws its
            // relative standard error is 6.7% (nd) and 2.1% (nr), too coarse
            // for a 5% bar. These counts bring both near 1%.
            for (auto [d, lim, n_ser] : {std::tuple{SystemDims(2, 2, 32), LargeLimit::nd, std::size_t{10000000}},
                                         std::tuple{SystemDims(2, 32, 2), LargeLimit::nr, std::size_t{1000000}}})
            {
                const double a = b.a(d.nr), arho = a * b.rho;
                const auto lambda = o.sample_lambda(d, a, n_ser, seed++);
                const auto mc = sample_mean(lambda, [&](double l)
                                            { return mod.a1 * q_func(std::sqrt(2.0 * mod.a2 * arho * l)); });
                const double approx = ser_large_antenna(d, b, mod, lim);
                const double g = rel(approx, mc.value);
                const bool ok = g <= 0.05;
                r.passed = r.passed && ok;
                r.detail += strf("SER %s %s-limit: approx %.5g MC %.5g +- %.2f%% (%.2f%%)%s; ", d.str().c_str(),
                                 to_string(lim).c_str(), approx, mc.value, 100 * mc.std_error / mc.value, 100 * g,
                                 ok ? "" : " FAIL");
            }
            for (auto [d, lim] : {std::pair{SystemDims(32, 2, 2), LargeLimit::ns},
                                  std::pair{SystemDims(2, 2, 32), LargeLimit::nd}})
            {
                const double a = b.a(d.nr), arho = a * b.rho;
                const auto lambda = o.sample_lambda(d, a, n, seed++);
                const auto mc = sample_mean(lambda, [&](double l) { return 0.5 * std::log2(1.0 + arho * l); });
                const double approx = capacity_large_antenna(d, b, lim);
                const double g = rel(approx, mc.value);
                const bool ok = g <= 0.03;
                r.passed = r.passed && ok;
                r.detail += strf("capacity %s %s-limit: approx %.5g MC %.5g (%.2f%%)%s; ", d.str().c_str(),
                                 to_string(lim).c_str(), approx, mc.value, 100 * g, ok ? "" : " FAIL");
            }
            return r;
        }

        // --- 10: beamformer algebra ------------------------------------------
        CriterionResult c10(const ValidationOracles &, const ValidateOptions &opt)
        {
            CriterionResult r;
            r.passed = true;
            double worst_res = 0.0, worst_ratio = 0.0;
            std::uint32_t stream = 0;
            for (auto d : {SystemDims(2, 2, 2), SystemDims(1, 2, 3), SystemDims(3, 1, 2), SystemDims(2, 3, 4),
                           SystemDims(4, 4, 4)})
                for (int i = 0; i < 200; ++i, ++stream)
                {
                    const RngSpec rng{opt.seed + 300, stream};
                    const auto s = sample_channel(d, rng);
                    const auto chk = beamformer_consistency(s, LinkBudget::from_db(10.0, 1.0), rng, 100);
                    worst_res = std::max(worst_res, chk.residual);
                    worst_ratio = std::max(worst_ratio, chk.max_ratio);
                }
            r.passed = worst_res <= 1e-8 && worst_ratio <= 1.0 + 1e-10;
            r.detail = strf("1000 samples over 5 configs: max residual %.3g, max random/optimal SNR ratio %.12f",
                            worst_res, worst_ratio);
            return r;
        }
    } // namespace

    ValidationOracles library_oracles()
    {
        ValidationOracles o;
        o.name = "library";
        o.sample_lambda = [](const SystemDims &d, double a, std::size_t n, std::uint64_t seed)
        { return sample_max_eig(d, a, n, RngSpec{seed, 0}); };
        o.integrate_half_line = [](const std::function<double(double)> &f, double hi)
        {
            std::vector<double> pts{0.0};
            for (double x = hi * 1e-8; x < hi; x *= 8.0)
                pts.push_back(x);
            pts.push_back(hi);
            QuadOptions q;
            q.rel_tol = 1e-11;
            q.abs_tol = 1e-15;
            return integrate_pieces_to_inf(f, pts, hi / 8.0, q).value;
        };
        o.identity_residual = [](double mu, int v, double beta, double m)
        { return verify_integral_identity(mu, v, beta, m); };
        return o;
    }

    std::vector<int> criterion_ids() { return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10}; }

    std::string criterion_title(int id)
    {
        switch (id)
        {
        case 1:
            return "cdf inside the 99% DKW band of 10^6 draws";
        case 2:
            return "normalisation, derivative and special-case agreement";
        case 3:
            return "moment closed forms versus quadrature";
        case 4:
            return "Bessel-K Laplace identity residual";
        case 5:
            return "outage diversity orders at 35-40 dB";
        case 6:
            return "beamforming versus OSTBC SNR gap";
        case 7:
            return "SER closed forms versus quadrature and Monte Carlo";
        case 8:
            return "capacity bound, approximation and high-SNR behaviour";
        case 9:
            return "large-antenna approximations at 32 antennas";
        case 10:
            return "beamformer algebra and optimality";
        default:
            return "unknown";
        }
    }

    CriterionResult run_criterion(int id, const ValidationOracles &o, const ValidateOptions &opt)
    {
        using Fn = CriterionResult (*)(const ValidationOracles &, const ValidateOptions &);
        static const Fn table[] = {c1, c2, c3, c4, c5, c6, c7, c8, c9, c10};
        const auto t0 = std::chrono::steady_clock::now();
        CriterionResult r;
        if (id < 1 || id > 10)
        {
            r.detail = "unknown criterion id";
        }
        else
        {
            try
            {
                r = table[id - 1](o, opt);
            }
            catch (const std::exception &e)
            {
                r.passed = false;
                r.detail = std::string("error: ") + e.what();
            }
        }
        r.id = id;
        r.title = criterion_title(id);
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return r;
    }

    std::vector<CriterionResult> run_validation(const ValidationOracles &o, const ValidateOptions &opt,
                                                const std::function<void(const CriterionResult &)> &on_result)
    {
        std::vector<CriterionResult> out;
        for (int id : opt.only.empty() ? criterion_ids() : opt.only)
        {
            out.push_back(run_criterion(id, o, opt));
            if (on_result)
                on_result(out.back());
        }
        return out;
    }

    std::string format_result(const CriterionResult &r)
    {
        return strf("[%s] %2d %s (%.1f s): ", r.passed ? "PASS" : "FAIL", r.id, r.title.c_str(), r.seconds) + r.detail;
    }
} // namespace afmimo::cli
