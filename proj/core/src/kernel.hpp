// SPDX-License-Identifier: Apache-2.0
//
// afmimo: performance analysis of beamforming over dual-hop AF MIMO links
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

// Determinant kernels of the largest-eigenvalue law, templated on the
// floating type so that badly cancelling evaluations can be repeated in
// quad precision. Entries are paired with the sum of the absolute values
// of their terms; that magnitude drives the rounding-error estimate.

#pragma once

#include "afmimo/dims.hpp"
#include "afmimo/error.hpp"
#include "detail/bessel.hpp"
#include "detail/real.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace afmimo::detail
{
    // Dense row-major square matrix with a companion magnitude matrix.
    template <class Real>
    struct MagMatrix
    {
        int n = 0;
        std::vector<Real> v, mag;

        explicit MagMatrix(int n_) : n(n_), v(static_cast<std::size_t>(n_ * n_)), mag(v.size()) {}
        Real &at(int i, int j) { return v[static_cast<std::size_t>(i * n + j)]; }
        Real &mag_at(int i, int j) { return mag[static_cast<std::size_t>(i * n + j)]; }
    };

    // Number represented as mant * 2^exp2.
    template <class Real>
    struct Scaled
    {
        Real mant = 0;
        long exp2 = 0;

        Real to(long extra = 0) const
        {
            using std::ldexp;
            return ldexp(mant, static_cast<int>(std::clamp<long>(exp2 + extra, -100000, 100000)));
        }
    };

    // In-place LU with partial pivoting: rows of lu are original rows
    // perm[r]; L is unit lower. singular is set on an exact zero pivot.
    template <class Real>
    struct Lu
    {
        int n = 0;
        std::vector<Real> lu;
        std::vector<int> perm;
        Real det = 1;
        bool singular = false;

        Real &at(int i, int j) { return lu[static_cast<std::size_t>(i * n + j)]; }
        const Real &at(int i, int j) const { return lu[static_cast<std::size_t>(i * n + j)]; }
    };

    template <class Real>
    Lu<Real> lu_factor(std::vector<Real> a, int n)
    {
        using std::abs;
        Lu<Real> f;
        f.n = n;
        f.lu = std::move(a);
        f.perm.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            f.perm[static_cast<std::size_t>(i)] = i;
        for (int c = 0; c < n; ++c)
        {
            int piv = c;
            Real best = abs(f.at(c, c));
            for (int r = c + 1; r < n; ++r)
            {
                const Real cand = abs(f.at(r, c));
                if (cand > best)
                {
                    best = cand;
                    piv = r;
                }
            }
            if (best == 0)
            {
                f.singular = true;
                f.det = 0;
                return f;
            }
            if (piv != c)
            {
                for (int k = 0; k < n; ++k)
                    std::swap(f.at(c, k), f.at(piv, k));
                std::swap(f.perm[static_cast<std::size_t>(c)], f.perm[static_cast<std::size_t>(piv)]);
                f.det = -f.det;
            }
            const Real d = f.at(c, c);
            f.det *= d;
            for (int r = c + 1; r < n; ++r)
            {
                const Real m = f.at(r, c) / d;
                f.at(r, c) = m;
                if (m == 0)
                    continue;
                for (int k = c + 1; k < n; ++k)
                    f.at(r, k) -= m * f.at(c, k);
            }
        }
        return f;
    }

    // First-order rounding bound for det(A) from its LU factors. Entry
    // (i, j) carries entry_rel * eps * mag(i, j) from its own evaluation
    // plus the backward error 2n eps (|L||U|)(i, j) of the factorisation;
    // each enters the determinant through its cofactor det * inv(A)(j, i).
    template <class Real>
    Real det_rounding_bound(const Lu<Real> &f, const std::vector<Real> &mag)
    {
        using std::abs;
        constexpr int entry_rel = 64;
        const int n = f.n;
        // |L||U| in factor row order.
        std::vector<Real> lu_abs(static_cast<std::size_t>(n * n), Real(0));
        for (int r = 0; r < n; ++r)
            for (int j = 0; j < n; ++j)
            {
                Real acc = 0;
                for (int k = 0; k <= std::min(r, j); ++k)
                    acc += (k == r ? Real(1) : abs(f.at(r, k))) * abs(f.at(k, j));
                lu_abs[static_cast<std::size_t>(r * n + j)] = acc;
            }
        // Column k of inv(A) solves A y = e_k, i.e. L U y = P e_k.
        Real sum = 0;
        std::vector<Real> y(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k)
        {
            for (int r = 0; r < n; ++r)
            {
                Real v = f.perm[static_cast<std::size_t>(r)] == k ? Real(1) : Real(0);
                for (int c = 0; c < r; ++c)
                    v -= f.at(r, c) * y[static_cast<std::size_t>(c)];
                y[static_cast<std::size_t>(r)] = v;
            }
            for (int r = n - 1; r >= 0; --r)
            {
                Real v = y[static_cast<std::size_t>(r)];
                for (int c = r + 1; c < n; ++c)
                    v -= f.at(r, c) * y[static_cast<std::size_t>(c)];
                y[static_cast<std::size_t>(r)] = v / f.at(r, r);
            }
            // y[j] = inv(A)(j, k) weights the errors of entry (k, j).
            const auto rk = static_cast<std::size_t>(
                std::find(f.perm.begin(), f.perm.end(), k) - f.perm.begin());
            for (int j = 0; j < n; ++j)
            {
                const Real w = abs(y[static_cast<std::size_t>(j)]);
                sum += w * (entry_rel * mag[static_cast<std::size_t>(k * n + j)] +
                            Real(2 * n) * lu_abs[rk * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)]);
            }
        }
        return abs(f.det) * sum * eps<Real>();
    }

    // Power-of-two row equilibration followed by LU. The error estimate is
    // the cofactor-weighted first-order bound above; it tracks the actual
    // conditioning, which for these Gamma-structured matrices sits many
    // orders below a norm-product (Hadamard) bound.
    template <class Real>
    std::pair<Scaled<Real>, Scaled<Real>> det_with_error(MagMatrix<Real> m, std::vector<int> *row_exp = nullptr)
    {
        using std::abs, std::frexp, std::ldexp, std::sqrt;
        const int n = m.n;
        long total = 0;
        Real hadamard = 1;
        if (row_exp)
            row_exp->assign(static_cast<std::size_t>(n), 0);
        for (int i = 0; i < n; ++i)
        {
            Real big = 0;
            for (int j = 0; j < n; ++j)
                big = std::max(big, abs(m.mag_at(i, j)));
            int e = 0;
            if (big > 0)
                frexp(big, &e);
            Real norm2 = 0;
            for (int j = 0; j < n; ++j)
            {
                m.at(i, j) = ldexp(m.at(i, j), -e);
                m.mag_at(i, j) = ldexp(m.mag_at(i, j), -e);
                norm2 += m.mag_at(i, j) * m.mag_at(i, j);
            }
            hadamard *= sqrt(norm2);
            total += e;
            if (row_exp)
                (*row_exp)[static_cast<std::size_t>(i)] = e;
        }
        const auto f = lu_factor(m.v, n);
        // A zero pivot leaves no cofactors to weight with; fall back to the
        // norm-product bound.
        const Real err = f.singular ? Real(16) * n * eps<Real>() * hadamard : det_rounding_bound(f, m.mag);
        return {Scaled<Real>{f.det, total}, Scaled<Real>{err, total}};
    }

    // Tables shared by every kernel evaluation at one (dims, a, x).
    template <class Real>
    struct KernelContext
    {
        SystemDims dims;
        Real a, x;
        Real damp; // e^{-a x - 2 sqrt x}
        std::vector<Real> st;   // e^{2 sqrt x} x^{v/2} K_v(2 sqrt x)
        std::vector<Real> xpow; // x^k
        std::vector<Real> fact;
        std::vector<std::vector<Real>> binom;
        std::vector<Real> apow;

        KernelContext(const SystemDims &d, const Real &a_, const Real &x_) : dims(d), a(a_), x(x_)
        {
            using std::exp, std::sqrt;
            const int q = d.q(), p = d.p(), t = std::max(d.t(), d.ns);
            const int vmax = q + p + t + 4;
            const int nmax = 2 * (q + p + t) + 8;
            fact = factorials<Real>(2 * nmax);
            binom = binomials<Real>(nmax);
            apow.assign(static_cast<std::size_t>(nmax) + 1, Real(1));
            for (int l = 1; l <= nmax; ++l)
                apow[l] = apow[l - 1] * a;
            xpow.assign(static_cast<std::size_t>(nmax) + 1, Real(1));
            if (x > 0)
            {
                for (int k = 1; k <= nmax; ++k)
                    xpow[k] = xpow[k - 1] * x;
                st = scaled_bessel_s(x, vmax);
                damp = exp(-a * x - 2 * sqrt(x));
            }
            else
            {
                for (int k = 1; k <= nmax; ++k)
                    xpow[k] = 0;
                // x^{v/2} K_v(2 sqrt x) -> Gamma(v) / 2 as x -> 0 (v >= 1)
                st.assign(static_cast<std::size_t>(vmax) + 1, Real(0));
                for (int v = 1; v <= vmax; ++v)
                    st[v] = fact[v - 1] / 2;
                damp = 1;
            }
        }

        Real gamma_int(int n) const { return fact[static_cast<std::size_t>(n - 1)]; }

        // Scaled x^k x^{nu/2} K_{|nu|}(2 sqrt x); requires k + min(nu, 0) >= 0.
        Real T(int k, int nu) const
        {
            const int e = nu >= 0 ? k : k + nu;
            const int v = nu >= 0 ? nu : -nu;
            if (x == 0)
            {
                if (e > 0)
                    return Real(0);
                if (v == 0)
                    throw DomainError("kernel evaluated at the logarithmic point x = 0");
                return st[v];
            }
            return xpow[e] * st[v];
        }
    };

    // Row i (1-based) of the cdf kernel.
    template <class Real>
    void cdf_row(const KernelContext<Real> &c, int i, MagMatrix<Real> &m)
    {
        const SystemDims &d = c.dims;
        const int q = d.q(), p = d.p(), s = d.s(), t = d.t();
        for (int j = 1; j <= q; ++j)
        {
            Real val = 0, mag = 0;
            if (i <= q - s)
            {
                const int n = q - i + j - 1;
                for (int l = 0; l <= n; ++l)
                    val += c.binom[n][l] * c.apow[l] * c.gamma_int(p + l + i - j);
                mag = val;
                if ((q - s - i) % 2 != 0)
                    val = -val;
            }
            else
            {
                const int th = d.theta(i, j), ta = d.tau(i, j);
                Real A = 0, B = 0;
                for (int l = 0; l <= ta; ++l)
                    A += c.binom[ta][l] * c.apow[l] * c.gamma_int(th + l + 1);
                for (int k = 0; k <= t - i; ++k)
                {
                    Real inner = 0;
                    for (int l = 0; l <= ta + k; ++l)
                        inner += c.binom[ta + k][l] * c.apow[l] * c.T(k, th + l - k + 1);
                    B += inner / c.fact[k];
                }
                B *= 2 * c.damp;
                val = A - B;
                mag = A + B;
            }
            m.at(i - 1, j - 1) = val;
            m.mag_at(i - 1, j - 1) = mag;
        }
    }

    // Row i of the cdf kernel differentiated in x.
    template <class Real>
    void derivative_row(const KernelContext<Real> &c, int i, MagMatrix<Real> &m)
    {
        const SystemDims &d = c.dims;
        const int q = d.q(), t = d.t();
        for (int j = 1; j <= q; ++j)
        {
            const int th = d.theta(i, j), ta = d.tau(i, j);
            Real val = 0, mag = 0;
            for (int k = 0; k <= t - i; ++k)
            {
                Real inner = 0, inner_mag = 0;
                for (int l = 0; l <= ta + k; ++l)
                {
                    const int nu = th + l - k + 1;
                    const Real w = c.binom[ta + k][l] * c.apow[l];
                    const Real up = c.a * c.T(k, nu) + c.T(k, nu - 1);
                    const Real dn = k > 0 ? Real(k) * c.T(k - 1, nu) : Real(0);
                    inner += w * (up - dn);
                    inner_mag += w * (up + dn);
                }
                val += inner / c.fact[k];
                mag += inner_mag / c.fact[k];
            }
            m.at(i - 1, j - 1) = 2 * c.damp * val;
            m.mag_at(i - 1, j - 1) = 2 * c.damp * mag;
        }
    }

    template <class Real>
    Real log_norm(const SystemDims &d)
    {
        using std::log;
        auto f = factorials<Real>(d.p() + 1);
        Real r = 0;
        for (int i = 1; i <= d.q(); ++i)
            r += log(f[d.q() - i]) + log(f[d.p() - i]);
        return r;
    }

    // Divide a scaled value by prod Gamma(q-i+1) Gamma(p-i+1).
    template <class Real>
    Real normalise(const Scaled<Real> &v, const SystemDims &d)
    {
        using std::frexp, std::ldexp;
        auto f = factorials<Real>(d.p() + 1);
        Real norm = 1;
        long ne = 0;
        for (int i = 1; i <= d.q(); ++i)
        {
            norm *= f[d.q() - i] * f[d.p() - i];
            int e = 0;
            norm = frexp(norm, &e);
            ne += e;
        }
        Scaled<Real> out{v.mant / norm, v.exp2 - ne};
        return out.to();
    }

    inline int cdf_sign(const SystemDims &d)
    {
        return (d.ns * (d.t() - d.ns)) % 2 == 0 ? 1 : -1;
    }

    // sign * det(Phi(x)) / norm
    template <class Real>
    Estimate<Real> general_cdf(const SystemDims &d, const Real &a, const Real &x)
    {
        KernelContext<Real> c(d, a, x);
        MagMatrix<Real> m(d.q());
        for (int i = 1; i <= d.q(); ++i)
            cdf_row(c, i, m);
        auto [det, err] = det_with_error(std::move(m));
        return {cdf_sign(d) * normalise(det, d), normalise(err, d)};
    }

    // sign * sum_l det(Phi_l(x)) / norm
    template <class Real>
    Estimate<Real> general_pdf(const SystemDims &d, const Real &a, const Real &x)
    {
        using std::abs;
        KernelContext<Real> c(d, a, x);
        const int q = d.q(), s = d.s();
        MagMatrix<Real> base(q);
        for (int i = 1; i <= q; ++i)
            cdf_row(c, i, base);
        Estimate<Real> out;
        for (int l = q - s + 1; l <= q; ++l)
        {
            MagMatrix<Real> m = base;
            derivative_row(c, l, m);
            auto [det, err] = det_with_error(std::move(m));
            out.value += normalise(det, d);
            out.error += normalise(err, d);
        }
        out.value *= cdf_sign(d);
        return out;
    }

    struct EscalationResult
    {
        double value = 0.0;
        double error = 0.0;
        bool quad = false;
    };

    inline constexpr double double_rel_target = 1e-12;
    inline constexpr double final_rel_limit = 1e-3;
    inline constexpr double resolution_floor = 1e-20;

    // Evaluate in double, then quad, then wide precision, stopping at the
    // first tier whose error estimate meets the relative target. The wide
    // tier also accepts 1e-3 relative or an absolute error below the
    // resolution floor. fn is a generic lambda returning Estimate<Real>.
    template <class Fn>
    EscalationResult escalate(Fn &&fn, const char *what, double rel_target = double_rel_target)
    {
        auto meets = [&](double v, double e) { return std::isfinite(v) && std::isfinite(e) && e <= rel_target * std::abs(v); };
        const auto d = fn.template operator()<double>();
        if (meets(d.value, d.error))
            return {d.value, d.error, false};
        const auto qv = fn.template operator()<quad>();
        const double vq = to_double(qv.value), eq = to_double(qv.error);
        if (meets(vq, eq))
            return {vq, eq, true};
        const auto wv = fn.template operator()<wide>();
        const double v = to_double(wv.value), e = to_double(wv.error);
        if (!std::isfinite(v))
            throw PrecisionError(std::string(what) + ": non-finite value in extended precision");
        if (e <= final_rel_limit * std::abs(v) || e <= resolution_floor)
            return {v, e, true};
        std::ostringstream msg;
        msg << what << ": cancellation exceeds extended precision (value " << v << ", error " << e << ")";
        throw PrecisionError(msg.str());
    }

    // Clamp a probability that is within rounding of [0, 1].
    inline double clamp_probability(const EscalationResult &r)
    {
        const double slack = std::max(1e-9, r.error);
        if (r.value < 0.0 && r.value >= -slack)
            return 0.0;
        if (r.value > 1.0 && r.value <= 1.0 + 1e-9)
            return 1.0;
        return r.value;
    }

    inline double clamp_density(const EscalationResult &r)
    {
        if (r.value < 0.0 && r.value >= -std::max(r.error, 1e-300))
            return 0.0;
        return r.value;
    }
} // namespace afmimo::detail
