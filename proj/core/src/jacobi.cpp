// SPDX-License-Identifier: Apache-2.0
//
// afmimo: performance analysis of beamforming over dual-hop AF MIMO links
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

// Cyclic Jacobi for Hermitian matrices. Each rotation first removes the
// phase of a_pq, then applies the real symmetric 2x2 rotation.

#include "afmimo/error.hpp"
#include "afmimo/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace afmimo
{
    HermitianEigen jacobi_hermitian(const Eigen::MatrixXcd &input, bool want_vectors)
    {
        using cd = std::complex<double>;
        const Eigen::Index n = input.rows();
        if (input.cols() != n)
            throw DimensionError("jacobi_hermitian: matrix must be square");
        Eigen::MatrixXcd A = input;
        Eigen::MatrixXcd V;
        if (want_vectors)
            V = Eigen::MatrixXcd::Identity(n, n);

        const double scale = A.norm();
        HermitianEigen out;
        if (!std::isfinite(scale))
            throw DomainError("jacobi_hermitian: non-finite input");

        for (int sweep = 0; sweep < 64; ++sweep)
        {
            double off = 0.0;
            for (Eigen::Index p = 0; p < n; ++p)
                for (Eigen::Index q = p + 1; q < n; ++q)
                    off += std::norm(A(p, q));
            if (std::sqrt(off) <= 1e-16 * scale || off == 0.0)
                break;
            if (sweep == 63)
                throw ConvergenceError("jacobi_hermitian: no convergence after 64 sweeps");

            for (Eigen::Index p = 0; p < n; ++p)
                for (Eigen::Index q = p + 1; q < n; ++q)
                {
                    const double r = std::abs(A(p, q));
                    if (r == 0.0)
                        continue;
                    const cd e = A(p, q) / r;
                    const double app = A(p, p).real(), aqq = A(q, q).real();
                    const double tau = (aqq - app) / (2.0 * r);
                    const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                    const double c = 1.0 / std::sqrt(1.0 + t * t), s = t * c;
                    // J = [[c, s], [-s conj(e), c conj(e)]], A <- J^H A J
                    const cd j00 = c, j01 = s, j10 = -s * std::conj(e), j11 = c * std::conj(e);
                    for (Eigen::Index k = 0; k < n; ++k)
                    {
                        const cd akp = A(k, p), akq = A(k, q);
                        A(k, p) = akp * j00 + akq * j10;
                        A(k, q) = akp * j01 + akq * j11;
                    }
                    for (Eigen::Index k = 0; k < n; ++k)
                    {
                        const cd apk = A(p, k), aqk = A(q, k);
                        A(p, k) = std::conj(j00) * apk + std::conj(j10) * aqk;
                        A(q, k) = std::conj(j01) * apk + std::conj(j11) * aqk;
                    }
                    A(p, q) = A(q, p) = 0.0;
                    A(p, p) = app - t * r;
                    A(q, q) = aqq + t * r;
                    if (want_vectors)
                        for (Eigen::Index k = 0; k < n; ++k)
                        {
                            const cd vkp = V(k, p), vkq = V(k, q);
                            V(k, p) = vkp * j00 + vkq * j10;
                            V(k, q) = vkp * j01 + vkq * j11;
                        }
                }
        }

        std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
        std::iota(order.begin(), order.end(), Eigen::Index{0});
        std::sort(order.begin(), order.end(), [&](auto i, auto j) { return A(i, i).real() < A(j, j).real(); });
        out.values.resize(n);
        if (want_vectors)
            out.vectors.resize(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
        {
            const auto src = order[static_cast<std::size_t>(i)];
            out.values(i) = A(src, src).real();
            if (want_vectors)
                out.vectors.col(i) = V.col(src);
        }
        return out;
    }
} // namespace afmimo
