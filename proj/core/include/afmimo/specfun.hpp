// SPDX-License-Identifier: Apache-2.0
//
// afmimo: performance analysis of beamforming over dual-hop AF MIMO links
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#pragma once

namespace afmimo
{
    struct FnAccuracy
    {
        double rel_tol = 1e-12;
        int max_terms = 500;

        void validate() const; // throws DomainError
    };

    inline constexpr double euler_gamma = 0.57721566490153286061;

    double ln_gamma(double x);

    // Lower incomplete gamma for integer order, finite-sum form.
    double lower_inc_gamma_int(int n, double x);

    // Regularised upper incomplete gamma Q(n, x) = Gamma(n, x) / Gamma(n).
    double upper_inc_gamma_q_int(int n, double x);

    // K_v(x) for integer v; K_{-v} = K_v.
    double bessel_k_int(int v, double x);

    // e^x K_v(x), finite well past the double underflow of K_v itself.
    double bessel_k_int_scaled(int v, double x);

    // Confluent hypergeometric U(a, b, z) for a > 0, z > 0.
    double hyp_u(double a, double b, double z, const FnAccuracy &acc = {});

    double expint_n(int n, double x);

    // e^x E_n(x)
    double expint_n_scaled(int n, double x);

    double digamma_int(int n);

    double gauss_q(double x);

    // Relative residual between direct quadrature of
    //   int_0^inf x^mu e^{-m x} K_v(2 sqrt(beta x)) dx
    // and its Gamma * U closed form.
    double verify_integral_identity(double mu, int v, double beta, double m_rate);

    // Closed form side of the identity above.
    double bessel_laplace_closed(double mu, int v, double beta, double m_rate);
} // namespace afmimo
