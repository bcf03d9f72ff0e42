// SPDX-License-Identifier: Apache-2.0
//
// afmimo: performance analysis of beamforming over dual-hop AF MIMO links
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#pragma once

#include "afmimo/dims.hpp"

#include <functional>
#include <string>
#include <vector>

namespace afmimo
{
    // Kernel matrix after per-row power-of-two equilibration:
    //   true_entry(i, j) = entries[i * order + j] * 2^{row_log2_scales[i]}
    struct KernelMatrix
    {
        int order = 0;
        std::vector<double> entries;
        std::vector<int> row_log2_scales;

        double at(int i, int j) const { return entries[static_cast<std::size_t>(i * order + j)]; }
        double true_entry(int i, int j) const;
    };

    // Entry (i, j), 1-based, of the cdf kernel matrix.
    double phi_entry(const SystemDims &dims, double a, double x, int i, int j);

    KernelMatrix kernel_matrix(const SystemDims &dims, double a, double x);

    // Cdf kernel with row l (1-based, l > q - s) replaced by its derivative.
    KernelMatrix kernel_derivative_matrix(const SystemDims &dims, double a, double x, int l);

    // Distribution of the largest eigenvalue of
    //   H1^H H2^H (a H2 H2^H + I)^{-1} H2 H1.
    class MaxEigDistribution
    {
      public:
        MaxEigDistribution(const SystemDims &dims, double a);

        const SystemDims &dims() const { return dims_; }
        double a() const { return a_; }
        double norm_log() const { return norm_log_; }
        int sign() const { return sign_; }

        double cdf(double x) const;
        double pdf(double x) const;

        // Relative error accepted from the double-precision pass before the
        // evaluation is repeated in quad precision (default 1e-12).
        MaxEigDistribution &set_rel_target(double r);
        double rel_target() const { return rel_target_; }

        // Point x = 2^k beyond which 1 - cdf is below max(tol, 16 rel_target).
        double upper_quantile_bound(double tol = 1e-14) const;

      private:
        SystemDims dims_;
        double a_;
        double norm_log_;
        int sign_;
        double rel_target_ = 1e-12;
    };

    double cdf_exact(const MaxEigDistribution &dist, double x);
    double pdf_exact(const MaxEigDistribution &dist, double x);

    double cdf_ns1(const SystemDims &dims, double a, double x);
    double cdf_q1(const SystemDims &dims, double a, double x);
    double pdf_ns1(const SystemDims &dims, double a, double x);
    double pdf_q1(const SystemDims &dims, double a, double x);

    // Single-sum form of the q = 1 density.
    double pdf_q1_single_sum(const SystemDims &dims, double a, double x);

    // Cofactors D_1..D_q of the constant n_s = 1 matrix.
    std::vector<double> ns1_cofactors(const SystemDims &dims, double a);

    // Small-x coefficient v1 (n_s = 1, requires p > q): cdf ~ v1 x^q / q.
    double asym_ns1(const SystemDims &dims, double a);

    // Coefficient v2 for q = 1; x enters only in the p = n_s branch.
    double asym_q1_coefficient(const SystemDims &dims, double a, double x);

    // Leading small-x cdf value (v2 / m) x^m for q = 1.
    double asym_q1(const SystemDims &dims, double a, double x);

    double moment_ns1(const SystemDims &dims, double a, int m_order);
    double moment_q1(const SystemDims &dims, double a, int m_order);

    // Numerical moment int x^m pdf(x) dx, used for cross-checks.
    double moment_numeric(const MaxEigDistribution &dist, int m_order);

    enum class LargeLimit
    {
        ns,
        nd,
        nr
    };

    LargeLimit parse_large_limit(const std::string &s);
    std::string to_string(LargeLimit which);

    struct WishartDims
    {
        int rows = 1; // receive count of the base Gaussian matrix
        int cols = 1; // transmit count
    };

    // lambda_max ~ map(lambda_w) with lambda_w the largest eigenvalue of a
    // complex Wishart matrix built on a rows x cols Gaussian matrix.
    struct EquivalentModel
    {
        LargeLimit which = LargeLimit::nd;
        WishartDims base;
        double scale = 1.0; // multiplier in front of lambda_w
        double a = 0.0;     // only the ns branch uses the saturating map

        double map(double lambda_w) const;
        std::string describe() const;
    };

    EquivalentModel large_antenna_equiv(const SystemDims &dims, double a, LargeLimit which);

    // P(lambda_max(W) <= x) for W = G^H G with G a c2 x c1 i.i.d. CN(0,1) matrix.
    double wishart_maxeig_cdf(int c1, int c2, double x);
} // namespace afmimo
