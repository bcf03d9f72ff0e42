// SPDX-License-Identifier: Apache-2.0
//
// afmimo: performance analysis of beamforming over dual-hop AF MIMO links
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#pragma once

#include <afmimo/dims.hpp>

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace afmimo::cli
{
    // Reference routes the suite compares the analytical library against.
    struct ValidationOracles
    {
        std::string name;
        // n independent draws of lambda_max.
        std::function<std::vector<double>(const SystemDims &, double a, std::size_t n, std::uint64_t seed)>
            sample_lambda;
        // int_0^inf f(x) dx for a density-weighted integrand whose mass sits below hi.
        std::function<double(const std::function<double(double)> &f, double hi)> integrate_half_line;
        // Relative residual of the Bessel-K Laplace identity at (mu, v, beta, m).
        std::function<double(double mu, int v, double beta, double m)> identity_residual;
    };

    // Library Monte Carlo, GK15 quadrature and the library residual check.
    ValidationOracles library_oracles();

    struct CriterionResult
    {
        int id = 0;
        std::string title;
        bool passed = false;
        std::string detail;
        double seconds = 0.0;
    };

    struct ValidateOptions
    {
        std::uint64_t seed = 20100519;
        std::vector<int> only; // empty: all ten
    };

    std::vector<int> criterion_ids();
    std::string criterion_title(int id);

    CriterionResult run_criterion(int id, const ValidationOracles &oracles, const ValidateOptions &opt = {});

    // Runs the selected criteria in order; on_result fires after each one.
    std::vector<CriterionResult> run_validation(const ValidationOracles &oracles, const ValidateOptions &opt = {},
                                                const std::function<void(const CriterionResult &)> &on_result = {});

    // One line per criterion: "[PASS] 3 title (1.2 s): detail".
    std::string format_result(const CriterionResult &r);
} // namespace afmimo::cli
