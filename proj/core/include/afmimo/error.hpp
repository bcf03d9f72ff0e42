// SPDX-License-Identifier: Apache-2.0
//
// afmimo: performance analysis of beamforming over dual-hop AF MIMO links
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#pragma once

#include <stdexcept>
#include <string>

namespace afmimo
{
    // Argument outside the mathematical domain of an operation.
    struct DomainError : std::domain_error
    {
        using std::domain_error::domain_error;
    };

    // Antenna configuration not supported by a special-case formula.
    struct DimensionError : std::invalid_argument
    {
        using std::invalid_argument::invalid_argument;
    };

    // Cancellation in a determinant kernel could not be resolved.
    struct PrecisionError : std::runtime_error
    {
        using std::runtime_error::runtime_error;
    };

    struct OverflowError : std::overflow_error
    {
        using std::overflow_error::overflow_error;
    };

    // Series, continued fraction or quadrature failed to reach tolerance.
    struct ConvergenceError : std::runtime_error
    {
        using std::runtime_error::runtime_error;
    };
} // namespace afmimo
