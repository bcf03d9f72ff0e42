// SPDX-License-Identifier: Apache-2.0
//
// afmimo: performance analysis of beamforming over dual-hop AF MIMO links
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#pragma once

#include "afmimo_cli/request.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace afmimo::cli
{
    // One analytical value for a flavor at one SNR point.
    double evaluate(const SweepRequest &req, Flavor flavor, double snr_db);

    std::vector<std::string> sweep_columns(const SweepRequest &req);

    // Validates, then writes the header and one row per grid point.
    void run_sweep(const SweepRequest &req, std::ostream &out);
} // namespace afmimo::cli
