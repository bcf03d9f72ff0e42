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

#include <filesystem>
#include <string>
#include <vector>

namespace afmimo::cli
{
    struct FigureOptions
    {
        RngSpec rng{};
        std::size_t samples = 100000;
    };

    struct FigureDataset
    {
        std::string file; // relative file name
        SweepRequest request;
    };

    // Datasets for figure ids 1 to 6; other ids throw RequestError.
    std::vector<FigureDataset> figure_datasets(int id, const FigureOptions &opt = {});

    // Writes every dataset of the figure into dir; returns the written paths.
    std::vector<std::filesystem::path> run_figure(int id, const std::filesystem::path &dir,
                                                  const FigureOptions &opt = {});
} // namespace afmimo::cli
