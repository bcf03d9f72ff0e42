// SPDX-License-Identifier: Apache-2.0
//
// afmimo: performance analysis of beamforming over dual-hop AF MIMO links
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#pragma once

#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace afmimo::cli
{
    class NonFiniteError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // RFC 4180 writer: CRLF records, quoted fields when needed, doubles
    // with 17 significant digits.
    class CsvWriter
    {
    public:
        explicit CsvWriter(std::ostream &out) : out_(out) {}

        void header(const std::vector<std::string> &names);
        // Throws NonFiniteError on NaN or Inf.
        void row(const std::vector<double> &values);

        static std::string format(double v);
        static std::string quote(const std::string &field);

    private:
        std::ostream &out_;
        std::size_t columns_ = 0;
    };
} // namespace afmimo::cli
