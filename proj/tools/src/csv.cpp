// SPDX-License-Identifier: Apache-2.0
//
// afmimo: performance analysis of beamforming over dual-hop AF MIMO links
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#include "afmimo_cli/csv.hpp"

#include <charconv>
#include <cmath>

namespace afmimo::cli
{
    std::string CsvWriter::format(double v)
    {
        if (!std::isfinite(v))
            throw NonFiniteError("non-finite value in CSV output");
        char buf[64];
        const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
        return std::string(buf, res.ptr);
    }

    std::string CsvWriter::quote(const std::string &field)
    {
        if (field.find_first_of(",\"\r\n") == std::string::npos)
            return field;
        std::string out = "\"";
        for (char c : field)
        {
            if (c == '"')
                out += '"';
            out += c;
        }
        return out + '"';
    }

    void CsvWriter::header(const std::vector<std::string> &names)
    {
        columns_ = names.size();
        for (std::size_t i = 0; i < names.size(); ++i)
            out_ << (i ? "," : "") << quote(names[i]);
        out_ << "\r\n";
    }

    void CsvWriter::row(const std::vector<double> &values)
    {
        if (columns_ != 0 && values.size() != columns_)
            throw std::logic_error("CSV row width does not match the header");
        std::string line;
        for (std::size_t i = 0; i < values.size(); ++i)
        {
            if (i)
                line += ',';
            line += format(values[i]);
        }
        out_ << line << "\r\n";
    }
} // namespace afmimo::cli
