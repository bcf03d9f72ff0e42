// SPDX-License-Identifier: Apache-2.0
//
// afmimo: performance analysis of beamforming over dual-hop AF MIMO links
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#include "afmimo_cli/request.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace afmimo::cli
{
    namespace
    {
        std::vector<std::string> split(const std::string &s, char sep)
        {
            std::vector<std::string> out;
            std::string item;
            std::istringstream in(s);
            while (std::getline(in, item, sep))
                out.push_back(item);
            if (!s.empty() && s.back() == sep)
                out.emplace_back();
            return out;
        }

        std::string trim(const std::string &s)
        {
            const auto b = s.find_first_not_of(" \t");
            const auto e = s.find_last_not_of(" \t");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        }

        double to_double(const std::string &raw, const std::string &what)
        {
            const std::string s = trim(raw);
            double v = 0.0;
            const auto *end = s.data() + s.size();
            const auto [ptr, ec] = std::from_chars(s.data(), end, v);
            if (s.empty() || ec != std::errc{} || ptr != end || !std::isfinite(v))
                throw RequestError(what + ": '" + raw + "' is not a finite number");
            return v;
        }

        int to_int(const std::string &raw, const std::string &what)
        {
            const std::string s = trim(raw);
            int v = 0;
            const auto *end = s.data() + s.size();
            const auto [ptr, ec] = std::from_chars(s.data(), end, v);
            if (s.empty() || ec != std::errc{} || ptr != end)
                throw RequestError(what + ": '" + raw + "' is not an integer");
            return v;
        }

        bool has(const std::vector<Flavor> &v, Flavor f) { return std::find(v.begin(), v.end(), f) != v.end(); }

        bool in_envelope(const SystemDims &d) { return d.q() <= 8 && d.p() <= 16 && d.ns <= 16; }
    } // namespace

    std::vector<double> SnrGrid::points() const
    {
        std::vector<double> out;
        const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
        for (long i = 0; i <= n; ++i)
            out.push_back(lo + static_cast<double>(i) * step);
        return out;
    }

    SystemDims parse_dims(const std::string &s)
    {
        const auto parts = split(s, ',');
        if (parts.size() != 3)
            throw RequestError("--dims expects NS,NR,ND, got '" + s + "'");
        const int ns = to_int(parts[0], "--dims"), nr = to_int(parts[1], "--dims"), nd = to_int(parts[2], "--dims");
        if (ns < 1 || nr < 1 || nd < 1)
            throw RequestError("--dims: antenna counts must be >= 1");
        return {ns, nr, nd};
    }

    SnrGrid parse_snr(const std::string &s)
    {
        const auto parts = split(s, ':');
        SnrGrid g;
        if (parts.size() == 1)
        {
            g.lo = g.hi = to_double(parts[0], "--snr-db");
            g.step = 1.0;
        }
        else if (parts.size() == 3)
        {
            g.lo = to_double(parts[0], "--snr-db");
            g.hi = to_double(parts[1], "--snr-db");
            g.step = to_double(parts[2], "--snr-db");
        }
        else
            throw RequestError("--snr-db expects LO:HI:STEP or a single value, got '" + s + "'");
        if (!(g.step > 0.0))
            throw RequestError("--snr-db: STEP must be positive so the grid is strictly increasing");
        if (g.hi < g.lo)
            throw RequestError("--snr-db: HI must be >= LO");
        if ((g.hi - g.lo) / g.step > 100000.0)
            throw RequestError("--snr-db: grid exceeds 100000 points");
        return g;
    }

    MetricKind parse_metric(const std::string &s)
    {
        if (s == "outage")
            return MetricKind::outage;
        if (s == "ser")
            return MetricKind::ser;
        if (s == "capacity")
            return MetricKind::capacity;
        if (s == "cdf")
            return MetricKind::cdf;
        throw RequestError("--metric must be outage, ser, capacity or cdf, got '" + s + "'");
    }

    std::vector<Flavor> parse_flavors(const std::string &s)
    {
        static const std::pair<const char *, Flavor> names[] = {
            {"exact", Flavor::exact},           {"closed", Flavor::closed},   {"highsnr", Flavor::highsnr},
            {"large_antenna", Flavor::large_antenna}, {"jensen", Flavor::jensen}, {"taylor", Flavor::taylor},
            {"montecarlo", Flavor::montecarlo}, {"ostbc_highsnr", Flavor::ostbc_highsnr}};
        std::vector<Flavor> out;
        for (const auto &raw : split(s, ','))
        {
            const std::string name = trim(raw);
            const auto it = std::find_if(std::begin(names), std::end(names),
                                         [&](const auto &p) { return name == p.first; });
            if (it == std::end(names))
                throw RequestError("--flavor: unknown flavor '" + name + "'");
            if (has(out, it->second))
                throw RequestError("--flavor: '" + name + "' given twice");
            out.push_back(it->second);
        }
        if (out.empty())
            throw RequestError("--flavor: at least one flavor is required");
        return out;
    }

    ModulationParams parse_mod(const std::string &s)
    {
        if (s == "bpsk")
            return ModulationParams::bpsk();
        const std::string prefix = "custom:";
        if (s.rfind(prefix, 0) == 0)
        {
            const auto parts = split(s.substr(prefix.size()), ',');
            if (parts.size() != 2)
                throw RequestError("--mod custom expects custom:a1,a2");
            ModulationParams m{to_double(parts[0], "--mod"), to_double(parts[1], "--mod"), "custom"};
            try
            {
                m.validate();
            }
            catch (const std::exception &e)
            {
                throw RequestError(std::string("--mod: ") + e.what());
            }
            return m;
        }
        throw RequestError("--mod must be bpsk or custom:a1,a2, got '" + s + "'");
    }

    std::vector<double> parse_x_grid(const std::string &s)
    {
        std::vector<double> out;
        const auto range = split(s, ':');
        if (range.size() == 3)
        {
            const double lo = to_double(range[0], "--x-grid"), hi = to_double(range[1], "--x-grid"),
                         step = to_double(range[2], "--x-grid");
            if (!(step > 0.0) || hi < lo)
                throw RequestError("--x-grid: LO:HI:STEP needs STEP > 0 and HI >= LO");
            const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
            if (n > 100000)
                throw RequestError("--x-grid: grid exceeds 100000 points");
            for (long i = 0; i <= n; ++i)
                out.push_back(lo + static_cast<double>(i) * step);
        }
        else
            for (const auto &p : split(s, ','))
                out.push_back(to_double(p, "--x-grid"));
        return out;
    }

    std::string to_string(MetricKind m)
    {
        switch (m)
        {
        case MetricKind::outage:
            return "outage";
        case MetricKind::ser:
            return "ser";
        case MetricKind::capacity:
            return "capacity";
        case MetricKind::cdf:
            return "cdf";
        }
        return "?";
    }

    std::string to_string(Flavor f)
    {
        switch (f)
        {
        case Flavor::exact:
            return "exact";
        case Flavor::closed:
            return "closed";
        case Flavor::highsnr:
            return "highsnr";
        case Flavor::large_antenna:
            return "large_antenna";
        case Flavor::jensen:
            return "jensen";
        case Flavor::taylor:
            return "taylor";
        case Flavor::montecarlo:
            return "montecarlo";
        case Flavor::ostbc_highsnr:
            return "ostbc_highsnr";
        }
        return "?";
    }

    double SweepRequest::cdf_a() const
    {
        return a ? *a : LinkBudget::from_db(snr.lo, k).a(dims.nr);
    }

    void SweepRequest::validate() const
    {
        const std::string d = dims.str();
        const int q = dims.q(), p = dims.p(), ns = dims.ns;
        if (!(k > 0.0))
            throw RequestError("--k must be positive");
        if (!(snr.step > 0.0) || snr.hi < snr.lo)
            throw RequestError("SNR grid must be strictly increasing");
        if (flavors.empty())
            throw RequestError("at least one flavor is required");
        try
        {
            outage.validate();
            mod.validate();
            ostbc.validate();
        }
        catch (const std::exception &e)
        {
            throw RequestError(e.what());
        }

        auto need = [&](bool ok, const std::string &msg)
        {
            if (!ok)
                throw RequestError(msg + ", got " + d);
        };
        auto allowed = [&](std::initializer_list<Flavor> ok)
        {
            for (Flavor f : flavors)
                if (std::find(ok.begin(), ok.end(), f) == ok.end())
                    throw RequestError("flavor " + to_string(f) + " is not defined for metric " + to_string(metric));
        };

        for (Flavor f : flavors)
        {
            const bool analytic_exact = f == Flavor::exact || f == Flavor::closed || f == Flavor::jensen ||
                                        f == Flavor::taylor;
            if (analytic_exact)
                need(in_envelope(dims), to_string(f) + " requires min(n_r, n_d) <= 8, max(n_r, n_d) <= 16, n_s <= 16");
        }

        switch (metric)
        {
        case MetricKind::outage:
            allowed({Flavor::exact, Flavor::highsnr, Flavor::montecarlo});
            if (has(flavors, Flavor::highsnr))
                need(q == 1 || (ns == 1 && p > q),
                     "highsnr outage requires min(n_r, n_d) = 1, or n_s = 1 with max(n_r, n_d) > min(n_r, n_d)");
            break;
        case MetricKind::ser:
            allowed({Flavor::exact, Flavor::closed, Flavor::highsnr, Flavor::large_antenna, Flavor::ostbc_highsnr,
                     Flavor::montecarlo});
            if (has(flavors, Flavor::closed))
                need(ns == 1 || q == 1, "closed-form SER requires n_s = 1 or min(n_r, n_d) = 1");
            if (has(flavors, Flavor::highsnr))
                need(q == 1 || (ns == 1 && p > q),
                     "highsnr SER requires min(n_r, n_d) = 1, or n_s = 1 with max(n_r, n_d) > min(n_r, n_d)");
            if (has(flavors, Flavor::ostbc_highsnr))
                need(q == 1 && p != ns, "ostbc_highsnr requires min(n_r, n_d) = 1 and max(n_r, n_d) != n_s");
            if (has(flavors, Flavor::large_antenna))
            {
                if (!large_limit)
                    throw RequestError("large_antenna requires --large-limit ns|nr|nd");
                if (*large_limit == LargeLimit::ns)
                    throw RequestError("large_antenna SER has no n_s limit; use --large-limit nr or nd");
            }
            break;
        case MetricKind::capacity:
            allowed({Flavor::exact, Flavor::highsnr, Flavor::large_antenna, Flavor::jensen, Flavor::taylor,
                     Flavor::montecarlo});
            if (has(flavors, Flavor::highsnr))
                need(q == 1, "capacity_highsnr requires min(n_r, n_d) = 1");
            if (has(flavors, Flavor::jensen) || has(flavors, Flavor::taylor))
                need(ns == 1 || q == 1, "jensen and taylor capacity require n_s = 1 or min(n_r, n_d) = 1");
            if (has(flavors, Flavor::large_antenna) && !large_limit)
                throw RequestError("large_antenna requires --large-limit ns|nr|nd");
            break;
        case MetricKind::cdf:
            allowed({Flavor::exact, Flavor::montecarlo});
            if (x_grid.empty())
                throw RequestError("metric cdf requires --x-grid");
            for (std::size_t i = 0; i < x_grid.size(); ++i)
            {
                if (!(x_grid[i] >= 0.0))
                    throw RequestError("--x-grid values must be non-negative");
                if (i > 0 && !(x_grid[i] > x_grid[i - 1]))
                    throw RequestError("--x-grid must be strictly increasing");
            }
            if (a && !(*a >= 0.0))
                throw RequestError("--a must be non-negative");
            break;
        }

        if (has(flavors, Flavor::montecarlo))
        {
            const std::size_t min_n = metric == MetricKind::cdf ? 1000 : 10000;
            if (samples < min_n)
                throw RequestError("montecarlo requires --samples >= " + std::to_string(min_n));
            if (std::max({dims.ns, dims.nr, dims.nd}) > 64)
                throw RequestError("montecarlo supports at most 64 antennas per node");
        }
    }
} // namespace afmimo::cli
