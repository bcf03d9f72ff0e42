// SPDX-License-Identifier: Apache-2.0
//
// afmimo: performance analysis of beamforming over dual-hop AF MIMO links
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#include "afmimo_cli/figure.hpp"

#include "afmimo_cli/sweep.hpp"

#include <fstream>
#include <sstream>

namespace afmimo::cli
{
    namespace
    {
        std::string name(int id, MetricKind m, const SystemDims &d)
        {
            std::ostringstream s;
            s << "fig" << id << '_' << to_string(m) << '_' << d.ns << '_' << d.nr << '_' << d.nd << ".csv";
            return s.str();
        }

        SweepRequest base(const SystemDims &d, MetricKind m, double k, SnrGrid snr, std::vector<Flavor> flavors,
                          const FigureOptions &opt)
        {
            SweepRequest r;
            r.dims = d;
            r.metric = m;
            r.k = k;
            r.snr = snr;
            r.flavors = std::move(flavors);
            r.rng = opt.rng;
            r.samples = opt.samples;
            return r;
        }
    } // namespace

    std::vector<FigureDataset> figure_datasets(int id, const FigureOptions &opt)
    {
        using F = Flavor;
        std::vector<FigureDataset> out;
        auto add = [&](int fig, SweepRequest r) { out.push_back({name(fig, r.metric, r.dims), std::move(r)}); };
        switch (id)
        {
        case 1:
            // cdf of lambda_max at k = 1, 10 dB.
            for (auto d : {SystemDims(2, 2, 2), SystemDims(2, 3, 2), SystemDims(1, 3, 3), SystemDims(3, 1, 2)})
            {
                auto r = base(d, MetricKind::cdf, 1.0, {10.0, 10.0, 1.0}, {F::exact, F::montecarlo}, opt);
                r.x_grid = parse_x_grid("0.25:20:0.25");
                add(1, std::move(r));
            }
            break;
        case 2:
            // Outage versus n_r, alpha = rho.
            for (int nr : {1, 2, 5, 10})
                for (auto [ns, nd] : {std::pair{3, 2}, std::pair{2, 3}})
                    add(2, base({ns, nr, nd}, MetricKind::outage, 1.0, {0.0, 30.0, 1.0}, {F::exact}, opt));
            break;
        case 3:
            // n_s = 3, n_r = 1, alpha = 0.5 rho.
            for (int nd : {2, 3, 4})
                add(3, base({3, 1, nd}, MetricKind::outage, 0.5, {0.0, 40.0, 2.0},
                            {F::exact, F::highsnr, F::montecarlo}, opt));
            break;
        case 4:
            // SER: exact versus large-antenna approximations at 10 antennas.
            for (auto [d, lim] : {std::pair{SystemDims(2, 10, 2), LargeLimit::nr},
                                  std::pair{SystemDims(2, 2, 10), LargeLimit::nd},
                                  std::pair{SystemDims(3, 10, 2), LargeLimit::nr},
                                  std::pair{SystemDims(3, 2, 10), LargeLimit::nd}})
            {
                auto r = base(d, MetricKind::ser, 1.0, {0.0, 20.0, 2.0}, {F::exact, F::large_antenna, F::montecarlo},
                              opt);
                r.large_limit = lim;
                add(4, std::move(r));
            }
            break;
        case 5:
            // Beamforming versus OSTBC, (2,1,3), BPSK, R = 1.
            add(5, base({2, 1, 3}, MetricKind::ser, 1.0, {0.0, 30.0, 1.0}, {F::exact, F::highsnr, F::ostbc_highsnr},
                        opt));
            break;
        case 6:
            // Capacity: exact versus large-antenna approximations at 10 antennas.
            for (auto [d, lim] : {std::pair{SystemDims(10, 2, 2), LargeLimit::ns},
                                  std::pair{SystemDims(2, 10, 2), LargeLimit::nr},
                                  std::pair{SystemDims(2, 2, 10), LargeLimit::nd}})
            {
                auto r = base(d, MetricKind::capacity, 1.0, {0.0, 30.0, 2.0}, {F::exact, F::large_antenna}, opt);
                r.large_limit = lim;
                add(6, std::move(r));
            }
            break;
        default:
            throw RequestError("unknown figure id " + std::to_string(id) + "; valid ids are 1 to 6");
        }
        return out;
    }

    std::vector<std::filesystem::path> run_figure(int id, const std::filesystem::path &dir, const FigureOptions &opt)
    {
        const auto sets = figure_datasets(id, opt);
        std::filesystem::create_directories(dir);
        std::vector<std::filesystem::path> written;
        for (const auto &s : sets)
        {
            std::ostringstream buf;
            run_sweep(s.request, buf);
            const auto path = dir / s.file;
            std::ofstream f(path, std::ios::binary);
            if (!f)
                throw std::runtime_error("cannot open " + path.string() + " for writing");
            f << buf.str();
            if (!f)
                throw std::runtime_error("write failed for " + path.string());
            written.push_back(path);
        }
        return written;
    }
} // namespace afmimo::cli
