// SPDX-License-Identifier: Apache-2.0
//
// afmimo: performance analysis of beamforming over dual-hop AF MIMO links
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#include "afmimo_cli/sweep.hpp"

#include "afmimo_cli/csv.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <optional>
#include <sstream>
#include <thread>

namespace afmimo::cli
{
    namespace
    {
        // Runs fn(i) for i in [0, n) on the worker pool; rethrows the first failure.
        template <class Fn>
        void parallel_for(std::size_t n, Fn fn)
        {
            const std::size_t workers = std::min<std::size_t>(worker_count(), n);
            std::atomic<std::size_t> next{0};
            std::atomic<bool> failed{false};
            std::exception_ptr failure;
            auto run = [&]
            {
                for (std::size_t i; (i = next.fetch_add(1)) < n && !failed.load();)
                {
                    try
                    {
                        fn(i);
                    }
                    catch (...)
                    {
                        if (!failed.exchange(true))
                            failure = std::current_exception();
                    }
                }
            };
            if (workers <= 1)
                run();
            else
            {
                std::vector<std::thread> pool;
                for (std::size_t w = 0; w < workers; ++w)
                    pool.emplace_back(run);
                for (auto &t : pool)
                    t.join();
            }
            if (failure)
                std::rethrow_exception(failure);
        }

        Metric mc_metric(const SweepRequest &req)
        {
            switch (req.metric)
            {
            case MetricKind::outage:
                return req.outage;
            case MetricKind::ser:
                return req.mod;
            default:
                return CapacityMetric{};
            }
        }
    } // namespace

    double evaluate(const SweepRequest &req, Flavor flavor, double snr_db)
    {
        const LinkBudget b = LinkBudget::from_db(snr_db, req.k);
        const SystemDims &d = req.dims;
        switch (req.metric)
        {
        case MetricKind::outage:
            if (flavor == Flavor::exact)
                return outage_exact(d, b, req.outage);
            if (flavor == Flavor::highsnr)
                return outage_highsnr(d, b, req.outage);
            break;
        case MetricKind::ser:
            switch (flavor)
            {
            case Flavor::exact:
                return ser_numeric(d, b, req.mod);
            case Flavor::closed:
                return d.ns == 1 ? ser_closed_ns1(d, b, req.mod) : ser_closed_q1(d, b, req.mod);
            case Flavor::highsnr:
                return ser_highsnr(d, b, req.mod);
            case Flavor::large_antenna:
                return ser_large_antenna(d, b, req.mod, req.large_limit.value());
            case Flavor::ostbc_highsnr:
                return ser_ostbc_highsnr(d, b, req.mod, req.ostbc);
            default:
                break;
            }
            break;
        case MetricKind::capacity:
            switch (flavor)
            {
            case Flavor::exact:
                return capacity_numeric(d, b);
            case Flavor::highsnr:
            {
                const auto hs = capacity_highsnr(d, req.k);
                return hs.slope * (std::log2(b.rho) - hs.offset);
            }
            case Flavor::large_antenna:
                return capacity_large_antenna(d, b, req.large_limit.value());
            case Flavor::jensen:
                return capacity_jensen(d, b);
            case Flavor::taylor:
                return capacity_taylor(d, b);
            default:
                break;
            }
            break;
        case MetricKind::cdf:
            break;
        }
        throw RequestError("flavor " + to_string(flavor) + " cannot be evaluated for metric " + to_string(req.metric));
    }

    std::vector<std::string> sweep_columns(const SweepRequest &req)
    {
        std::vector<std::string> cols{req.metric == MetricKind::cdf ? "x" : "snr_db"};
        for (Flavor f : req.flavors)
        {
            cols.push_back(to_string(f));
            if (f == Flavor::montecarlo)
                cols.push_back(req.metric == MetricKind::cdf ? "montecarlo_dkw_band" : "montecarlo_stderr");
        }
        return cols;
    }

    void run_sweep(const SweepRequest &req, std::ostream &out)
    {
        req.validate();
        const bool is_cdf = req.metric == MetricKind::cdf;
        const std::vector<double> grid = is_cdf ? req.x_grid : req.snr.points();
        const auto cols = sweep_columns(req);
        std::vector<std::vector<double>> rows(grid.size(), std::vector<double>(cols.size(), 0.0));
        for (std::size_t i = 0; i < grid.size(); ++i)
            rows[i][0] = grid[i];

        // Analytical cells in parallel; each cell is independent.
        struct Cell
        {
            std::size_t row, col;
            Flavor flavor;
        };
        std::vector<Cell> cells;
        std::size_t col = 1;
        for (Flavor f : req.flavors)
        {
            if (f != Flavor::montecarlo)
                for (std::size_t i = 0; i < grid.size(); ++i)
                    cells.push_back({i, col, f});
            col += f == Flavor::montecarlo ? 2 : 1;
        }
        std::optional<MaxEigDistribution> dist;
        if (is_cdf)
            dist.emplace(req.dims, req.cdf_a());
        parallel_for(cells.size(),
                     [&](std::size_t c)
                     {
                         const auto &cell = cells[c];
                         const double x = grid[cell.row];
                         rows[cell.row][cell.col] = is_cdf ? dist->cdf(x) : evaluate(req, cell.flavor, x);
                     });

        // Monte Carlo columns: one substream per grid point, fixed order.
        col = 1;
        for (Flavor f : req.flavors)
        {
            if (f == Flavor::montecarlo)
            {
                if (is_cdf)
                {
                    const auto est = estimate_cdf(req.dims, req.cdf_a(), grid, req.samples, req.rng);
                    for (std::size_t i = 0; i < grid.size(); ++i)
                    {
                        rows[i][col] = est.value[i];
                        rows[i][col + 1] = est.band;
                    }
                }
                else
                    for (std::size_t i = 0; i < grid.size(); ++i)
                    {
                        RngSpec rng = req.rng;
                        rng.stream = req.rng.stream + static_cast<std::uint32_t>(i);
                        const auto est = estimate_metric(req.dims, LinkBudget::from_db(grid[i], req.k),
                                                         mc_metric(req), req.samples, rng);
                        rows[i][col] = est.value;
                        rows[i][col + 1] = est.std_error;
                    }
            }
            col += f == Flavor::montecarlo ? 2 : 1;
        }

        // Format everything before writing so a non-finite cell leaves no partial output.
        std::ostringstream buf;
        CsvWriter w(buf);
        w.header(cols);
        for (const auto &r : rows)
            w.row(r);
        out << buf.str();
    }
} // namespace afmimo::cli
