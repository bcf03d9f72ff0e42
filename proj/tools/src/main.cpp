// SPDX-License-Identifier: Apache-2.0
//
// afmimo: performance analysis of beamforming over dual-hop AF MIMO links
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
// ------------------------------------------------------------------------

#include "afmimo_cli/csv.hpp"
#include "afmimo_cli/figure.hpp"
#include "afmimo_cli/request.hpp"
#include "afmimo_cli/sweep.hpp"
#include "afmimo_cli/validate.hpp"

#include <afmimo/error.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace
{
    constexpr int exit_usage = 2;
    constexpr int exit_failure = 1;

    struct Flags
    {
        std::string dims = "2,2,2";
        double k = 1.0;
        std::string snr = "0:30:5";
        std::string metric = "outage";
        std::string flavor = "exact";
        double gamma_th = 1.0;
        std::string mod = "bpsk";
        double ostbc_rate = 1.0;
        std::uint64_t seed = afmimo::RngSpec{}.seed;
        std::size_t samples = 100000;
        std::string out;
        std::string large_limit;
        std::optional<double> a;
        std::string x_grid;
        int figure_id = 0;
        std::string criteria;
    };

    afmimo::cli::SweepRequest to_request(const Flags &f)
    {
        using namespace afmimo::cli;
        SweepRequest r;
        r.dims = parse_dims(f.dims);
        r.k = f.k;
        r.snr = parse_snr(f.snr);
        r.metric = parse_metric(f.metric);
        r.flavors = parse_flavors(f.flavor);
        r.outage.gamma_th = f.gamma_th;
        r.mod = parse_mod(f.mod);
        r.ostbc.rate = f.ostbc_rate;
        r.rng.seed = f.seed;
        r.samples = f.samples;
        if (!f.large_limit.empty())
        {
            try
            {
                r.large_limit = afmimo::parse_large_limit(f.large_limit);
            }
            catch (const std::exception &e)
            {
                throw RequestError(std::string("--large-limit: ") + e.what());
            }
        }
        r.a = f.a;
        if (!f.x_grid.empty())
            r.x_grid = parse_x_grid(f.x_grid);
        return r;
    }

    int run_sweep_cmd(const Flags &f)
    {
        std::ostringstream buf;
        afmimo::cli::run_sweep(to_request(f), buf);
        if (f.out.empty() || f.out == "-")
        {
            std::cout << buf.str();
            return std::cout ? 0 : exit_failure;
        }
        std::ofstream file(f.out, std::ios::binary);
        if (!(file << buf.str()))
        {
            std::cerr << "afmimo: cannot write " << f.out << "\n";
            return exit_failure;
        }
        return 0;
    }

    int run_figure_cmd(const Flags &f)
    {
        afmimo::cli::FigureOptions opt;
        opt.rng.seed = f.seed;
        opt.samples = f.samples;
        const auto written = afmimo::cli::run_figure(f.figure_id, f.out.empty() ? "." : f.out, opt);
        for (const auto &p : written)
            std::cout << p.string() << "\n";
        return 0;
    }

    int run_validate_cmd(const Flags &f)
    {
        afmimo::cli::ValidateOptions opt;
        opt.seed = f.seed;
        if (!f.criteria.empty())
        {
            std::istringstream in(f.criteria);
            for (std::string item; std::getline(in, item, ',');)
            {
                int id = 0;
                try
                {
                    id = std::stoi(item);
                }
                catch (const std::exception &)
                {
                    throw afmimo::cli::RequestError("--criteria: '" + item + "' is not an integer");
                }
                if (id < 1 || id > 10)
                    throw afmimo::cli::RequestError("--criteria: ids run from 1 to 10");
                opt.only.push_back(id);
            }
        }
        bool all = true;
        afmimo::cli::run_validation(afmimo::cli::library_oracles(), opt,
                                    [&](const afmimo::cli::CriterionResult &r)
                                    {
                                        all = all && r.passed;
                                        std::cout << afmimo::cli::format_result(r) << std::endl;
                                    });
        return all ? 0 : exit_failure;
    }
} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"afmimo: outage, SER and capacity of beamforming over dual-hop AF MIMO links"};
    app.set_config("--config", "", "Flat 'key = value' file; command-line flags take precedence");
    app.require_subcommand(1);

    Flags f;
    // Config files split comma lists into several values; join them back.
    auto list = [](CLI::Option *o) { return o->delimiter(',')->multi_option_policy(CLI::MultiOptionPolicy::Join); };
    list(app.add_option("--dims", f.dims, "Antenna counts NS,NR,ND")->capture_default_str());
    app.add_option("--k", f.k, "Relay gain ratio k = alpha / rho")->capture_default_str();
    app.add_option("--snr-db", f.snr, "SNR grid LO:HI:STEP in dB, or a single value")->capture_default_str();
    app.add_option("--metric", f.metric, "outage | ser | capacity | cdf")->capture_default_str();
    list(app.add_option("--flavor", f.flavor,
                   "Comma list of exact, closed, highsnr, large_antenna, jensen, taylor, montecarlo, ostbc_highsnr")
        ->capture_default_str());
    app.add_option("--gamma-th", f.gamma_th, "Outage threshold (linear)")->capture_default_str();
    list(app.add_option("--mod", f.mod, "bpsk | custom:a1,a2")->capture_default_str());
    app.add_option("--ostbc-rate", f.ostbc_rate, "OSTBC code rate R")->capture_default_str();
    app.add_option("--seed", f.seed, "Monte Carlo seed")->capture_default_str();
    app.add_option("--samples", f.samples, "Monte Carlo draws per point")->capture_default_str();
    app.add_option("--out", f.out, "Sweep: output file (default stdout). Figure: output directory");
    app.add_option("--large-limit", f.large_limit, "Large-antenna node: ns | nr | nd");
    app.add_option("--a", f.a, "cdf metric: fixed-gain constant a (default from --k at the first SNR)");
    list(app.add_option("--x-grid", f.x_grid, "cdf metric: LO:HI:STEP or comma list of x values"));
    list(app.add_option("--criteria", f.criteria, "validate: comma list of criterion ids (default all)"));

    auto *sweep = app.add_subcommand("sweep", "Write one CSV row per SNR (or x) point");
    auto *figure = app.add_subcommand("figure", "Write the datasets of one figure (ids 1 to 6)");
    figure->add_option("id", f.figure_id, "Figure id")->required();
    auto *validate = app.add_subcommand("validate", "Run the oracle-agreement suite and print a pass/fail table");
    for (auto *s : {sweep, figure, validate})
        s->fallthrough();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::Success &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e);
        return exit_usage;
    }

    try
    {
        if (*sweep)
            return run_sweep_cmd(f);
        if (*figure)
            return run_figure_cmd(f);
        return run_validate_cmd(f);
    }
    catch (const afmimo::cli::RequestError &e)
    {
        std::cerr << "afmimo: " << e.what() << "\n";
        return exit_usage;
    }
    catch (const afmimo::DimensionError &e)
    {
        std::cerr << "afmimo: " << e.what() << "\n";
        return exit_usage;
    }
    catch (const afmimo::DomainError &e)
    {
        std::cerr << "afmimo: " << e.what() << "\n";
        return exit_usage;
    }
    catch (const afmimo::cli::NonFiniteError &e)
    {
        std::cerr << "afmimo: " << e.what() << "\n";
        return exit_failure;
    }
    catch (const std::exception &e)
    {
        std::cerr << "afmimo: " << e.what() << "\n";
        return exit_failure;
    }
}
