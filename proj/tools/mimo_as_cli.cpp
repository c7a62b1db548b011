// SPDX-License-Identifier: Apache-2.0
//
// mimo_as: analytical and Monte Carlo rate evaluation for multi-cell correlated MIMO
// Copyright (C) 2026 The mimo_as authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Command-line front end: `simulate` runs a configured sweep, `report` runs a built-in figure preset.

#include "mimo_as/config.hpp"
#include "mimo_as/csv_io.hpp"
#include "mimo_as/errors.hpp"
#include "mimo_as/parallel.hpp"
#include "mimo_as/report.hpp"
#include "mimo_as/sweep.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace
{
    constexpr int exit_ok = 0;
    constexpr int exit_runtime = 1;
    constexpr int exit_validation = 2;
    constexpr int exit_landmark = 3;

    void log_line(const std::string &s) { std::cerr << s << '\n'; }

    std::vector<mimo_as::Source> parse_engines(const std::string &csv)
    {
        std::vector<mimo_as::Source> out;
        std::stringstream ss(csv);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty())
                out.push_back(mimo_as::engine_from_string(item));
        if (out.empty())
            throw std::invalid_argument("--engines needs at least one engine");
        return out;
    }

    void print_extrema(const mimo_as::SweepResult &r)
    {
        if (r.extrema.empty())
        {
            std::cout << "no interior rate extrema detected\n";
            return;
        }
        for (const auto &e : r.extrema)
            std::cout << (e.kind == mimo_as::ExtremumKind::minimum ? "minimum" : "maximum") << ": M=" << e.m << ' '
                      << mimo_as::to_string(e.precoder) << " (" << mimo_as::to_string(e.engine) << ") at AS "
                      << e.as_deg << " deg, rate " << e.rate << " bit/s/Hz\n";
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"mimo_as: angular-spread sweeps of multi-cell MIMO downlink rates"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> workers, realizations;
    std::string engines;

    auto *sim = app.add_subcommand("simulate", "run the sweep described by a YAML scenario file");
    sim->add_option("--config", config_path, "scenario file")->required()->check(CLI::ExistingFile);
    sim->add_option("--out", out_dir, "output directory")->required();
    sim->add_option("--seed", seed, "override monte_carlo.seed");
    sim->add_option("--workers", workers, "worker threads (default: MIMO_AS_WORKERS or all cores)");
    sim->add_option("--engines", engines, "comma list of engines: analytic, mc");

    std::string preset;
    auto *rep = app.add_subcommand("report", "run a built-in figure preset and check its landmarks");
    rep->add_option("preset", preset, "fig2 .. fig10")->required();
    rep->add_option("--out", out_dir, "output directory")->required();
    rep->add_option("--realizations", realizations, "override the preset's Monte Carlo budget");
    rep->add_option("--seed", seed, "override the seed");
    rep->add_option("--workers", workers, "worker threads (default: MIMO_AS_WORKERS or all cores)");

    auto *list = app.add_subcommand("presets", "list report presets");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_validation;
    }

    try
    {
        if (*list)
        {
            for (const auto &p : mimo_as::report_presets())
                std::cout << p << "  " << mimo_as::preset_description(p) << '\n';
            return exit_ok;
        }

        if (*sim)
        {
            auto cfg = mimo_as::parse_config(config_path);
            if (seed)
                cfg.seed = *seed;
            if (workers)
                cfg.workers = *workers;
            if (!engines.empty())
                cfg.engines = parse_engines(engines);
            cfg.validate();
            const auto res = mimo_as::run_sweep(cfg, log_line);
            const auto files = mimo_as::emit_csv(res, out_dir);
            std::cout << "wrote " << files.rates.string() << ", " << files.powers.string() << ", "
                      << files.extrema.string() << '\n';
            print_extrema(res);
            return exit_ok;
        }

        mimo_as::ReportOptions opt;
        opt.out_dir = out_dir;
        opt.n_realizations = realizations;
        opt.seed = seed;
        opt.workers = workers.value_or(0);
        opt.log = log_line;
        mimo_as::preset_description(preset); // usage error before any work
        const auto sum = mimo_as::run_report(preset, opt);
        for (const auto &c : sum.checks)
            std::cout << (c.passed ? "PASS " : "FAIL ") << sum.preset << ": " << c.name << " (" << c.detail << ")\n";
        std::cout << sum.files.size() << " files written to " << out_dir << '\n';
        return sum.passed() ? exit_ok : exit_landmark;
    }
    catch (const mimo_as::ConfigError &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_validation;
    }
    catch (const std::invalid_argument &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_validation;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_runtime;
    }
}
