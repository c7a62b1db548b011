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

#include "mimo_as/report.hpp"
#include "mimo_as/covariance.hpp"
#include "mimo_as/csv_io.hpp"
#include "mimo_as/hardening.hpp"
#include "mimo_as/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace mimo_as
{
    namespace
    {
        using Header = std::vector<std::pair<std::string, std::string>>;

        std::string fmt(double v)
        {
            std::ostringstream os;
            os << v;
            return os.str();
        }

        std::vector<double> grid(double a, double b, double step)
        {
            std::vector<double> g;
            for (double x = a; x <= b + 1e-9; x += step)
                g.push_back(x);
            return g;
        }

        struct Ctx
        {
            const ReportOptions &opt;
            ReportSummary &sum;

            void log(const std::string &s) const
            {
                if (opt.log)
                    opt.log(s);
            }
            void check(std::string name, bool ok, std::string detail)
            {
                sum.checks.push_back({std::move(name), ok, std::move(detail)});
            }
            std::size_t workers() const { return opt.workers ? opt.workers : default_workers(); }
            ScenarioConfig tune(ScenarioConfig c, std::size_t mc_default) const
            {
                c.n_realizations = opt.n_realizations.value_or(mc_default);
                if (opt.seed)
                    c.seed = *opt.seed;
                c.workers = workers();
                return c;
            }
            SweepResult sweep(const ScenarioConfig &c, const std::string &prefix)
            {
                auto res = run_sweep(c, opt.log);
                const auto f = emit_csv(res, opt.out_dir, prefix);
                sum.files.insert(sum.files.end(), {f.rates, f.powers, f.extrema});
                return res;
            }
        };

        // Row lookup for one sweep point.
        const PowerBreakdown &at(const SweepResult &r, Precoder p, std::size_t m, Source e, double as_deg)
        {
            for (const auto &row : r.rows)
                if (row.precoder == p && row.m == m && row.engine == e && std::abs(row.as_deg - as_deg) < 1e-9)
                    return row.powers;
            throw std::out_of_range("report: sweep point M=" + std::to_string(m) + " AS=" + fmt(as_deg) + " missing");
        }

        void extremum_check(Ctx &cx, const SweepResult &r, ExtremumKind kind, std::size_t m, Precoder p,
                            double lo, double hi, const std::string &name)
        {
            const double mid = (lo + hi) / 2.0;
            const auto e = find_extremum(r.extrema, kind, m, p, mid, (hi - lo) / 2.0);
            std::string found;
            for (const auto &x : r.extrema)
                if (x.m == m && x.precoder == p)
                    found += std::string(found.empty() ? "" : ", ") + (x.kind == ExtremumKind::minimum ? "min@" : "max@") +
                             fmt(x.as_deg);
            cx.check(name, e.has_value(), "expected in [" + fmt(lo) + ", " + fmt(hi) + "] deg; detected: " +
                                               (found.empty() ? "none" : found));
        }

        // Covariance diagonalisation: |R^phi(m, n)| for |m - n| = 1 and M - 1 versus AS.
        void fig2(Ctx &cx)
        {
            const auto cfg = two_cell_config(200.0);
            const auto layout = build_layout(cfg);
            const auto as = grid(1.0, 90.0, 1.0);
            const std::vector<std::size_t> ms{10, 50};
            std::vector<std::string> cols{"as_deg"};
            for (auto m : ms)
                for (const char *lk : {"jj", "ij"})
                    for (const char *s : {"shift1", "shiftM1"})
                        cols.push_back(std::string("M") + std::to_string(m) + "_" + lk + "_" + s);
            std::vector<std::vector<double>> rows(as.size());
            parallel_for(as.size(), cx.workers(),
                         [&](std::size_t k)
                         {
                             auto &row = rows[k];
                             row.push_back(as[k]);
                             for (auto m : ms)
                             {
                                 const auto spread = AngularSpread::from_degrees(as[k]);
                                 for (const auto *link : {&layout.link(0, 0), &layout.link(1, 0)})
                                 {
                                     const auto e = shift_correlations(link->los_angle, spread, cfg.spacing_ratio, m);
                                     row.push_back(std::abs(e[1]));
                                     row.push_back(std::abs(e[m - 1]));
                                 }
                             }
                         });
            const auto path = cx.opt.out_dir / "fig2_covariance.csv";
            write_table_csv(path,
                            {{"delta_theta_deg", fmt(rad_to_deg(layout.link(1, 0).delta_theta.value_or(0.0)))},
                             {"spacing_ratio", fmt(cfg.spacing_ratio)}},
                            cols, rows);
            cx.sum.files.push_back(path);
            for (std::size_t c = 1; c < cols.size(); ++c)
            {
                const double first = rows.front()[c], last = rows.back()[c];
                cx.check(cols[c] + " diagonalises with AS", last < first,
                         "|R(m,n)| at 1 deg " + fmt(first) + ", at 90 deg " + fmt(last));
            }
        }

        // Angle between interfering channel and precoder.
        void fig3(Ctx &cx)
        {
            auto cfg = two_cell_config(200.0);
            cfg.gamma = 2.0;
            cfg.zeta.reset();
            const auto layout = build_layout(cfg);
            const std::size_t n = cx.opt.n_realizations.value_or(100000);
            std::map<std::string, double> means;
            for (std::size_t m : {10, 50})
                for (double snr_db : {0.0, 20.0})
                    for (double as : {5.0, 50.0})
                    {
                        const double sigma2 = std::pow(10.0, -snr_db / 10.0);
                        const auto cov = build_covariances(layout, AngularSpread::from_degrees(as),
                                                           ArraySpec(m, cfg.spacing_ratio), sigma2, cfg.tau);
                        ScenarioPoint sp;
                        sp.layout = &layout;
                        sp.cov = &cov;
                        sp.spread = AngularSpread::from_degrees(as);
                        sp.array = ArraySpec(m, cfg.spacing_ratio);
                        sp.n_paths = cfg.n_paths;
                        sp.sigma2 = sigma2;
                        sp.tau = cfg.tau;
                        for (auto mode : {CsiMode::perfect, CsiMode::estimated})
                        {
                            AngleOptions ao;
                            ao.ue = 0;
                            ao.bs = 1;
                            ao.mode = mode;
                            ao.n_realizations = n;
                            ao.seed = cx.opt.seed.value_or(cfg.seed);
                            ao.workers = cx.workers();
                            const auto h = angle_distribution(sp, ao);
                            const std::string tag = "M" + std::to_string(m) + "_snr" + fmt(snr_db) + "_as" + fmt(as) +
                                                    (mode == CsiMode::perfect ? "_perfect" : "_estimated");
                            const auto path = cx.opt.out_dir / ("fig3_angle_" + tag + ".csv");
                            write_histogram_csv(h, path);
                            cx.sum.files.push_back(path);
                            means[tag] = h.mean_deg;
                            cx.log("fig3 " + tag + ": mean " + fmt(h.mean_deg) + " deg");
                        }
                    }
            for (std::size_t m : {10, 50})
                for (double snr_db : {0.0, 20.0})
                {
                    const std::string base = "M" + std::to_string(m) + "_snr" + fmt(snr_db) + "_as50";
                    const double est = means[base + "_estimated"], perf = means[base + "_perfect"];
                    cx.check("estimated-CSI angle shifted left at AS 50 deg, " + base, est < perf,
                             "mean " + fmt(est) + " deg (estimated) vs " + fmt(perf) + " deg (perfect)");
                }
        }

        // Hardening measure versus AS, AoAs centred on 0.
        void fig4(Ctx &cx)
        {
            const std::size_t np = 50;
            const auto as = grid(1.0, 90.0, 1.0);
            const std::vector<std::size_t> ms{10, 50, 100};
            std::vector<std::string> cols{"as_deg"};
            for (auto m : ms)
                cols.push_back("M" + std::to_string(m));
            cols.push_back("M100_np_inf");
            cols.push_back("M_inf");
            std::vector<std::vector<double>> rows(as.size());
            parallel_for(as.size(), cx.workers(),
                         [&](std::size_t k)
                         {
                             const auto spread = AngularSpread::from_degrees(as[k]);
                             rows[k].push_back(as[k]);
                             for (auto m : ms)
                             {
                                 const auto e = shift_correlations(0.0, spread, 0.5, m);
                                 rows[k].push_back(hardening_measure(e, m, np));
                                 if (m == ms.back())
                                     rows[k].push_back(hardening_asymptotic(e, m));
                             }
                             rows[k].push_back(1.0 / static_cast<double>(np));
                         });
            const auto path = cx.opt.out_dir / "fig4_hardening.csv";
            write_table_csv(path, {{"n_paths", std::to_string(np)}, {"mean_angle_deg", "0"}}, cols, rows);
            cx.sum.files.push_back(path);

            const auto e0 = shift_correlations(0.0, AngularSpread(0.0), 0.5, 100);
            const double at0 = hardening_measure(e0, 100, np);
            cx.check("measure equals 1 at zero spread", std::abs(at0 - 1.0) <= 1e-12, "value " + format_double(at0));
            for (std::size_t c = 0; c < ms.size(); ++c)
            {
                bool mono = true;
                for (std::size_t k = 1; k < rows.size(); ++k)
                    mono = mono && rows[k][c + 1] <= rows[k - 1][c + 1];
                cx.check("M=" + std::to_string(ms[c]) + " non-increasing in AS", mono, "AS 1..90 deg");
            }
            bool ordered = true;
            for (const auto &r : rows)
                ordered = ordered && r[1] > r[2] && r[2] > r[3];
            cx.check("measure decreases with M at every AS", ordered, "M 10 > 50 > 100");
        }

        void fig5(Ctx &cx)
        {
            auto cfg = cx.tune(two_cell_config(200.0), 10000);
            cfg.m_grid = {10, 20, 50, 100};
            cfg.engines = {Source::analytic, Source::monte_carlo};
            const auto r = cx.sweep(cfg, "fig5_");
            extremum_check(cx, r, ExtremumKind::minimum, 10, Precoder::ebf, 26.0, 30.0, "M=10 EBF minimum near 28 deg");
            for (std::size_t m : {20, 50, 100})
                cx.check("M=" + std::to_string(m) + " EBF non-decreasing beyond 10 deg",
                         non_decreasing_from(extract_curve(r.rows, Precoder::ebf, m, Source::analytic), 10.0), "analytic");
        }

        void fig6(Ctx &cx)
        {
            auto cfg = cx.tune(two_cell_config(200.0), 10000);
            cfg.m_grid = {10, 20};
            cfg.engines = {Source::analytic, Source::monte_carlo};
            const auto r = cx.sweep(cfg, "fig6_");
            for (std::size_t m : {10, 20})
            {
                const double ref = at(r, Precoder::ebf, m, Source::analytic, 50.0).intercell;
                double worst = 0.0;
                for (double a : cfg.as_grid_deg)
                    if (a <= 8.0)
                        worst = std::max(worst, at(r, Precoder::ebf, m, Source::analytic, a).intercell);
                cx.check("M=" + std::to_string(m) + " intercell flat below 8 deg", worst < 0.01 * ref,
                         "max " + fmt(worst) + " vs 1% of " + fmt(ref));
                const double s10 = at(r, Precoder::ebf, m, Source::analytic, 10.0).self_interference;
                const double s60 = at(r, Precoder::ebf, m, Source::analytic, 60.0).self_interference;
                cx.check("M=" + std::to_string(m) + " self-interference decays", s60 < s10,
                         "10 deg " + fmt(s10) + ", 60 deg " + fmt(s60));
            }
        }

        void fig7(Ctx &cx)
        {
            auto cfg = cx.tune(two_cell_config(200.0), 100000);
            cfg.m_grid = {10, 20, 50, 100};
            cfg.precoders = {Precoder::rzf};
            cfg.engines = {Source::monte_carlo};
            const auto r = cx.sweep(cfg, "fig7_");
            for (std::size_t m : {10, 20})
                extremum_check(cx, r, ExtremumKind::minimum, m, Precoder::rzf, 28.0, 34.0,
                               "M=" + std::to_string(m) + " RZF minimum near 31 deg");
            for (std::size_t m : {50, 100})
                extremum_check(cx, r, ExtremumKind::maximum, m, Precoder::rzf, 12.0, 19.0,
                               "M=" + std::to_string(m) + " RZF maximum near 15-16 deg");
        }

        void fig8(Ctx &cx)
        {
            std::map<std::size_t, SweepResult> res;
            for (std::size_t nl : {2, 3, 5})
            {
                auto cfg = cx.tune(multi_cell_config(nl), 10000);
                cfg.m_grid = {10, 50};
                cfg.precoders = {Precoder::ebf, Precoder::rzf};
                cfg.engines = {Source::analytic};
                res.emplace(nl, cx.sweep(cfg, "fig8_nl" + std::to_string(nl) + "_"));
            }
            for (auto [a, b] : {std::pair<std::size_t, std::size_t>{2, 3}, {3, 5}})
            {
                bool ok = true;
                std::string where;
                for (const auto &row : res.at(a).rows)
                {
                    if (row.engine != Source::analytic)
                        continue;
                    const double more = at(res.at(b), row.precoder, row.m, Source::analytic, row.as_deg).rate_bps_hz;
                    if (more > row.powers.rate_bps_hz * (1.0 + 1e-12))
                    {
                        ok = false;
                        where = "M=" + std::to_string(row.m) + " AS=" + fmt(row.as_deg);
                        break;
                    }
                }
                cx.check("EBF rate does not increase from " + std::to_string(a) + " to " + std::to_string(b) + " cells",
                         ok, ok ? "all points" : "violated at " + where);
            }
        }

        void fig9(Ctx &cx)
        {
            for (double theta : {180.0, 200.0, 220.0})
            {
                auto cfg = cx.tune(two_cell_config(theta), 10000);
                cfg.m_grid = {10, 50};
                cfg.precoders = {Precoder::ebf, Precoder::rzf};
                cfg.engines = {Source::analytic};
                const auto r = cx.sweep(cfg, "fig9_theta" + fmt(theta) + "_");
                if (theta == 220.0)
                    extremum_check(cx, r, ExtremumKind::minimum, 50, Precoder::ebf, 9.0, 13.0,
                                   "theta=220 M=50 EBF minimum near 11 deg");
                else
                    cx.check("theta=" + fmt(theta) + " M=50 EBF non-decreasing beyond 10 deg",
                             non_decreasing_from(extract_curve(r.rows, Precoder::ebf, 50, Source::analytic), 10.0),
                             "analytic");
            }
        }

        void fig10(Ctx &cx)
        {
            std::map<int, SweepResult> res;
            for (int theta : {180, 200, 220})
            {
                auto cfg = cx.tune(two_cell_config(theta), 10000);
                cfg.m_grid = {10};
                cfg.engines = {Source::analytic, Source::monte_carlo};
                res.emplace(theta, cx.sweep(cfg, "fig10_theta" + std::to_string(theta) + "_"));
            }
            for (double as : {30.0, 50.0})
            {
                auto p = [&](int th) { return at(res.at(th), Precoder::ebf, 10, Source::analytic, as); };
                cx.check("intercell grows with theta at AS " + fmt(as) + " deg",
                         p(180).intercell < p(200).intercell && p(200).intercell < p(220).intercell,
                         fmt(p(180).intercell) + " < " + fmt(p(200).intercell) + " < " + fmt(p(220).intercell));
                cx.check("signal shrinks with theta at AS " + fmt(as) + " deg",
                         p(180).signal > p(200).signal && p(200).signal > p(220).signal,
                         fmt(p(180).signal) + " > " + fmt(p(200).signal) + " > " + fmt(p(220).signal));
            }
        }

        struct Preset
        {
            const char *name;
            const char *description;
            void (*run)(Ctx &);
        };

        const std::vector<Preset> &presets()
        {
            static const std::vector<Preset> p{
                {"fig2", "covariance diagonalisation versus AS, M = 10, 50", fig2},
                {"fig3", "angle between interfering channel and precoder, M = 10, 50", fig3},
                {"fig4", "channel hardening measure, M = 10, 50, 100, inf, N_P = 50", fig4},
                {"fig5", "EBF rates, two cells, theta = 200, M = 10, 20, 50, 100", fig5},
                {"fig6", "EBF power terms, two cells, theta = 200, M = 10, 20", fig6},
                {"fig7", "RZF rates (Monte Carlo), two cells, theta = 200, M = 10, 20, 50, 100", fig7},
                {"fig8", "multi-cell rates and powers, N_L = 2, 3, 5, M = 10, 50", fig8},
                {"fig9", "EBF and RZF rates for theta = 180, 200, 220, M = 10, 50", fig9},
                {"fig10", "EBF power terms for theta = 180, 200, 220, M = 10", fig10},
            };
            return p;
        }
    }

    bool ReportSummary::passed() const
    {
        return std::all_of(checks.begin(), checks.end(), [](const LandmarkCheck &c) { return c.passed; });
    }

    std::vector<std::string> report_presets()
    {
        std::vector<std::string> out;
        for (const auto &p : presets())
            out.emplace_back(p.name);
        return out;
    }

    std::string preset_description(const std::string &preset)
    {
        for (const auto &p : presets())
            if (preset == p.name)
                return p.description;
        throw std::invalid_argument("unknown preset '" + preset + "'");
    }

    ReportSummary run_report(const std::string &preset, const ReportOptions &opt)
    {
        const auto it = std::find_if(presets().begin(), presets().end(), [&](const Preset &p) { return preset == p.name; });
        if (it == presets().end())
            throw std::invalid_argument("unknown preset '" + preset + "'");
        std::error_code ec;
        std::filesystem::create_directories(opt.out_dir, ec);
        if (ec)
            throw std::runtime_error("cannot create " + opt.out_dir.string() + ": " + ec.message());
        ReportSummary sum;
        sum.preset = preset;
        Ctx cx{opt, sum};
        it->run(cx);
        return sum;
    }

    ScenarioConfig two_cell_config(double theta_deg)
    {
        ScenarioConfig c;
        c.cells = {CellSpec(0, 0.0), CellSpec(1, theta_deg)};
        return c;
    }

    ScenarioConfig multi_cell_config(std::size_t n_cells)
    {
        static const double angles[] = {0.0, 200.0, 160.0, 360.0, 60.0};
        if (n_cells < 1 || n_cells > 5)
            throw std::invalid_argument("multi_cell_config: 1..5 cells");
        ScenarioConfig c;
        for (std::size_t i = 0; i < n_cells; ++i)
            c.cells.emplace_back(i, angles[i]);
        return c;
    }

    Curve extract_curve(const std::vector<SweepRow> &rows, Precoder p, std::size_t m, Source engine)
    {
        std::vector<const SweepRow *> sel;
        for (const auto &r : rows)
            if (r.precoder == p && r.m == m && r.engine == engine)
                sel.push_back(&r);
        std::sort(sel.begin(), sel.end(), [](auto a, auto b) { return a->as_deg < b->as_deg; });
        Curve c;
        for (const auto *r : sel)
        {
            c.as_deg.push_back(r->as_deg);
            c.rate.push_back(r->powers.rate_bps_hz);
            c.stderr_rate.push_back(r->powers.stderr_rate);
        }
        return c;
    }

    std::optional<Extremum> find_extremum(const std::vector<Extremum> &ex, ExtremumKind kind, std::size_t m,
                                          Precoder p, double target_deg, double tol_deg)
    {
        for (const auto &e : ex)
            if (e.kind == kind && e.m == m && e.precoder == p && std::abs(e.as_deg - target_deg) <= tol_deg + 1e-9)
                return e;
        return std::nullopt;
    }

    bool non_decreasing_from(const Curve &c, double from_deg)
    {
        for (std::size_t k = 1; k < c.rate.size(); ++k)
            if (c.as_deg[k - 1] >= from_deg - 1e-9 && c.rate[k] < c.rate[k - 1] - 1e-12 * std::abs(c.rate[k - 1]))
                return false;
        return true;
    }
}
