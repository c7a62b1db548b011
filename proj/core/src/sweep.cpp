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

#include "mimo_as/sweep.hpp"
#include "mimo_as/errors.hpp"
#include "mimo_as/parallel.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

namespace mimo_as
{
    namespace
    {
        bool has(const std::vector<Source> &v, Source s) { return std::find(v.begin(), v.end(), s) != v.end(); }
        bool has(const std::vector<Precoder> &v, Precoder p) { return std::find(v.begin(), v.end(), p) != v.end(); }

        std::string point_name(std::size_t m, double as_deg, Precoder p, Source e)
        {
            std::ostringstream os;
            os << "M=" << m << " AS=" << as_deg << " deg " << to_string(p) << ' ' << to_string(e);
            return os.str();
        }

        [[noreturn]] void rethrow_at(const std::string &where)
        {
            try
            {
                throw;
            }
            catch (const std::exception &e)
            {
                throw EvaluationError("sweep point " + where + " failed: " + e.what());
            }
        }
    }

    Layout build_layout(const ScenarioConfig &cfg)
    {
        return build_layout(cfg.cells, cfg.r1, cfg.r2, cfg.gamma, cfg.zeta_value());
    }

    ScenarioCovariances point_covariances(const ScenarioConfig &cfg, const Layout &layout, std::size_t m,
                                          double as_deg)
    {
        return build_covariances(layout, AngularSpread::from_degrees(as_deg), ArraySpec(m, cfg.spacing_ratio),
                                 cfg.sigma2, cfg.tau);
    }

    std::vector<Extremum> curve_extrema(const std::vector<SweepRow> &rows, Precoder p, std::size_t m, Source engine)
    {
        std::vector<const SweepRow *> curve;
        for (const auto &r : rows)
            if (r.precoder == p && r.m == m && r.engine == engine)
                curve.push_back(&r);
        std::sort(curve.begin(), curve.end(), [](auto a, auto b) { return a->as_deg < b->as_deg; });
        std::vector<double> y, se;
        for (const auto *r : curve)
        {
            y.push_back(r->powers.rate_bps_hz);
            se.push_back(r->powers.stderr_rate);
        }
        std::vector<Extremum> out;
        for (const auto &e : detect_extrema(y, se))
            out.push_back({e.kind, curve[e.index]->as_deg, y[e.index], m, p, engine});
        return out;
    }

    SweepResult run_sweep(const ScenarioConfig &cfg, const SweepLog &log)
    {
        cfg.validate();
        SweepResult res;
        res.config = cfg;
        res.layout = build_layout(cfg);
        auto note = [&](const std::string &s)
        {
            res.notices.push_back(s);
            if (log)
                log(s);
        };
        const std::size_t workers = cfg.workers ? cfg.workers : default_workers();
        const bool analytic = has(cfg.engines, Source::analytic);
        const bool mc = has(cfg.engines, Source::monte_carlo);
        if (analytic && has(cfg.precoders, Precoder::rzf))
            note("notice: no analytic RZF model; RZF points run with the Monte Carlo engine only");
        if (analytic && !mc && !has(cfg.precoders, Precoder::ebf))
            note("notice: analytic engine requested without EBF; nothing to evaluate analytically");

        struct Point
        {
            std::size_t m;
            double as_deg;
        };
        std::vector<Point> points;
        for (auto m : cfg.m_grid)
            for (double a : cfg.as_grid_deg)
                points.push_back({m, a});

        std::vector<SweepRow> rows;
        if (analytic && has(cfg.precoders, Precoder::ebf))
        {
            std::vector<SweepRow> slot(points.size());
            parallel_for(points.size(), workers,
                         [&](std::size_t i)
                         {
                             const auto &pt = points[i];
                             try
                             {
                                 const auto cov = point_covariances(cfg, res.layout, pt.m, pt.as_deg);
                                 slot[i] = {pt.m, pt.as_deg, Precoder::ebf, Source::analytic,
                                            ergodic_rate_point(cov, cfg.n_paths)};
                             }
                             catch (...)
                             {
                                 rethrow_at(point_name(pt.m, pt.as_deg, Precoder::ebf, Source::analytic));
                             }
                         });
            rows.insert(rows.end(), slot.begin(), slot.end());
            if (log)
                log("analytic: " + std::to_string(points.size()) + " points done");
        }

        const bool mc_rzf = has(cfg.precoders, Precoder::rzf) && (mc || analytic);
        const bool mc_ebf = mc && has(cfg.precoders, Precoder::ebf);
        if (mc_rzf || mc_ebf)
        {
            std::size_t done = 0;
            for (const auto &pt : points)
            {
                const auto cov = [&]
                {
                    try
                    {
                        return point_covariances(cfg, res.layout, pt.m, pt.as_deg);
                    }
                    catch (...)
                    {
                        rethrow_at(point_name(pt.m, pt.as_deg, cfg.precoders.front(), Source::monte_carlo));
                    }
                }();
                ScenarioPoint sp;
                sp.layout = &res.layout;
                sp.cov = &cov;
                sp.spread = AngularSpread::from_degrees(pt.as_deg);
                sp.array = ArraySpec(pt.m, cfg.spacing_ratio);
                sp.n_paths = cfg.n_paths;
                sp.sigma2 = cfg.sigma2;
                sp.tau = cfg.tau;
                for (auto p : cfg.precoders)
                {
                    if (p == Precoder::ebf ? !mc_ebf : !mc_rzf)
                        continue;
                    McOptions opt;
                    opt.n_realizations = cfg.n_realizations;
                    opt.seed = cfg.seed;
                    opt.kind = p;
                    opt.workers = workers;
                    try
                    {
                        rows.push_back({pt.m, pt.as_deg, p, Source::monte_carlo, estimate_powers(sp, opt).powers});
                    }
                    catch (...)
                    {
                        rethrow_at(point_name(pt.m, pt.as_deg, p, Source::monte_carlo));
                    }
                }
                if (log && (++done % 10 == 0 || done == points.size()))
                    log("monte-carlo: " + std::to_string(done) + "/" + std::to_string(points.size()) + " points");
            }
        }

        auto precoder_rank = [&](Precoder p)
        { return std::find(cfg.precoders.begin(), cfg.precoders.end(), p) - cfg.precoders.begin(); };
        std::stable_sort(rows.begin(), rows.end(),
                         [&](const SweepRow &a, const SweepRow &b)
                         {
                             return std::make_tuple(precoder_rank(a.precoder), a.m, a.as_deg, static_cast<int>(a.engine)) <
                                    std::make_tuple(precoder_rank(b.precoder), b.m, b.as_deg, static_cast<int>(b.engine));
                         });
        res.rows = std::move(rows);

        for (auto p : cfg.precoders)
            for (auto m : cfg.m_grid)
            {
                const bool have_analytic = std::any_of(res.rows.begin(), res.rows.end(), [&](const SweepRow &r)
                                                       { return r.precoder == p && r.m == m && r.engine == Source::analytic; });
                const auto ex = curve_extrema(res.rows, p, m, have_analytic ? Source::analytic : Source::monte_carlo);
                res.extrema.insert(res.extrema.end(), ex.begin(), ex.end());
            }
        return res;
    }
}
