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

// Acceptance run: one PASS/FAIL line per criterion. Pass criterion numbers as arguments to run a
// subset, e.g. `acceptance 2 5 7`. Exit status is non-zero when any selected criterion fails.

#include "mimo_as/analytic_rate.hpp"
#include "mimo_as/covariance.hpp"
#include "mimo_as/csv_io.hpp"
#include "mimo_as/hardening.hpp"
#include "mimo_as/montecarlo.hpp"
#include "mimo_as/parallel.hpp"
#include "mimo_as/report.hpp"
#include "mimo_as/sweep.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace mimo_as;
namespace fs = std::filesystem;

namespace
{
    struct Outcome
    {
        bool pass = true;
        std::ostringstream detail;

        void require(bool ok, const std::string &what)
        {
            if (!ok)
            {
                pass = false;
                detail << (detail.tellp() > 0 ? "; " : "") << "FAILED " << what;
            }
        }
        void note(const std::string &what) { detail << (detail.tellp() > 0 ? "; " : "") << what; }
    };

    std::string num(double v, int prec = 4)
    {
        std::ostringstream os;
        os.precision(prec);
        os << v;
        return os.str();
    }

    std::size_t workers() { return default_workers(); }

    ScenarioPoint point_of(const ScenarioConfig &cfg, const Layout &layout, const ScenarioCovariances &cov, double as_deg,
                           std::size_t m)
    {
        ScenarioPoint p;
        p.layout = &layout;
        p.cov = &cov;
        p.spread = AngularSpread::from_degrees(as_deg);
        p.array = ArraySpec(m, cfg.spacing_ratio);
        p.n_paths = cfg.n_paths;
        p.sigma2 = cfg.sigma2;
        p.tau = cfg.tau;
        return p;
    }

    double z_of(double mc, double se, double want)
    {
        if (se > 0.0)
            return std::abs(mc - want) / se;
        return mc == want ? 0.0 : INFINITY;
    }

    std::vector<double> grid(double a, double b, double step)
    {
        std::vector<double> g;
        for (double x = a; x <= b + 1e-9; x += step)
            g.push_back(x);
        return g;
    }

    // Analytic power terms against simulation, two cells, EBF.
    void analytic_vs_simulation(Outcome &o)
    {
        const auto cfg = two_cell_config(200.0);
        const auto layout = build_layout(cfg);
        double worst = 0.0;
        for (std::size_t m : {4, 10})
            for (double as : {5.0, 20.0, 40.0, 70.0})
            {
                const auto cov = point_covariances(cfg, layout, m, as);
                const auto an = ergodic_rate_point(cov, cfg.n_paths);
                McOptions opt;
                opt.n_realizations = 100000;
                opt.seed = 2026;
                opt.workers = workers();
                const auto mc = estimate_powers(point_of(cfg, layout, cov, as, m), opt).powers;
                const double zs = z_of(mc.signal, mc.stderr_signal, an.signal);
                const double zf = z_of(mc.self_interference, mc.stderr_self_interference, an.self_interference);
                const double zi = z_of(mc.intercell, mc.stderr_intercell, an.intercell);
                const std::string at = "M=" + std::to_string(m) + " AS=" + num(as);
                o.require(zs < 4.0, at + " signal z=" + num(zs));
                o.require(zf < 4.0, at + " self-interference z=" + num(zf));
                o.require(zi < 4.0, at + " intercell z=" + num(zi));
                worst = std::max({worst, zs, zf, zi});
            }
        o.note("8 points x 3 terms, largest |z| " + num(worst, 3));
    }

    // EBF rate curve: one interior minimum near 28 deg at M = 10, larger arrays non-decreasing past 10 deg.
    void ebf_landmark(Outcome &o)
    {
        auto cfg = two_cell_config(200.0);
        cfg.m_grid = {10, 20, 50, 100};
        cfg.engines = {Source::analytic};
        cfg.workers = workers();
        const auto r = run_sweep(cfg);
        const auto e = find_extremum(r.extrema, ExtremumKind::minimum, 10, Precoder::ebf, 28.0, 2.0);
        o.require(e.has_value(), "M=10 interior minimum within 28 +- 2 deg");
        if (e)
            o.note("M=10 minimum at " + num(e->as_deg) + " deg, rate " + num(e->rate, 6));
        for (std::size_t m : {20, 50, 100})
            o.require(non_decreasing_from(extract_curve(r.rows, Precoder::ebf, m, Source::analytic), 10.0),
                      "M=" + std::to_string(m) + " non-decreasing beyond 10 deg");
    }

    // Simulated RZF curves: minima near 31 deg for small arrays, maxima near 15-16 deg for large ones.
    void rzf_landmarks(Outcome &o)
    {
        auto cfg = two_cell_config(200.0);
        cfg.as_grid_deg = grid(2.0, 50.0, 2.0);
        cfg.m_grid = {10, 20, 50, 100};
        cfg.precoders = {Precoder::rzf};
        cfg.engines = {Source::monte_carlo};
        cfg.n_realizations = 100000;
        cfg.workers = workers();
        const auto r = run_sweep(cfg);
        auto listed = [&](std::size_t m)
        {
            std::string s;
            for (const auto &x : r.extrema)
                if (x.m == m)
                    s += std::string(s.empty() ? "" : ",") + (x.kind == ExtremumKind::minimum ? "min@" : "max@") + num(x.as_deg);
            return s.empty() ? std::string("none") : s;
        };
        for (std::size_t m : {10, 20})
        {
            const auto e = find_extremum(r.extrema, ExtremumKind::minimum, m, Precoder::rzf, 31.0, 3.0);
            o.require(e.has_value(), "M=" + std::to_string(m) + " minimum within 31 +- 3 deg");
            o.note("M=" + std::to_string(m) + ": " + listed(m));
        }
        for (std::size_t m : {50, 100})
        {
            const auto e = find_extremum(r.extrema, ExtremumKind::maximum, m, Precoder::rzf, 15.5, 3.5);
            o.require(e.has_value(), "M=" + std::to_string(m) + " maximum within 12..19 deg");
            o.note("M=" + std::to_string(m) + ": " + listed(m));
        }
    }

    // Interference terms versus AS from the closed form.
    void power_terms(Outcome &o)
    {
        const auto cfg = two_cell_config(200.0);
        const auto layout = build_layout(cfg);
        for (std::size_t m : {10, 20})
        {
            auto at = [&](double as) { return ergodic_rate_point(point_covariances(cfg, layout, m, as), cfg.n_paths); };
            const auto p50 = at(50.0);
            double worst = 0.0;
            for (double as : {1.0, 2.0, 4.0, 6.0, 8.0})
                worst = std::max(worst, at(as).intercell / p50.intercell);
            const std::string tag = "M=" + std::to_string(m);
            o.require(worst < 0.01, tag + " intercell at AS <= 8 deg is " + num(100 * worst) + "% of AS 50");
            const double s10 = at(10.0).self_interference, s60 = at(60.0).self_interference;
            o.require(s60 < s10, tag + " self-interference AS 60 < AS 10");
            o.note(tag + ": intercell ratio " + num(worst, 3) + ", self " + num(s10) + " -> " + num(s60));
        }
    }

    void hardening(Outcome &o)
    {
        const std::size_t np = 50;
        const std::vector<std::size_t> ms{10, 50, 100};
        for (auto m : ms)
        {
            const double at0 = hardening_measure(shift_correlations(0.0, AngularSpread(0.0), 0.5, m), m, np);
            o.require(std::abs(at0 - 1.0) <= 1e-12, "M=" + std::to_string(m) + " equals 1 at zero spread");
        }
        const auto as = grid(1.0, 90.0, 1.0);
        std::vector<std::vector<double>> v(ms.size());
        for (std::size_t c = 0; c < ms.size(); ++c)
            for (double a : as)
                v[c].push_back(hardening_measure(shift_correlations(0.0, AngularSpread::from_degrees(a), 0.5, ms[c]), ms[c], np));
        for (std::size_t c = 0; c < ms.size(); ++c)
        {
            bool mono = true;
            for (std::size_t k = 1; k < as.size(); ++k)
                mono = mono && v[c][k] <= v[c][k - 1];
            o.require(mono, "M=" + std::to_string(ms[c]) + " non-increasing over AS 1..90");
        }
        bool ordered = true;
        for (std::size_t k = 0; k < as.size(); ++k)
            ordered = ordered && v[0][k] > v[1][k] && v[1][k] > v[2][k];
        o.require(ordered, "decreasing in M at every AS");
        o.note("AS 90: " + num(v[0].back()) + " / " + num(v[1].back()) + " / " + num(v[2].back()));
    }

    // Full spread: the covariance is J0(pi (m - n)).
    void quadrature_truth(Outcome &o)
    {
        const std::size_t m = 100;
        const auto r = angular_covariance(0.0, AngularSpread::from_degrees(180.0), ArraySpec(m, 0.5));
        double worst = 0.0;
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = 0; b < m; ++b)
            {
                const double d = static_cast<double>(a) - static_cast<double>(b);
                worst = std::max(worst, std::abs(r(a, b) - cplx(oracle::bessel_j0(pi * d), 0.0)));
            }
        o.require(worst <= 1e-8, "max |R - J0| = " + num(worst, 3));
        o.note("max abs error " + num(worst, 3));
    }

    void fast_path(Outcome &o)
    {
        std::mt19937_64 gen(77);
        double worst = 0.0;
        for (int k = 0; k < 200; ++k)
        {
            const auto x = oracle::random_instance(1 + k % 8, gen);
            const double ref = second_moment_reference(x.inputs());
            worst = std::max(worst, std::abs(second_moment_fast(x.inputs()) - ref) / ref);
        }
        o.require(worst <= 1e-9, "random instances: relative error " + num(worst, 3));
        o.note("random M<=8 worst " + num(worst, 3));

        const auto cfg = two_cell_config(200.0);
        const auto layout = build_layout(cfg);
        double t_fast = 0.0, t_ref = 0.0, worst100 = 0.0;
        using clock = std::chrono::steady_clock;
        for (double as : {10.0, 30.0, 60.0})
        {
            const auto cov = point_covariances(cfg, layout, 100, as);
            const auto in = second_moment_inputs(cov, 0, 1, cfg.n_paths);
            auto t0 = clock::now();
            const double f = second_moment_fast(in);
            auto t1 = clock::now();
            const double r = second_moment_reference(in);
            auto t2 = clock::now();
            t_fast += std::chrono::duration<double>(t1 - t0).count();
            t_ref += std::chrono::duration<double>(t2 - t1).count();
            worst100 = std::max(worst100, std::abs(f - r) / r);
        }
        o.require(worst100 <= 1e-9, "M=100 spot points: relative error " + num(worst100, 3));
        const double speedup = t_ref / t_fast;
        o.require(speedup >= 10.0, "speed-up at M=100 is " + num(speedup, 3));
        o.note("M=100 worst " + num(worst100, 3) + ", speed-up " + num(speedup, 4) + "x");
    }

    // Products of model channels where one factor appears once have zero mean.
    void cross_term_nullity(Outcome &o)
    {
        const auto cfg = two_cell_config(200.0);
        const auto layout = build_layout(cfg);
        const std::size_t m = 8;
        const auto spread = AngularSpread::from_degrees(30.0);
        const ArraySpec arr(m);
        const auto cov = point_covariances(cfg, layout, m, 30.0);
        const ComplexMatrix &a = cov.link(0, 0).filter;
        const ComplexMatrix b = cov.link(1, 1).filter.adjoint();
        // Three mutually independent draws: h_00, h_10 at BS 0 and h_01 at BS 1.
        const std::size_t n = 100000;
        std::vector<cplx> q1(n), q2(n), q3(n);
        parallel_for(100, workers(),
                     [&](std::size_t blk)
                     {
                         for (std::size_t t = blk * n / 100; t < (blk + 1) * n / 100; ++t)
                         {
                             RngStream rng(5, stream_key(0x1e77a, m, t));
                             const auto x = draw_channel(layout.link(0, 0), spread, arr, cfg.n_paths, rng).h;
                             const auto y = draw_channel(layout.link(1, 0), spread, arr, cfg.n_paths, rng).h;
                             const auto z = draw_channel(layout.link(0, 1), spread, arr, cfg.n_paths, rng).h;
                             const cplx xay = x.dot(a * y);
                             q1[t] = xay;
                             q2[t] = xay * y.dot(b * z);
                             q3[t] = x.dot(a * x) * x.dot(b * y);
                         }
                     });
        const char *names[] = {"x^H A y", "(x^H A y)(y^H B z)", "(x^H A x)(x^H B y)"};
        const std::vector<cplx> *qs[] = {&q1, &q2, &q3};
        for (int k = 0; k < 3; ++k)
            for (int part = 0; part < 2; ++part)
            {
                KahanSum<double> s, s2;
                for (const auto &v : *qs[k])
                {
                    const double x = part ? v.imag() : v.real();
                    s.add(x);
                    s2.add(x * x);
                }
                const double mean = s.value() / n;
                const double se = std::sqrt(std::max(0.0, s2.value() / n - mean * mean) / (n - 1.0));
                const double z = z_of(mean, se, 0.0);
                o.require(z < 4.0, std::string(names[k]) + (part ? " imag" : " real") + " z=" + num(z, 3));
                o.note(std::string(names[k]) + (part ? " Im" : " Re") + " z=" + num(z, 3));
            }
    }

    void angle_law(Outcome &o)
    {
        for (std::size_t m : {2, 10})
        {
            ScenarioPoint pt;
            pt.array = ArraySpec(m);
            AngleOptions ao;
            ao.iid_bypass = true;
            ao.n_realizations = 1000000;
            ao.seed = 3;
            ao.workers = workers();
            auto s = angle_samples(pt, ao).angles;
            std::sort(s.begin(), s.end());
            double sup = 0.0;
            const double n = static_cast<double>(s.size());
            for (std::size_t k = 0; k < s.size(); ++k)
            {
                const double f = loyka_cdf(s[k], m);
                sup = std::max({sup, std::abs((k + 1) / n - f), std::abs(k / n - f)});
            }
            o.require(sup <= 0.01, "M=" + std::to_string(m) + " CDF sup distance " + num(sup, 3));
            o.note("M=" + std::to_string(m) + " sup " + num(sup, 3));
        }

        auto cfg = two_cell_config(200.0);
        cfg.gamma = 2.0;
        cfg.zeta.reset();
        const auto layout = build_layout(cfg);
        const std::size_t m = 10;
        for (double snr_db : {0.0, 20.0})
        {
            cfg.sigma2 = std::pow(10.0, -snr_db / 10.0);
            const auto cov = point_covariances(cfg, layout, m, 50.0);
            const auto pt = point_of(cfg, layout, cov, 50.0, m);
            double means[2];
            for (int k = 0; k < 2; ++k)
            {
                AngleOptions ao;
                ao.ue = 0;
                ao.bs = 1;
                ao.mode = k ? CsiMode::estimated : CsiMode::perfect;
                ao.n_realizations = 100000;
                ao.seed = 11;
                ao.workers = workers();
                means[k] = angle_distribution(pt, ao).mean_deg;
            }
            const std::string tag = "SNR " + num(snr_db) + " dB";
            o.require(means[1] < means[0], tag + " estimated mean " + num(means[1], 6) + " not below perfect " + num(means[0], 6));
            o.note(tag + ": " + num(means[1], 6) + " < " + num(means[0], 6) + " deg");
        }
    }

    std::string slurp(const fs::path &p)
    {
        std::ifstream in(p, std::ios::binary);
        return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    }

    void determinism(Outcome &o)
    {
        auto cfg = two_cell_config(200.0);
        cfg.as_grid_deg = {6, 18, 30, 42};
        cfg.m_grid = {8, 16};
        cfg.precoders = {Precoder::ebf, Precoder::rzf};
        cfg.engines = {Source::analytic, Source::monte_carlo};
        cfg.n_realizations = 5000;
        cfg.seed = 404;
        const auto root = fs::temp_directory_path() / "mimo_as_acceptance_det";
        fs::remove_all(root);
        std::vector<SweepFiles> files;
        for (std::size_t w : {1, 4, 16})
        {
            cfg.workers = w;
            files.push_back(emit_csv(run_sweep(cfg), root / ("w" + std::to_string(w))));
        }
        for (std::size_t k = 1; k < files.size(); ++k)
        {
            o.require(slurp(files[k].rates) == slurp(files[0].rates), "rates.csv differs for run " + std::to_string(k));
            o.require(slurp(files[k].powers) == slurp(files[0].powers), "powers.csv differs for run " + std::to_string(k));
            o.require(slurp(files[k].extrema) == slurp(files[0].extrema), "extrema.csv differs for run " + std::to_string(k));
        }
        o.note("workers 1/4/16, " + std::to_string(slurp(files[0].rates).size()) + " bytes of rates");
        fs::remove_all(root);
    }

    // Adding cells never raises the analytic EBF rate.
    void multi_cell(Outcome &o)
    {
        std::vector<SweepResult> res;
        for (std::size_t n : {2, 3, 5})
        {
            auto cfg = multi_cell_config(n);
            cfg.m_grid = {10, 50};
            cfg.engines = {Source::analytic};
            cfg.workers = workers();
            res.push_back(run_sweep(cfg));
        }
        std::size_t compared = 0;
        for (std::size_t k = 1; k < res.size(); ++k)
        {
            if (res[k].rows.size() != res[0].rows.size())
            {
                o.require(false, "row count mismatch");
                return;
            }
            for (std::size_t i = 0; i < res[k].rows.size(); ++i)
            {
                const auto &a = res[k - 1].rows[i], &b = res[k].rows[i];
                ++compared;
                if (b.powers.rate_bps_hz > a.powers.rate_bps_hz)
                    o.require(false, "M=" + std::to_string(b.m) + " AS=" + num(b.as_deg) + " rate rises from " +
                                         num(a.powers.rate_bps_hz, 8) + " to " + num(b.powers.rate_bps_hz, 8) +
                                         " when adding cells");
            }
        }
        o.note(std::to_string(compared) + " comparisons (N_L 2->3->5, M 10/50)");
    }

    struct Criterion
    {
        int id;
        const char *name;
        std::function<void(Outcome &)> run;
    };
}

int main(int argc, char **argv)
{
    const std::vector<Criterion> all{
        {1, "analytic power terms agree with simulation", analytic_vs_simulation},
        {2, "EBF rate landmark", ebf_landmark},
        {3, "RZF rate landmarks", rzf_landmarks},
        {4, "interference power behaviour", power_terms},
        {5, "channel hardening", hardening},
        {6, "full-spread quadrature", quadrature_truth},
        {7, "fast second moment", fast_path},
        {8, "zero-mean cross terms", cross_term_nullity},
        {9, "precoder angle distribution", angle_law},
        {10, "worker-count determinism", determinism},
        {11, "more cells never help", multi_cell},
    };
    std::set<int> pick;
    for (int i = 1; i < argc; ++i)
        pick.insert(std::stoi(argv[i]));

    int failed = 0;
    for (const auto &c : all)
    {
        if (!pick.empty() && !pick.count(c.id))
            continue;
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try
        {
            c.run(o);
        }
        catch (const std::exception &e)
        {
            o.require(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        failed += !o.pass;
        std::printf("%s [%d] %s (%.1f s): %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.str().c_str());
        std::fflush(stdout);
    }
    return failed ? 1 : 0;
}
