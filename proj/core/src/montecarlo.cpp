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

#include "mimo_as/montecarlo.hpp"
#include "mimo_as/errors.hpp"
#include "mimo_as/parallel.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <string>

namespace mimo_as
{
    namespace
    {
        constexpr std::size_t n_blocks = 100;
        constexpr std::uint64_t tag_powers = 0x706f77657273ull;
        constexpr std::uint64_t tag_angles = 0x616e676c6573ull;

        void draw_paths(const LinkGeometry &link, const AngularSpread &spread, std::size_t n_paths, RngStream &rng,
                        std::vector<cplx> &alphas, std::vector<double> &aoas)
        {
            alphas.resize(n_paths);
            aoas.resize(n_paths);
            for (auto &a : alphas)
                a = rng.complex_normal(link.beta);
            for (auto &phi : aoas)
                phi = link.los_angle + spread.delta * (2.0 * rng.uniform() - 1.0);
        }

        // Antenna-major recursion c_p <- c_p z_p keeps the inner loop over paths vectorisable.
        void accumulate_paths(std::span<const cplx> alphas, std::span<const double> aoas, const ArraySpec &array,
                              Eigen::ArrayXcd &c, Eigen::ArrayXcd &z, ComplexVector &h)
        {
            const auto np = static_cast<Eigen::Index>(alphas.size());
            const double scale = 1.0 / std::sqrt(static_cast<double>(alphas.size()));
            c.resize(np);
            z.resize(np);
            for (Eigen::Index p = 0; p < np; ++p)
            {
                c(p) = alphas[p] * scale;
                z(p) = std::polar(1.0, -2.0 * pi * array.spacing_ratio * std::cos(aoas[p]));
            }
            h.resize(static_cast<Eigen::Index>(array.m));
            for (Eigen::Index m = 0; m < h.size(); ++m)
            {
                h(m) = c.sum();
                c *= z;
            }
        }

        struct Workspace
        {
            std::vector<cplx> alphas;
            std::vector<double> aoas;
            Eigen::ArrayXcd c, z;
        };

        void fill_channel(ComplexVector &h, const LinkGeometry &link, const ScenarioPoint &pt, RngStream &rng,
                          Workspace &ws)
        {
            draw_paths(link, pt.spread, pt.n_paths, rng, ws.alphas, ws.aoas);
            accumulate_paths(ws.alphas, ws.aoas, pt.array, ws.c, ws.z, h);
        }

        void check_point(const ScenarioPoint &pt, bool need_filters)
        {
            if (pt.layout == nullptr)
                throw std::invalid_argument("scenario point: layout missing");
            if (pt.n_paths < 1)
                throw std::invalid_argument("scenario point: n_paths must be >= 1");
            if (pt.tau < 1)
                throw std::invalid_argument("scenario point: tau must be >= 1");
            if (need_filters)
            {
                if (pt.cov == nullptr)
                    throw std::invalid_argument("scenario point: covariances missing");
                if (pt.cov->n_cells != pt.layout->n_cells() || pt.cov->m != pt.array.m)
                    throw std::invalid_argument("scenario point: covariances do not match layout/array");
            }
        }

        struct BlockSums
        {
            double n = 0.0;
            std::vector<KahanSum<double>> s1, s2;
            explicit BlockSums(std::size_t q) : s1(q), s2(q) {}
        };

        EmpiricalStat stat_from(double n, double s1, double s2)
        {
            EmpiricalStat st;
            st.mean = s1 / n;
            st.second = s2 / n;
            const double var = std::max(0.0, (s2 - n * st.mean * st.mean) / (n - 1.0));
            st.stderr_mean = std::sqrt(var / n);
            return st;
        }
    }

    std::string_view to_string(Precoder p) { return p == Precoder::ebf ? "EBF" : "RZF"; }

    Precoder precoder_from_string(std::string_view s)
    {
        std::string u(s);
        std::transform(u.begin(), u.end(), u.begin(), [](unsigned char ch) { return std::toupper(ch); });
        if (u == "EBF")
            return Precoder::ebf;
        if (u == "RZF")
            return Precoder::rzf;
        throw std::invalid_argument("unknown precoder '" + std::string(s) + "'");
    }

    ComplexVector steering_vector(double phi, const ArraySpec &array)
    {
        ComplexVector a(static_cast<Eigen::Index>(array.m));
        const double k = -2.0 * pi * array.spacing_ratio * std::cos(phi);
        for (Eigen::Index m = 0; m < a.size(); ++m)
            a(m) = std::polar(1.0, k * static_cast<double>(m));
        return a;
    }

    ComplexVector assemble_channel(std::span<const cplx> alphas, std::span<const double> aoas, const ArraySpec &array)
    {
        if (alphas.size() != aoas.size() || alphas.empty())
            throw std::invalid_argument("assemble_channel: need matching, non-empty path lists");
        ComplexVector h = ComplexVector::Zero(static_cast<Eigen::Index>(array.m));
        for (std::size_t p = 0; p < alphas.size(); ++p)
            h += alphas[p] * steering_vector(aoas[p], array);
        return h / std::sqrt(static_cast<double>(alphas.size()));
    }

    ChannelRealization draw_channel(const LinkGeometry &link, const AngularSpread &spread, const ArraySpec &array,
                                    std::size_t n_paths, RngStream &rng)
    {
        if (n_paths < 1)
            throw std::invalid_argument("draw_channel: n_paths must be >= 1");
        ChannelRealization out;
        out.ue = link.ue;
        out.bs = link.bs;
        std::vector<cplx> alphas;
        draw_paths(link, spread, n_paths, rng, alphas, out.aoas);
        Eigen::ArrayXcd c, z;
        accumulate_paths(alphas, out.aoas, array, c, z, out.h);
        out.alphas = Eigen::Map<const ComplexVector>(alphas.data(), static_cast<Eigen::Index>(alphas.size()));
        return out;
    }

    void PilotBlock::validate() const
    {
        if (symbols.empty())
            throw std::invalid_argument("pilot block: tau must be >= 1");
        for (const auto &s : symbols)
            if (std::abs(std::abs(s) - 1.0) > 1e-12)
                throw std::invalid_argument("pilot block: symbols must have unit modulus");
    }

    PilotBlock PilotBlock::qpsk(std::size_t tau, RngStream &rng)
    {
        PilotBlock p;
        p.symbols.resize(tau);
        for (auto &s : p.symbols)
            s = rng.qpsk();
        p.validate();
        return p;
    }

    PilotBlock PilotBlock::ones(std::size_t tau)
    {
        PilotBlock p;
        p.symbols.assign(tau, cplx(1.0, 0.0));
        p.validate();
        return p;
    }

    ComplexVector ul_receive(std::span<const ComplexVector> channels, const PilotBlock &pilots, double sigma2,
                             RngStream &rng)
    {
        if (channels.empty())
            throw std::invalid_argument("ul_receive: no channels");
        if (sigma2 < 0.0)
            throw std::invalid_argument("ul_receive: sigma2 must be >= 0");
        const Eigen::Index m = channels.front().size();
        ComplexVector sum = ComplexVector::Zero(m);
        for (const auto &h : channels)
        {
            if (h.size() != m)
                throw std::invalid_argument("ul_receive: channel length mismatch");
            sum += h;
        }
        const auto tau = static_cast<Eigen::Index>(pilots.tau());
        ComplexVector y(m * tau);
        for (Eigen::Index t = 0; t < tau; ++t)
            for (Eigen::Index a = 0; a < m; ++a)
                y(t * m + a) = pilots.symbols[static_cast<std::size_t>(t)] * sum(a) +
                               (sigma2 > 0.0 ? rng.complex_normal(sigma2) : cplx(0.0));
        return y;
    }

    ComplexVector lmmse_estimate(const ComplexMatrix &filter, const PilotBlock &pilots, const ComplexVector &y)
    {
        const Eigen::Index m = filter.rows();
        const auto tau = static_cast<Eigen::Index>(pilots.tau());
        if (filter.cols() != m || y.size() != m * tau)
            throw std::invalid_argument("lmmse_estimate: shape mismatch");
        ComplexVector shy = ComplexVector::Zero(m);
        for (Eigen::Index t = 0; t < tau; ++t)
            shy += std::conj(pilots.symbols[static_cast<std::size_t>(t)]) * y.segment(t * m, m);
        return filter * shy;
    }

    ComplexVector make_precoder(const ComplexVector &h_hat, double sigma2, Precoder kind)
    {
        if (kind == Precoder::ebf)
            return h_hat;
        const double denom = sigma2 + h_hat.squaredNorm();
        if (!(denom > 0.0))
            throw EvaluationError("make_precoder: RZF is degenerate for sigma2 = 0 and a zero estimate");
        return h_hat / denom;
    }

    McEstimate estimate_powers(const ScenarioPoint &pt, const McOptions &opt)
    {
        check_point(pt, !opt.perfect_csi);
        if (opt.n_realizations < 1000)
            throw std::invalid_argument("estimate_powers: need at least 1000 realizations, got " +
                                        std::to_string(opt.n_realizations));
        const std::size_t nl = pt.layout->n_cells();
        const std::size_t j = opt.desired;
        if (j >= nl)
            throw std::out_of_range("estimate_powers: desired cell out of range");

        // Quantities per realization: Re g, Im g, |h_ji^H w_i|^2 (i = 0..N_L-1), ||w_i||^2.
        const std::size_t nq = 2 + 2 * nl;
        std::vector<BlockSums> blocks(n_blocks, BlockSums(nq));
        const std::size_t n = opt.n_realizations;

        parallel_for(n_blocks, opt.workers,
                     [&](std::size_t b)
                     {
                         Workspace ws;
                         std::vector<ComplexVector> h(nl * nl);
                         std::vector<ComplexVector> at_bs(nl);
                         std::vector<ComplexVector> w(nl);
                         std::vector<double> q(nq);
                         auto &acc = blocks[b];
                         for (std::size_t r = b * n / n_blocks; r < (b + 1) * n / n_blocks; ++r)
                         {
                             RngStream rng(opt.seed, stream_key(tag_powers, pt.array.m, r));
                             for (std::size_t k = 0; k < nl; ++k)
                                 for (std::size_t i = 0; i < nl; ++i)
                                     fill_channel(h[k * nl + i], pt.layout->link(k, i), pt, rng, ws);
                             const PilotBlock pilots = PilotBlock::qpsk(pt.tau, rng);
                             for (std::size_t i = 0; i < nl; ++i)
                             {
                                 for (std::size_t k = 0; k < nl; ++k)
                                     at_bs[k] = h[k * nl + i];
                                 const ComplexVector y = ul_receive(at_bs, pilots, pt.sigma2, rng);
                                 const ComplexVector h_hat = opt.perfect_csi
                                                                 ? h[i * nl + i]
                                                                 : lmmse_estimate(pt.cov->link(i, i).filter, pilots, y);
                                 w[i] = make_precoder(h_hat, pt.sigma2, opt.kind);
                             }
                             const cplx g = h[j * nl + j].dot(w[j]); // conjugates the first argument
                             q[0] = g.real();
                             q[1] = g.imag();
                             for (std::size_t i = 0; i < nl; ++i)
                             {
                                 q[2 + i] = std::norm(h[j * nl + i].dot(w[i]));
                                 q[2 + nl + i] = w[i].squaredNorm();
                             }
                             acc.n += 1.0;
                             for (std::size_t x = 0; x < nq; ++x)
                             {
                                 acc.s1[x].add(q[x]);
                                 acc.s2[x].add(q[x] * q[x]);
                             }
                         }
                     });

        // Totals merged in block order.
        double n_all = 0.0;
        std::vector<double> t1(nq, 0.0), t2(nq, 0.0);
        for (const auto &blk : blocks)
        {
            n_all += blk.n;
            for (std::size_t x = 0; x < nq; ++x)
                t1[x] += blk.s1[x].value(), t2[x] += blk.s2[x].value();
        }

        auto powers = [&](const std::vector<double> &mu)
        {
            std::array<double, 4> out{};
            const double mean_sq = mu[0] * mu[0] + mu[1] * mu[1];
            const double eta_j = 1.0 / mu[2 + nl + j];
            out[0] = eta_j * mean_sq;
            out[1] = eta_j * (mu[2 + j] - mean_sq);
            double inter = 0.0;
            for (std::size_t i = 0; i < nl; ++i)
                if (i != j)
                    inter += mu[2 + i] / mu[2 + nl + i];
            out[2] = inter;
            out[3] = rate_from_powers(out[0], out[1], out[2], pt.sigma2);
            return out;
        };

        std::vector<double> mu(nq);
        for (std::size_t x = 0; x < nq; ++x)
            mu[x] = t1[x] / n_all;
        const auto full = powers(mu);

        std::vector<std::array<double, 4>> loo(n_blocks);
        std::array<double, 4> loo_mean{};
        for (std::size_t b = 0; b < n_blocks; ++b)
        {
            const double nb = n_all - blocks[b].n;
            for (std::size_t x = 0; x < nq; ++x)
                mu[x] = (t1[x] - blocks[b].s1[x].value()) / nb;
            loo[b] = powers(mu);
            for (int v = 0; v < 4; ++v)
                loo_mean[v] += loo[b][v] / n_blocks;
        }
        std::array<double, 4> se{};
        for (int v = 0; v < 4; ++v)
        {
            double ss = 0.0;
            for (const auto &l : loo)
                ss += (l[v] - loo_mean[v]) * (l[v] - loo_mean[v]);
            se[v] = std::sqrt((n_blocks - 1.0) / n_blocks * ss);
        }

        McEstimate est;
        auto &pb = est.powers;
        pb.source = Source::monte_carlo;
        pb.signal = full[0];
        pb.self_interference = full[1];
        pb.intercell = full[2];
        pb.noise = pt.sigma2;
        pb.rate_bps_hz = full[3];
        pb.stderr_signal = se[0];
        pb.stderr_self_interference = se[1];
        pb.stderr_intercell = se[2];
        pb.stderr_rate = se[3];

        auto &st = est.stats;
        st.n_samples = static_cast<std::size_t>(n_all);
        st.gain_re = stat_from(n_all, t1[0], t2[0]);
        st.gain_im = stat_from(n_all, t1[1], t2[1]);
        for (std::size_t i = 0; i < nl; ++i)
        {
            st.cross_power.push_back(stat_from(n_all, t1[2 + i], t2[2 + i]));
            st.precoder_power.push_back(stat_from(n_all, t1[2 + nl + i], t2[2 + nl + i]));
        }
        return est;
    }

    double precoder_angle(const ComplexVector &h, const ComplexVector &w)
    {
        const double nh = h.norm(), nw = w.norm();
        if (!(nh > 0.0) || !(nw > 0.0))
            return -1.0;
        return std::acos(std::min(1.0, std::abs(h.dot(w)) / (nh * nw)));
    }

    AngleSamples angle_samples(const ScenarioPoint &pt, const AngleOptions &opt)
    {
        if (opt.n_realizations < 10000)
            throw std::invalid_argument("angle_samples: need at least 10^4 realizations, got " +
                                        std::to_string(opt.n_realizations));
        const bool need_filters = !opt.iid_bypass && opt.mode == CsiMode::estimated;
        std::size_t nl = 0;
        if (!opt.iid_bypass)
        {
            check_point(pt, need_filters);
            nl = pt.layout->n_cells();
            if (opt.ue >= nl || opt.bs >= nl)
                throw std::out_of_range("angle_samples: link index out of range");
        }

        const std::size_t n = opt.n_realizations;
        const auto m = static_cast<Eigen::Index>(pt.array.m);
        std::vector<double> all(n);
        parallel_for(n_blocks, opt.workers,
                     [&](std::size_t b)
                     {
                         Workspace ws;
                         std::vector<ComplexVector> at_bs(nl);
                         ComplexVector hv(m), wv(m);
                         for (std::size_t r = b * n / n_blocks; r < (b + 1) * n / n_blocks; ++r)
                         {
                             RngStream rng(opt.seed, stream_key(tag_angles, pt.array.m, r));
                             if (opt.iid_bypass)
                             {
                                 for (Eigen::Index a = 0; a < m; ++a)
                                     hv(a) = rng.complex_normal(1.0);
                                 for (Eigen::Index a = 0; a < m; ++a)
                                     wv(a) = rng.complex_normal(1.0);
                                 all[r] = precoder_angle(hv, wv);
                                 continue;
                             }
                             for (std::size_t k = 0; k < nl; ++k)
                                 fill_channel(at_bs[k], pt.layout->link(k, opt.bs), pt, rng, ws);
                             const PilotBlock pilots = PilotBlock::qpsk(pt.tau, rng);
                             const ComplexVector y = ul_receive(at_bs, pilots, pt.sigma2, rng);
                             const ComplexVector h_hat =
                                 opt.mode == CsiMode::perfect
                                     ? at_bs[opt.bs]
                                     : lmmse_estimate(pt.cov->link(opt.bs, opt.bs).filter, pilots, y);
                             all[r] = precoder_angle(at_bs[opt.ue], make_precoder(h_hat, pt.sigma2, opt.kind));
                         }
                     });

        AngleSamples out;
        out.angles.reserve(n);
        for (double a : all)
        {
            if (a < 0.0)
                ++out.skipped;
            else
                out.angles.push_back(a);
        }
        return out;
    }

    double loyka_pdf(double phi, std::size_t n)
    {
        if (n < 2)
            throw std::invalid_argument("loyka_pdf: N must be >= 2");
        if (phi < 0.0 || phi > pi / 2.0)
            return 0.0;
        const double nd = static_cast<double>(n);
        return 2.0 * (nd - 1.0) * std::pow(std::sin(phi), 2.0 * nd - 3.0) * std::cos(phi);
    }

    double loyka_cdf(double phi, std::size_t n)
    {
        if (n < 2)
            throw std::invalid_argument("loyka_cdf: N must be >= 2");
        if (phi <= 0.0)
            return 0.0;
        if (phi >= pi / 2.0)
            return 1.0;
        return std::pow(std::sin(phi), 2.0 * (static_cast<double>(n) - 1.0));
    }

    AngleHistogram angle_histogram(const AngleSamples &s, std::size_t m, std::size_t bins)
    {
        if (bins < 1)
            throw std::invalid_argument("angle_histogram: bins must be >= 1");
        AngleHistogram h;
        h.samples = s.angles.size();
        h.skipped = s.skipped;
        const double width = 90.0 / static_cast<double>(bins);
        for (std::size_t b = 0; b <= bins; ++b)
            h.edges_deg.push_back(width * static_cast<double>(b));
        h.density.assign(bins, 0.0);
        KahanSum<double> sum;
        for (double a : s.angles)
        {
            const double deg = rad_to_deg(a);
            sum.add(deg);
            const auto b = std::min(bins - 1, static_cast<std::size_t>(deg / width));
            h.density[b] += 1.0;
        }
        if (h.samples > 0)
        {
            h.mean_deg = sum.value() / static_cast<double>(h.samples);
            for (auto &d : h.density)
                d /= static_cast<double>(h.samples) * width;
        }
        h.reference.resize(bins);
        for (std::size_t b = 0; b < bins; ++b)
        {
            if (m < 2)
                h.reference[b] = std::numeric_limits<double>::quiet_NaN();
            else
                h.reference[b] = (loyka_cdf(deg_to_rad(h.edges_deg[b + 1]), m) - loyka_cdf(deg_to_rad(h.edges_deg[b]), m)) / width;
        }
        return h;
    }

    AngleHistogram angle_distribution(const ScenarioPoint &pt, const AngleOptions &opt)
    {
        return angle_histogram(angle_samples(pt, opt), pt.array.m, opt.bins);
    }

    void write_histogram_csv(const AngleHistogram &h, const std::filesystem::path &path)
    {
        std::ofstream os(path, std::ios::binary);
        if (!os)
            throw std::runtime_error("cannot open " + path.string() + " for writing");
        os.precision(16);
        os << std::scientific;
        os << "# samples=" << h.samples << "\n# skipped=" << h.skipped << "\n# mean_deg=" << h.mean_deg << "\n";
        os << "bin_left_deg,bin_right_deg,density,reference_pdf\n";
        for (std::size_t b = 0; b < h.density.size(); ++b)
            os << h.edges_deg[b] << ',' << h.edges_deg[b + 1] << ',' << h.density[b] << ',' << h.reference[b] << '\n';
        if (!os)
            throw std::runtime_error("write failed for " + path.string());
    }
}
