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

#include "mimo_as/analytic_rate.hpp"
#include "mimo_as/errors.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mimo_as
{
    namespace
    {
        void check_inputs(const SecondMomentInputs &in)
        {
            if (in.filter == nullptr || in.r_link == nullptr)
                throw std::invalid_argument("second moment: filter and link covariance are required");
            const Eigen::Index m = in.filter->rows();
            if (in.filter->cols() != m || in.r_link->rows() != m || in.r_link->cols() != m)
                throw std::invalid_argument("second moment: shape mismatch");
            for (const auto *r : in.r_others)
                if (r == nullptr || r->rows() != m || r->cols() != m)
                    throw std::invalid_argument("second moment: shape mismatch in interfering covariances");
            if (in.n_paths < 1)
                throw std::invalid_argument("second moment: n_paths must be >= 1");
            if (in.e_table.size() < static_cast<std::size_t>(2 * m - 1))
                throw std::invalid_argument("second moment: shift table must hold 2M-1 entries");
            if (in.tau < 1)
                throw std::invalid_argument("second moment: tau must be >= 1");
        }

        double finish(const cplx &total, double magnitude, const char *who)
        {
            const double scale = std::max(magnitude, 1e-300);
            if (std::abs(total.imag()) > tol::moment_imag_rel * scale)
            {
                std::ostringstream os;
                os << who << ": imaginary residue " << total.imag() << " exceeds tolerance";
                throw NumericalConsistencyError(os.str());
            }
            if (total.real() < -tol::negative_rel * scale)
            {
                std::ostringstream os;
                os << who << ": negative second moment " << total.real();
                throw NumericalConsistencyError(os.str());
            }
            return std::max(total.real(), 0.0);
        }

        cplx noise_term(const SecondMomentInputs &in)
        {
            const ComplexMatrix &f = *in.filter;
            return in.sigma2 * static_cast<double>(in.tau) * (f.adjoint() * (*in.r_link) * f).trace();
        }
    }

    std::string_view to_string(Source s) { return s == Source::analytic ? "analytic" : "monte-carlo"; }

    double rate_from_powers(double signal, double self_interference, double intercell, double noise)
    {
        return std::log2(1.0 + signal / (noise + self_interference + intercell));
    }

    double PowerBreakdown::recomputed_rate() const
    {
        return rate_from_powers(signal, self_interference, intercell, noise);
    }

    double first_moment(const ComplexMatrix &r_hat_jj)
    {
        if (r_hat_jj.rows() != r_hat_jj.cols())
            throw std::invalid_argument("first_moment: matrix is not square");
        const cplx t = r_hat_jj.trace();
        if (std::abs(t.imag()) > tol::trace_imag * std::max(1.0, std::abs(t.real())))
            throw NumericalConsistencyError("first_moment: trace has imaginary residue " + std::to_string(t.imag()));
        return t.real();
    }

    cplx shift_lookup(std::span<const cplx> e_table, std::ptrdiff_t s)
    {
        const auto mag = static_cast<std::size_t>(s < 0 ? -s : s);
        if (mag >= e_table.size())
            throw std::out_of_range("shift " + std::to_string(s) + " outside the correlation table");
        return s < 0 ? std::conj(e_table[mag]) : e_table[mag];
    }

    cplx e_phi(std::size_t m, std::size_t n, std::size_t mp, std::size_t np, double beta, std::size_t n_paths,
               std::span<const cplx> e_table)
    {
        if (n_paths < 1)
            throw std::invalid_argument("e_phi: n_paths must be >= 1");
        const auto sm = static_cast<std::ptrdiff_t>(m);
        const auto sn = static_cast<std::ptrdiff_t>(n);
        const auto smp = static_cast<std::ptrdiff_t>(mp);
        const auto snp = static_cast<std::ptrdiff_t>(np);
        const double np_d = static_cast<double>(n_paths);
        const cplx coupled = shift_lookup(e_table, sn - sm + snp - smp);
        const cplx separable = shift_lookup(e_table, sn - sm) * shift_lookup(e_table, snp - smp) +
                               shift_lookup(e_table, snp - sm) * shift_lookup(e_table, sn - smp);
        return (beta * beta / np_d) * (2.0 * coupled + (np_d - 1.0) * separable);
    }

    SecondMomentInputs second_moment_inputs(const ScenarioCovariances &sc, std::size_t ue_j, std::size_t bs_i,
                                            std::size_t n_paths)
    {
        if (ue_j >= sc.n_cells || bs_i >= sc.n_cells)
            throw std::out_of_range("second_moment_inputs: cell index out of range");
        const auto &link = sc.link(ue_j, bs_i);
        SecondMomentInputs in;
        in.filter = &sc.link(bs_i, bs_i).filter;
        in.r_link = &link.r;
        for (std::size_t k = 0; k < sc.n_cells; ++k)
            if (k != ue_j)
                in.r_others.push_back(&sc.link(k, bs_i).r);
        in.beta = link.beta;
        in.n_paths = n_paths;
        in.e_table = link.e_table;
        in.sigma2 = sc.sigma2;
        in.tau = sc.tau;
        return in;
    }

    double second_moment_reference(const SecondMomentInputs &in)
    {
        check_inputs(in);
        const ComplexMatrix &f = *in.filter;
        const ComplexMatrix g = f.adjoint();
        const ComplexMatrix &rj = *in.r_link;
        const Eigen::Index m = f.rows();

        // Signed shift table E(-2(M-1)..2(M-1)).
        const std::ptrdiff_t off = 2 * (m - 1);
        std::vector<cplx> es(static_cast<std::size_t>(2 * off + 1));
        for (std::ptrdiff_t s = -off; s <= off; ++s)
            es[static_cast<std::size_t>(s + off)] = shift_lookup(in.e_table, s);
        auto e = [&](std::ptrdiff_t s)
        { return es[static_cast<std::size_t>(s + off)]; };

        const double np_d = static_cast<double>(in.n_paths);
        const double c = in.beta * in.beta / np_d;

        cplx quad_sum = 0.0;
        double magnitude = 0.0;
        for (Eigen::Index a = 0; a < m; ++a) // m
        {
            for (Eigen::Index b = 0; b < m; ++b) // n
            {
                const cplx fab = f(a, b);
                cplx inner = 0.0;
                for (Eigen::Index ap = 0; ap < m; ++ap) // m'
                {
                    for (Eigen::Index bp = 0; bp < m; ++bp) // n'
                    {
                        const cplx ephi =
                            c * (2.0 * e(b - a + bp - ap) + (np_d - 1.0) * (e(b - a) * e(bp - ap) + e(bp - a) * e(b - ap)));
                        cplx ksum = 0.0;
                        for (const auto *rk : in.r_others)
                            ksum += rj(bp, a) * (*rk)(b, ap);
                        inner += g(ap, bp) * (ephi + ksum);
                    }
                }
                const cplx term = fab * inner;
                quad_sum += term;
                magnitude += std::abs(term);
            }
        }
        const double t2 = static_cast<double>(in.tau) * static_cast<double>(in.tau);
        const cplx noise = noise_term(in);
        return finish(t2 * quad_sum + noise, t2 * magnitude + std::abs(noise), "second_moment_reference");
    }

    double second_moment_fast(const SecondMomentInputs &in)
    {
        check_inputs(in);
        const ComplexMatrix &f = *in.filter;
        const ComplexMatrix g = f.adjoint();
        const ComplexMatrix &rj = *in.r_link;
        const Eigen::Index m = f.rows();
        const auto mu = static_cast<std::size_t>(m);

        const ComplexMatrix r_phi = toeplitz_hermitian(in.e_table, mu);

        // Diagonal sums T(s) = sum_m F(m, m + s), s = -(M-1)..M-1.
        const std::ptrdiff_t off = m - 1;
        std::vector<cplx> tf(static_cast<std::size_t>(2 * off + 1), 0.0), tg(tf.size(), 0.0);
        for (Eigen::Index a = 0; a < m; ++a)
        {
            for (Eigen::Index b = 0; b < m; ++b)
            {
                tf[static_cast<std::size_t>(b - a + off)] += f(a, b);
                tg[static_cast<std::size_t>(b - a + off)] += g(a, b);
            }
        }
        cplx coupled = 0.0;
        for (std::ptrdiff_t s = -off; s <= off; ++s)
        {
            cplx row = 0.0;
            for (std::ptrdiff_t sp = -off; sp <= off; ++sp)
                row += tg[static_cast<std::size_t>(sp + off)] * shift_lookup(in.e_table, s + sp);
            coupled += tf[static_cast<std::size_t>(s + off)] * row;
        }

        const ComplexMatrix f_rphi = f * r_phi;
        const ComplexMatrix g_rphi = g * r_phi;
        const cplx separable = f_rphi.trace() * g_rphi.trace() + (f_rphi * g_rphi).trace();

        const double np_d = static_cast<double>(in.n_paths);
        const cplx ephi = (in.beta * in.beta / np_d) * (2.0 * coupled + (np_d - 1.0) * separable);

        cplx ksum = 0.0;
        const ComplexMatrix g_rj = g * rj;
        for (const auto *rk : in.r_others)
            ksum += (f * (*rk) * g_rj).trace();

        const double t2 = static_cast<double>(in.tau) * static_cast<double>(in.tau);
        const cplx noise = noise_term(in);
        const double magnitude = t2 * (std::abs(ephi) + std::abs(ksum)) + std::abs(noise);
        return finish(t2 * (ephi + ksum) + noise, magnitude, "second_moment_fast");
    }

    double self_interference(double second, double first)
    {
        if (second < 0.0)
            throw std::invalid_argument("self_interference: second moment must be >= 0");
        const double var = second - first * first;
        if (var < -tol::negative_rel * second)
            throw NumericalConsistencyError("self_interference: variance " + std::to_string(var) + " is negative");
        return std::max(var, 0.0);
    }

    PowerBreakdown ergodic_rate_point(const ScenarioCovariances &sc, std::size_t n_paths, std::size_t desired,
                                      SecondMomentPath path)
    {
        if (desired >= sc.n_cells)
            throw std::out_of_range("ergodic_rate_point: desired cell out of range");
        auto second = [&](std::size_t ue, std::size_t bs)
        {
            const auto in = second_moment_inputs(sc, ue, bs, n_paths);
            return path == SecondMomentPath::fast ? second_moment_fast(in) : second_moment_reference(in);
        };
        auto eta = [&](std::size_t bs)
        {
            const double tr = first_moment(sc.link(bs, bs).r_hat);
            if (!(tr > 0.0))
                throw NumericalConsistencyError("ergodic_rate_point: tr{R_hat} of BS " + std::to_string(bs) +
                                                " is zero; power normalisation undefined");
            return 1.0 / tr;
        };

        const double first = first_moment(sc.link(desired, desired).r_hat);
        const double eta_j = eta(desired);

        PowerBreakdown pb;
        pb.source = Source::analytic;
        pb.noise = sc.sigma2;
        pb.signal = eta_j * first * first;
        pb.self_interference = eta_j * self_interference(second(desired, desired), first);
        double inter = 0.0;
        for (std::size_t bs = 0; bs < sc.n_cells; ++bs)
            if (bs != desired)
                inter += eta(bs) * second(desired, bs);
        pb.intercell = inter;
        pb.rate_bps_hz = pb.recomputed_rate();
        return pb;
    }
}
