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

#include "mimo_as/covariance.hpp"
#include "mimo_as/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>

namespace mimo_as
{
    AngularSpread::AngularSpread(double delta_rad) : delta(delta_rad)
    {
        if (!(delta_rad >= 0.0) || delta_rad > pi + 1e-15)
            throw std::invalid_argument("AngularSpread: delta must lie in [0, pi]");
        delta = std::min(delta_rad, pi);
    }

    AngularSpread AngularSpread::from_degrees(double deg) { return AngularSpread(deg_to_rad(deg)); }

    ArraySpec::ArraySpec(std::size_t antennas, double spacing) : m(antennas), spacing_ratio(spacing)
    {
        if (antennas < 1)
            throw std::invalid_argument("ArraySpec: antenna count must be >= 1");
        if (!(spacing > 0.0))
            throw std::invalid_argument("ArraySpec: spacing ratio must be > 0");
    }

    QuadratureSpec default_quadrature(const AngularSpread &spread, double spacing_ratio, std::size_t max_shift)
    {
        const double c_max = 2.0 * pi * static_cast<double>(max_shift) * spacing_ratio;
        return QuadratureSpec::for_oscillation(-spread.delta, spread.delta, c_max);
    }

    std::vector<cplx> shift_correlations(double mean_angle, const AngularSpread &spread, double spacing_ratio,
                                         std::size_t count, const std::optional<QuadratureSpec> &quad)
    {
        if (count == 0)
            return {};
        const double k = 2.0 * pi * spacing_ratio;
        std::vector<cplx> e(count);
        if (spread.delta == 0.0)
        {
            const double c = std::cos(mean_angle);
            for (std::size_t s = 0; s < count; ++s)
                e[s] = std::polar(1.0, -k * static_cast<double>(s) * c);
            return e;
        }

        const double inv_width = 1.0 / (2.0 * spread.delta);
        auto integrand = [&](double phi, std::span<cplx> out)
        {
            const cplx z = std::polar(1.0, -k * std::cos(phi));
            cplx p = inv_width;
            for (std::size_t s = 0; s < out.size(); ++s)
            {
                out[s] = p;
                p *= z;
            }
        };
        const QuadratureSpec spec = quad.value_or(default_quadrature(spread, spacing_ratio, count - 1));
        e = integrate_complex_vector(integrand, count, mean_angle - spread.delta, mean_angle + spread.delta, spec);
        e[0] = 1.0;
        return e;
    }

    ComplexMatrix toeplitz_hermitian(std::span<const cplx> first_column, std::size_t m)
    {
        if (first_column.size() < m)
            throw std::invalid_argument("toeplitz_hermitian: first column shorter than M");
        const auto n = static_cast<Eigen::Index>(m);
        ComplexMatrix a(n, n);
        for (Eigen::Index r = 0; r < n; ++r)
        {
            a(r, r) = cplx(first_column[0].real(), 0.0);
            for (Eigen::Index c = 0; c < r; ++c)
            {
                const cplx v = first_column[static_cast<std::size_t>(r - c)];
                a(r, c) = v;
                a(c, r) = std::conj(v);
            }
        }
        return a;
    }

    ComplexMatrix angular_covariance(double mean_angle, const AngularSpread &spread, const ArraySpec &array,
                                     const std::optional<QuadratureSpec> &quad)
    {
        const auto e = shift_correlations(mean_angle, spread, array.spacing_ratio, array.m, quad);
        return toeplitz_hermitian(e, array.m);
    }

    ComplexMatrix lmmse_filter(const ComplexMatrix &r_target, std::span<const ComplexMatrix> r_all, double sigma2,
                               std::size_t tau)
    {
        if (!(sigma2 > 0.0))
            throw std::invalid_argument("lmmse_filter: sigma2 must be > 0");
        if (tau < 1)
            throw std::invalid_argument("lmmse_filter: tau must be >= 1");
        if (r_all.empty())
            throw std::invalid_argument("lmmse_filter: r_all is empty");
        const Eigen::Index m = r_target.rows();
        if (r_target.cols() != m)
            throw std::invalid_argument("lmmse_filter: shape mismatch (target not square)");
        bool member = false;
        ComplexMatrix a = sigma2 * ComplexMatrix::Identity(m, m);
        for (const auto &r : r_all)
        {
            if (r.rows() != m || r.cols() != m)
                throw std::invalid_argument("lmmse_filter: shape mismatch");
            a += static_cast<double>(tau) * r;
            if (!member && (r - r_target).norm() <= 1e-12 * std::max(1.0, r_target.norm()))
                member = true;
        }
        if (!member)
            throw std::invalid_argument("lmmse_filter: target covariance is not a member of r_all");
        // R A^-1 = (A^-1 R)^H for Hermitian R and A.
        return hermitian_solve(hermitian_part(a), r_target).adjoint();
    }

    ComplexMatrix estimate_covariance(const ComplexMatrix &filter, const ComplexMatrix &r, std::size_t tau)
    {
        if (filter.rows() != r.rows() || filter.cols() != r.cols() || r.rows() != r.cols())
            throw std::invalid_argument("estimate_covariance: shape mismatch");
        return hermitian_part(static_cast<double>(tau) * (filter * r));
    }

    std::vector<cplx> shift_correlation_table(const ComplexMatrix &r_phi)
    {
        if (r_phi.rows() != r_phi.cols() || r_phi.rows() < 1)
            throw StructureError("shift_correlation_table: matrix is not square");
        const Eigen::Index m = r_phi.rows();
        for (Eigen::Index r = 0; r < m; ++r)
        {
            for (Eigen::Index c = 0; c < m; ++c)
            {
                const cplx ref = (r >= c) ? r_phi(r - c, 0) : std::conj(r_phi(c - r, 0));
                if (std::abs(r_phi(r, c) - ref) > tol::toeplitz_abs)
                    throw StructureError("shift_correlation_table: matrix is not Toeplitz-Hermitian at (" +
                                         std::to_string(r) + ", " + std::to_string(c) + ")");
            }
        }
        std::vector<cplx> e(static_cast<std::size_t>(m));
        for (Eigen::Index s = 0; s < m; ++s)
            e[static_cast<std::size_t>(s)] = r_phi(s, 0);
        return e;
    }

    std::vector<double> diagonalization_profile(const ComplexMatrix &r_phi)
    {
        const auto e = shift_correlation_table(r_phi);
        std::vector<double> out(e.size());
        std::transform(e.begin(), e.end(), out.begin(), [](const cplx &v) { return std::abs(v); });
        return out;
    }

    ScenarioCovariances build_covariances(const Layout &layout, const AngularSpread &spread, const ArraySpec &array,
                                          double sigma2, std::size_t tau)
    {
        if (!(sigma2 > 0.0))
            throw std::invalid_argument("build_covariances: sigma2 must be > 0");
        if (tau < 1)
            throw std::invalid_argument("build_covariances: tau must be >= 1");
        const std::size_t n = layout.n_cells();
        const std::size_t m = array.m;
        const auto mi = static_cast<Eigen::Index>(m);

        ScenarioCovariances sc;
        sc.n_cells = n;
        sc.m = m;
        sc.sigma2 = sigma2;
        sc.tau = tau;
        sc.links.resize(n * n);

        for (std::size_t ue = 0; ue < n; ++ue)
        {
            for (std::size_t bs = 0; bs < n; ++bs)
            {
                const auto &g = layout.link(ue, bs);
                auto &set = sc.links[ue * n + bs];
                set.beta = g.beta;
                set.mean_angle = g.los_angle;
                set.e_table = shift_correlations(g.los_angle, spread, array.spacing_ratio, 2 * m - 1);
                set.r_phi = toeplitz_hermitian(set.e_table, m);
                set.r = g.beta * set.r_phi;
            }
        }

        // One factorisation per BS; the filter is pilot independent.
        for (std::size_t bs = 0; bs < n; ++bs)
        {
            ComplexMatrix a = sigma2 * ComplexMatrix::Identity(mi, mi);
            ComplexMatrix rhs(mi, mi * static_cast<Eigen::Index>(n));
            for (std::size_t ue = 0; ue < n; ++ue)
            {
                const auto &r = sc.links[ue * n + bs].r;
                a += static_cast<double>(tau) * r;
                rhs.middleCols(static_cast<Eigen::Index>(ue) * mi, mi) = r;
            }
            const ComplexMatrix x = hermitian_solve(hermitian_part(a), rhs);
            for (std::size_t ue = 0; ue < n; ++ue)
            {
                auto &set = sc.links[ue * n + bs];
                set.filter = x.middleCols(static_cast<Eigen::Index>(ue) * mi, mi).adjoint();
                set.r_hat = estimate_covariance(set.filter, set.r, tau);
            }
        }
        return sc;
    }

    void write_covariance_csv(const CovarianceSet &set, const std::filesystem::path &path)
    {
        std::ofstream os(path);
        if (!os)
            throw std::runtime_error("cannot open " + path.string() + " for writing");
        os.precision(17);
        os << std::scientific;
        auto dump = [&os](const char *name, const ComplexMatrix &a)
        {
            for (Eigen::Index r = 0; r < a.rows(); ++r)
            {
                os << name << ',' << r;
                for (Eigen::Index c = 0; c < a.cols(); ++c)
                    os << ',' << a(r, c).real() << ',' << a(r, c).imag();
                os << '\n';
            }
        };
        os << "# beta=" << set.beta << " mean_angle_rad=" << set.mean_angle << '\n';
        os << "matrix,row,re_0,im_0,...\n";
        dump("r_phi", set.r_phi);
        dump("r", set.r);
        dump("filter", set.filter);
        dump("r_hat", set.r_hat);
        if (!os)
            throw std::runtime_error("write failed for " + path.string());
    }
}
