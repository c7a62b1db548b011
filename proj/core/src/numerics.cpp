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

#include "mimo_as/numerics.hpp"
#include "mimo_as/errors.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace mimo_as
{
    namespace
    {
        constexpr std::size_t panel_order = 16;
        constexpr std::size_t max_panels = std::size_t{1} << 18;

        const GaussLegendreRule &panel_rule()
        {
            static const GaussLegendreRule rule = gauss_legendre(panel_order);
            return rule;
        }

        [[noreturn]] void throw_non_finite(double x, const cplx &v)
        {
            std::ostringstream os;
            os.precision(17);
            os << "non-finite integrand value (" << v.real() << ", " << v.imag() << ") at node x = " << x;
            throw EvaluationError(os.str());
        }

        // One composite pass with n_panels equal panels; accumulates into out.
        void composite_pass(const std::function<void(double, std::span<cplx>)> &f, std::size_t dim, double a,
                            double b, std::size_t n_panels, std::vector<cplx> &out)
        {
            const auto &rule = panel_rule();
            std::vector<KahanSum<cplx>> acc(dim);
            std::vector<cplx> buf(dim);
            const double h = (b - a) / static_cast<double>(n_panels);
            for (std::size_t p = 0; p < n_panels; ++p)
            {
                const double mid = a + (static_cast<double>(p) + 0.5) * h;
                for (std::size_t q = 0; q < rule.nodes.size(); ++q)
                {
                    const double x = mid + 0.5 * h * rule.nodes[q];
                    f(x, buf);
                    const double w = 0.5 * h * rule.weights[q];
                    for (std::size_t d = 0; d < dim; ++d)
                    {
                        if (!std::isfinite(buf[d].real()) || !std::isfinite(buf[d].imag()))
                            throw_non_finite(x, buf[d]);
                        acc[d].add(w * buf[d]);
                    }
                }
            }
            out.resize(dim);
            for (std::size_t d = 0; d < dim; ++d)
                out[d] = acc[d].value();
        }
    }

    void QuadratureSpec::validate() const
    {
        if (nodes < 2)
            throw std::invalid_argument("QuadratureSpec: nodes must be >= 2");
        if (!(abs_tol > 0.0))
            throw std::invalid_argument("QuadratureSpec: abs_tol must be > 0");
    }

    QuadratureSpec QuadratureSpec::for_oscillation(double a, double b, double c_max, double abs_tol)
    {
        QuadratureSpec spec;
        spec.abs_tol = abs_tol;
        const double scaled = std::ceil(8.0 * (b - a) * std::abs(c_max) / pi);
        spec.nodes = std::max<std::size_t>(64, static_cast<std::size_t>(std::max(scaled, 0.0)));
        return spec;
    }

    GaussLegendreRule gauss_legendre(std::size_t order)
    {
        if (order < 1)
            throw std::invalid_argument("gauss_legendre: order must be >= 1");
        GaussLegendreRule rule;
        rule.nodes.resize(order);
        rule.weights.resize(order);
        const auto n = static_cast<double>(order);
        for (std::size_t i = 0; i < (order + 1) / 2; ++i)
        {
            // Tricomi initial guess, then Newton on P_n.
            double x = std::cos(pi * (static_cast<double>(i) + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it)
            {
                double p0 = 1.0, p1 = x;
                for (std::size_t k = 2; k <= order; ++k)
                {
                    const auto kk = static_cast<double>(k);
                    const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
                    p0 = p1;
                    p1 = p2;
                }
                if (order == 1)
                    p0 = 1.0;
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16)
                    break;
            }
            // Recompute derivative at the converged root.
            double p0 = 1.0, p1 = x;
            for (std::size_t k = 2; k <= order; ++k)
            {
                const auto kk = static_cast<double>(k);
                const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
                p0 = p1;
                p1 = p2;
            }
            dp = (order == 1) ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
            const double w = 2.0 / ((1.0 - x * x) * dp * dp);
            rule.nodes[i] = -x;
            rule.nodes[order - 1 - i] = x;
            rule.weights[i] = w;
            rule.weights[order - 1 - i] = w;
        }
        if (order % 2 == 1)
            rule.nodes[order / 2] = 0.0;
        return rule;
    }

    std::vector<cplx> integrate_complex_vector(const std::function<void(double, std::span<cplx>)> &f,
                                               std::size_t dim, double a, double b, const QuadratureSpec &spec)
    {
        spec.validate();
        if (!(a < b))
            throw std::invalid_argument("integrate_complex: requires a < b");
        if (dim == 0)
            return {};

        std::size_t panels = std::max<std::size_t>(1, (spec.nodes + panel_order - 1) / panel_order);
        std::vector<cplx> coarse, fine;
        composite_pass(f, dim, a, b, panels, coarse);
        while (true)
        {
            panels *= 2;
            composite_pass(f, dim, a, b, panels, fine);
            double change = 0.0;
            for (std::size_t d = 0; d < dim; ++d)
                change = std::max(change, std::abs(fine[d] - coarse[d]));
            if (change <= spec.abs_tol)
                return fine;
            if (panels >= max_panels)
            {
                std::ostringstream os;
                os << "quadrature did not reach abs_tol " << spec.abs_tol << " (last change " << change << ")";
                throw EvaluationError(os.str());
            }
            coarse.swap(fine);
        }
    }

    cplx integrate_complex(const std::function<cplx(double)> &f, double a, double b, const QuadratureSpec &spec)
    {
        auto wrapped = [&f](double x, std::span<cplx> out)
        { out[0] = f(x); };
        return integrate_complex_vector(wrapped, 1, a, b, spec)[0];
    }

    ComplexMatrix hermitian_part(const ComplexMatrix &a)
    {
        if (a.rows() != a.cols())
            throw std::invalid_argument("hermitian_part: matrix is not square");
        return 0.5 * (a + a.adjoint());
    }

    double hermitian_deviation(const ComplexMatrix &a)
    {
        if (a.rows() != a.cols())
            throw std::invalid_argument("hermitian_deviation: matrix is not square");
        double dev = 0.0;
        for (Eigen::Index m = 0; m < a.rows(); ++m)
            for (Eigen::Index n = m; n < a.cols(); ++n)
                dev = std::max(dev, std::abs(a(m, n) - std::conj(a(n, m))));
        return dev;
    }

    bool is_hermitian(const ComplexMatrix &a, double abs_tol)
    {
        return a.rows() == a.cols() && hermitian_deviation(a) <= abs_tol;
    }

    ComplexMatrix hermitian_solve(const ComplexMatrix &a, const ComplexMatrix &b)
    {
        if (a.rows() != a.cols())
            throw std::invalid_argument("hermitian_solve: A is not square");
        if (b.rows() != a.rows())
            throw std::invalid_argument("hermitian_solve: B row count does not match A");
        const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
        if (hermitian_deviation(a) > tol::hermitian_abs * scale)
            throw std::invalid_argument("hermitian_solve: A is not Hermitian");

        const Eigen::Index n = a.rows();
        // Lower-triangular L with A = L L^H.
        ComplexMatrix l = ComplexMatrix::Zero(n, n);
        for (Eigen::Index j = 0; j < n; ++j)
        {
            double d = a(j, j).real();
            for (Eigen::Index k = 0; k < j; ++k)
                d -= std::norm(l(j, k));
            if (!(d > 0.0))
                throw SingularityError(static_cast<std::size_t>(j), d);
            const double ljj = std::sqrt(d);
            l(j, j) = ljj;
            for (Eigen::Index i = j + 1; i < n; ++i)
            {
                cplx s = a(i, j);
                for (Eigen::Index k = 0; k < j; ++k)
                    s -= l(i, k) * std::conj(l(j, k));
                l(i, j) = s / ljj;
            }
        }

        ComplexMatrix x = b;
        // Forward: L Y = B.
        for (Eigen::Index c = 0; c < x.cols(); ++c)
        {
            for (Eigen::Index i = 0; i < n; ++i)
            {
                cplx s = x(i, c);
                for (Eigen::Index k = 0; k < i; ++k)
                    s -= l(i, k) * x(k, c);
                x(i, c) = s / l(i, i).real();
            }
            // Backward: L^H X = Y.
            for (Eigen::Index i = n - 1; i >= 0; --i)
            {
                cplx s = x(i, c);
                for (Eigen::Index k = i + 1; k < n; ++k)
                    s -= std::conj(l(k, i)) * x(k, c);
                x(i, c) = s / l(i, i).real();
            }
        }
        return x;
    }

    double min_eigenvalue_hermitian(const ComplexMatrix &a)
    {
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(a), Eigen::EigenvaluesOnly);
        return es.eigenvalues().minCoeff();
    }

    double frobenius_relative_error(const ComplexMatrix &a, const ComplexMatrix &b)
    {
        const double diff = (a - b).norm();
        const double ref = b.norm();
        return ref > 0.0 ? diff / ref : diff;
    }
}
