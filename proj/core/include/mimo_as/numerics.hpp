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

#ifndef MIMO_AS_NUMERICS_HPP
#define MIMO_AS_NUMERICS_HPP

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace mimo_as
{
    using cplx = std::complex<double>;
    using ComplexMatrix = Eigen::MatrixXcd;
    using ComplexVector = Eigen::VectorXcd;

    inline constexpr double pi = 3.14159265358979323846;

    // Centralised tolerance constants.
    namespace tol
    {
        inline constexpr double hermitian_abs = 1e-12;   // |A(m,n) - conj(A(n,m))|
        inline constexpr double toeplitz_abs = 1e-10;    // Toeplitz structure check
        inline constexpr double solve_residual = 1e-10;  // ||AX - B||_F / ||B||_F
        inline constexpr double psd_relative = 1e-9;     // min eigenvalue / trace
        inline constexpr double trace_imag = 1e-10;      // imaginary residue of a Hermitian trace
        inline constexpr double moment_imag_rel = 1e-8;  // imaginary residue of a second moment
        inline constexpr double negative_rel = 1e-9;     // clamp band for rounding-negative powers
    }

    enum class QuadratureRule
    {
        gauss_legendre
    };

    struct QuadratureSpec
    {
        QuadratureRule rule = QuadratureRule::gauss_legendre;
        std::size_t nodes = 64;
        double abs_tol = 1e-10;

        void validate() const;

        // Node count scaled with the oscillation rate c_max of exp(-j c cos(phi)) on [a, b]:
        // max(64, ceil(8 (b - a) c_max / pi)).
        static QuadratureSpec for_oscillation(double a, double b, double c_max, double abs_tol = 1e-10);
    };

    // Gauss-Legendre nodes and weights on [-1, 1].
    struct GaussLegendreRule
    {
        std::vector<double> nodes;
        std::vector<double> weights;
    };
    GaussLegendreRule gauss_legendre(std::size_t order);

    // Composite Gauss-Legendre integral of a complex-valued function. The panel count is doubled
    // until two successive estimates agree to spec.abs_tol; the finer estimate is returned.
    cplx integrate_complex(const std::function<cplx(double)> &f, double a, double b, const QuadratureSpec &spec);

    // Vector-valued variant: f(x, out) fills out[0..dim) at abscissa x. All components share nodes
    // and the convergence test uses the largest componentwise change.
    std::vector<cplx> integrate_complex_vector(const std::function<void(double, std::span<cplx>)> &f, std::size_t dim,
                                               double a, double b, const QuadratureSpec &spec);

    // (A + A^H) / 2
    ComplexMatrix hermitian_part(const ComplexMatrix &a);

    // max |A(m,n) - conj(A(n,m))|; throws std::invalid_argument when A is not square.
    double hermitian_deviation(const ComplexMatrix &a);

    bool is_hermitian(const ComplexMatrix &a, double abs_tol = tol::hermitian_abs);

    // Solves A X = B for Hermitian positive-definite A by Cholesky factorisation.
    // Throws SingularityError naming the first non-positive pivot.
    ComplexMatrix hermitian_solve(const ComplexMatrix &a, const ComplexMatrix &b);

    // Smallest eigenvalue of a Hermitian matrix (PSD check helper).
    double min_eigenvalue_hermitian(const ComplexMatrix &a);

    // ||A - B||_F / ||B||_F (plain ||A - B||_F when B is zero).
    double frobenius_relative_error(const ComplexMatrix &a, const ComplexMatrix &b);

    // Compensated summation.
    template <typename T>
    class KahanSum
    {
    public:
        void add(T x)
        {
            T y = x - comp_;
            T t = sum_ + y;
            comp_ = (t - sum_) - y;
            sum_ = t;
        }
        T value() const { return sum_; }

    private:
        T sum_{};
        T comp_{};
    };
}

#endif
