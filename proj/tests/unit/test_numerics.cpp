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

#include "catch_amalgamated.hpp"
#include "oracles.hpp"

#include "mimo_as/errors.hpp"
#include "mimo_as/numerics.hpp"

#include <cmath>
#include <limits>
#include <random>

using namespace mimo_as;
using Catch::Approx;

TEST_CASE("Gauss-Legendre nodes integrate polynomials exactly")
{
    for (std::size_t n : {2, 5, 16, 40})
    {
        const auto r = gauss_legendre(n);
        REQUIRE(r.nodes.size() == n);
        double wsum = 0.0;
        for (double w : r.weights)
            wsum += w;
        CHECK(wsum == Approx(2.0).margin(1e-14));
        // degree 2n-1 is the highest exact degree
        const int deg = static_cast<int>(2 * n - 2);
        double q = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            q += r.weights[i] * std::pow(r.nodes[i], deg);
        CHECK(q == Approx(2.0 / (deg + 1)).margin(1e-13));
        for (std::size_t i = 0; i < n; ++i)
            CHECK(r.nodes[i] == Approx(-r.nodes[n - 1 - i]).margin(1e-15));
    }
}

TEST_CASE("integrate_complex on constant, odd and Bessel integrands")
{
    QuadratureSpec spec;
    const cplx one = integrate_complex([](double) { return cplx(1.0, 0.0); }, 0.0, 2.0 * pi, spec);
    CHECK(std::abs(one - cplx(2.0 * pi, 0.0)) < 1e-12);

    const cplx c = integrate_complex([](double x) { return cplx(std::cos(x), 0.0); }, 0.0, 2.0 * pi, spec);
    CHECK(std::abs(c) < 1e-12);

    const cplx j = integrate_complex([](double x) { return std::polar(1.0, -pi * std::cos(x)); }, 0.0, 2.0 * pi, spec);
    const double expect = 2.0 * pi * oracle::bessel_j0_series(pi);
    CHECK(std::abs(j - cplx(expect, 0.0)) < 1e-10);
    CHECK(j.real() == Approx(-1.91161).margin(1e-5));
}

TEST_CASE("integrate_complex matches 2 pi J0(c) across the M = 100 oscillation range")
{
    const double c_max = 2.0 * pi * 99.0 * 0.5;
    const auto spec = QuadratureSpec::for_oscillation(0.0, 2.0 * pi, c_max);
    for (double c = 0.0; c <= c_max + 1e-9; c += 0.5)
    {
        const cplx v = integrate_complex([c](double x) { return std::polar(1.0, -c * std::cos(x)); }, 0.0, 2.0 * pi, spec);
        INFO("c = " << c);
        CHECK(std::abs(v - cplx(2.0 * pi * oracle::bessel_j0(c), 0.0)) <= spec.abs_tol);
    }
}

TEST_CASE("node doubling changes the result by less than the tolerance")
{
    auto f = [](double x) { return std::polar(1.0, -40.0 * std::cos(x)) * (1.0 + 0.3 * std::sin(x)); };
    QuadratureSpec a = QuadratureSpec::for_oscillation(0.0, 2.0 * pi, 40.0);
    QuadratureSpec b = a;
    b.nodes *= 2;
    CHECK(std::abs(integrate_complex(f, 0.0, 2.0 * pi, a) - integrate_complex(f, 0.0, 2.0 * pi, b)) < a.abs_tol);
}

TEST_CASE("oscillation-scaled node count")
{
    CHECK(QuadratureSpec::for_oscillation(0.0, 1.0, 0.1).nodes == 64);
    const auto s = QuadratureSpec::for_oscillation(0.0, 2.0 * pi, 2.0 * pi * 99.0 * 0.5);
    CHECK(s.nodes == static_cast<std::size_t>(std::ceil(8.0 * 2.0 * pi * (pi * 99.0) / pi)));
}

TEST_CASE("quadrature input validation")
{
    QuadratureSpec spec;
    CHECK_THROWS_AS(integrate_complex([](double) { return cplx(1.0); }, 1.0, 1.0, spec), std::invalid_argument);
    CHECK_THROWS_AS(integrate_complex([](double) { return cplx(1.0); }, 0.0, 1.0, QuadratureSpec{QuadratureRule::gauss_legendre, 1, 1e-10}),
                    std::invalid_argument);
    CHECK_THROWS_AS(integrate_complex([](double) { return cplx(1.0); }, 0.0, 1.0, QuadratureSpec{QuadratureRule::gauss_legendre, 64, 0.0}),
                    std::invalid_argument);
    try
    {
        integrate_complex([](double x) { return x > 0.5 ? cplx(std::numeric_limits<double>::quiet_NaN()) : cplx(1.0); },
                          0.0, 1.0, spec);
        FAIL("non-finite integrand accepted");
    }
    catch (const EvaluationError &e)
    {
        CHECK(std::string(e.what()).find("x =") != std::string::npos);
    }
}

TEST_CASE("integrate_complex_vector agrees with scalar integration")
{
    QuadratureSpec spec;
    const auto v = integrate_complex_vector(
        [](double x, std::span<cplx> out)
        {
            for (std::size_t s = 0; s < out.size(); ++s)
                out[s] = std::polar(1.0, -pi * static_cast<double>(s) * std::cos(x));
        },
        5, 0.0, 2.0 * pi, spec);
    for (std::size_t s = 0; s < 5; ++s)
        CHECK(std::abs(v[s] - cplx(2.0 * pi * oracle::bessel_j0_series(pi * s), 0.0)) < 1e-10);
}

TEST_CASE("hermitian_solve closed forms")
{
    std::mt19937_64 gen(3);
    const ComplexMatrix b = oracle::random_matrix(3, gen);
    CHECK(frobenius_relative_error(hermitian_solve(ComplexMatrix::Identity(3, 3), b), b) < 1e-15);

    const ComplexMatrix x2 = hermitian_solve(2.0 * ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(2, 2));
    CHECK(frobenius_relative_error(x2, 0.5 * ComplexMatrix::Identity(2, 2)) < 1e-15);

    ComplexMatrix a(2, 2);
    a << 2.0, cplx(0, 1), cplx(0, -1), 2.0;
    ComplexMatrix inv(2, 2); // adj / det, det = 4 - 1
    inv << 2.0, cplx(0, -1), cplx(0, 1), 2.0;
    inv /= 3.0;
    CHECK(frobenius_relative_error(hermitian_solve(a, ComplexMatrix::Identity(2, 2)), inv) < 1e-14);
}

TEST_CASE("hermitian_solve on random PD systems")
{
    std::mt19937_64 gen(11);
    for (std::size_t m : {1, 4, 17, 60})
    {
        const ComplexMatrix a = oracle::random_psd(m, gen) + 0.1 * ComplexMatrix::Identity(m, m);
        const ComplexMatrix ha = hermitian_part(a);
        CHECK(frobenius_relative_error(hermitian_solve(ha, ha), ComplexMatrix::Identity(m, m)) < 1e-10);
        const ComplexMatrix b = oracle::random_matrix(m, gen);
        const ComplexMatrix x = hermitian_solve(ha, b);
        CHECK((ha * x - b).norm() / b.norm() < tol::solve_residual);
    }
}

TEST_CASE("hermitian_solve rejects non-PD and malformed input")
{
    ComplexMatrix a = ComplexMatrix::Identity(3, 3);
    a(2, 2) = -1.0;
    try
    {
        hermitian_solve(a, ComplexMatrix::Identity(3, 3));
        FAIL("indefinite matrix accepted");
    }
    catch (const SingularityError &e)
    {
        CHECK(e.pivot_index == 2);
        CHECK(e.pivot_value == Approx(-1.0));
    }
    ComplexMatrix z = ComplexMatrix::Zero(2, 2);
    CHECK_THROWS_AS(hermitian_solve(z, ComplexMatrix::Identity(2, 2)), SingularityError);

    ComplexMatrix nh = ComplexMatrix::Identity(2, 2);
    nh(0, 1) = 0.5;
    CHECK_THROWS_AS(hermitian_solve(nh, ComplexMatrix::Identity(2, 2)), std::invalid_argument);
    CHECK_THROWS_AS(hermitian_solve(ComplexMatrix::Identity(2, 3), ComplexMatrix::Identity(2, 2)), std::invalid_argument);
    CHECK_THROWS_AS(hermitian_solve(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(3, 3)), std::invalid_argument);
}

TEST_CASE("hermitian helpers")
{
    std::mt19937_64 gen(5);
    const ComplexMatrix g = oracle::random_matrix(6, gen);
    const ComplexMatrix h = hermitian_part(g);
    CHECK(is_hermitian(h));
    CHECK(hermitian_deviation(h) == 0.0);
    CHECK_FALSE(is_hermitian(g));
    CHECK(min_eigenvalue_hermitian(ComplexMatrix::Identity(4, 4) * 3.0) == Approx(3.0));
}

TEST_CASE("Kahan summation keeps small terms")
{
    KahanSum<double> k;
    double naive = 0.0;
    k.add(1.0);
    naive += 1.0;
    for (int i = 0; i < 1000000; ++i)
    {
        k.add(1e-16);
        naive += 1e-16;
    }
    CHECK(naive == 1.0);
    CHECK(k.value() == Approx(1.0 + 1e-10).epsilon(1e-14));
}
