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

#include "mimo_as/analytic_rate.hpp"
#include "mimo_as/errors.hpp"
#include "oracles.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <random>

using namespace mimo_as;

TEST_CASE("rate from powers")
{
    CHECK(rate_from_powers(3.0, 1.0, 1.0, 1.0) == Catch::Approx(1.0).epsilon(1e-15));
    CHECK(rate_from_powers(0.0, 1.0, 1.0, 1.0) == 0.0);
    CHECK(rate_from_powers(7.0, 0.0, 0.0, 1.0) == Catch::Approx(3.0).epsilon(1e-15));
    PowerBreakdown p;
    p.signal = 15.0;
    p.noise = 1.0;
    CHECK(p.recomputed_rate() == Catch::Approx(4.0).epsilon(1e-15));
}

TEST_CASE("shift lookup and fourth moments")
{
    const std::vector<cplx> e{1.0, cplx(0.3, -0.4), cplx(-0.1, 0.2)};
    CHECK(shift_lookup(e, 1) == e[1]);
    CHECK(shift_lookup(e, -2) == std::conj(e[2]));
    CHECK_THROWS_AS(shift_lookup(e, 3), std::out_of_range);
    CHECK_THROWS_AS(shift_lookup(e, -3), std::out_of_range);

    // All indices equal: E|h_m|^4 = 2 beta^2 for any N_P.
    for (std::size_t np : {1u, 5u, 100u})
        CHECK(std::abs(e_phi(1, 1, 1, 1, 2.0, np, e) - cplx(8.0, 0.0)) < 1e-14);

    // Single path: the moment of a plane wave with a Rayleigh amplitude, 2 beta^2 E(n-m+n'-m').
    CHECK(std::abs(e_phi(0, 1, 0, 1, 1.0, 1, e) - 2.0 * e[2]) < 1e-15);
    // (m, n, m', n') = (0, 1, 1, 0) is E|h_0|^2 |h_1|^2; N_P = 3: (1/3)[2 E(0) + 2 (E(1) E(-1) + E(0) E(0))].
    const cplx want = (2.0 + 2.0 * (std::norm(e[1]) + 1.0)) / 3.0;
    CHECK(std::abs(e_phi(0, 1, 1, 0, 1.0, 3, e) - want) < 1e-15);
    CHECK_THROWS_AS(e_phi(0, 0, 0, 0, 1.0, 0, e), std::invalid_argument);
}

TEST_CASE("first moment and self-interference")
{
    ComplexMatrix r(2, 2);
    r << 2.0, cplx(0.5, 0.5), cplx(0.5, -0.5), 3.0;
    CHECK(first_moment(r) == 5.0);
    r(0, 0) = cplx(2.0, 1e-3);
    CHECK_THROWS_AS(first_moment(r), NumericalConsistencyError);

    CHECK(self_interference(10.0, 3.0) == 1.0);
    CHECK(self_interference(9.0, 3.0) == 0.0);
    CHECK(self_interference(9.0 - 1e-12, 3.0) == 0.0);
    CHECK_THROWS_AS(self_interference(8.0, 3.0), NumericalConsistencyError);
    CHECK_THROWS_AS(self_interference(-1.0, 0.0), std::invalid_argument);
}

TEST_CASE("fast second moment equals the literal quadruple sum")
{
    std::mt19937_64 gen(2024);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial)
    {
        const std::size_t m = 1 + trial % 12;
        const auto x = oracle::random_instance(m, gen);
        const double ref = second_moment_reference(x.inputs());
        const double fast = second_moment_fast(x.inputs());
        REQUIRE(ref > 0.0);
        worst = std::max(worst, std::abs(fast - ref) / ref);
    }
    CHECK(worst <= 1e-9);
}

TEST_CASE("scalar antenna closed form")
{
    // M = 1: h ~ CN(0, beta) for any N_P, E|h|^4 = 2 beta^2.
    oracle::MomentInstance x;
    x.filter = ComplexMatrix::Constant(1, 1, cplx(0.3, -0.2));
    x.beta = 1.7;
    x.r_link = ComplexMatrix::Constant(1, 1, x.beta);
    x.others = {ComplexMatrix::Constant(1, 1, 0.4), ComplexMatrix::Constant(1, 1, 2.5)};
    x.e_table = {1.0};
    x.n_paths = 9;
    x.sigma2 = 0.8;
    x.tau = 3;
    const double f2 = std::norm(x.filter(0, 0));
    const double want = 9.0 * f2 * (2.0 * x.beta * x.beta + x.beta * (0.4 + 2.5)) + 0.8 * 3.0 * f2 * x.beta;
    CHECK(second_moment_fast(x.inputs()) == Catch::Approx(want).epsilon(1e-13));
    CHECK(second_moment_reference(x.inputs()) == Catch::Approx(want).epsilon(1e-13));
}

TEST_CASE("second moment against direct simulation of the multipath model")
{
    // h_ji from the path model; the other channels Gaussian with their covariances; y = tau sum_k h_k + n
    // after pilot despreading, n ~ CN(0, tau sigma2 I).
    const std::size_t m = 4, n_paths = 8, tau = 2;
    const double mean = 0.9, delta = deg_to_rad(20.0), beta = 1.3, sigma2 = 0.7;
    std::mt19937_64 gen(99);
    oracle::MomentInstance x;
    x.e_table = shift_correlations(mean, AngularSpread(delta), 0.5, 2 * m - 1);
    x.r_link = beta * toeplitz_hermitian(x.e_table, m);
    x.beta = beta;
    x.n_paths = n_paths;
    x.sigma2 = sigma2;
    x.tau = tau;
    x.filter = oracle::random_matrix(m, gen);
    x.others = {oracle::random_psd(m, gen, 0.8), oracle::random_psd(m, gen, 0.2)};
    const double analytic = second_moment_fast(x.inputs());

    std::vector<ComplexMatrix> chol;
    for (const auto &o : x.others)
        chol.push_back(Eigen::LLT<ComplexMatrix>(o).matrixL());
    std::normal_distribution<double> nd(0.0, std::sqrt(0.5));
    std::uniform_real_distribution<double> ua(mean - delta, mean + delta);
    auto cn = [&](double var) { return std::sqrt(var) * cplx(nd(gen), nd(gen)); };

    const int trials = 400000;
    double s1 = 0.0, s2 = 0.0;
    ComplexVector h(m), z(m), g(m);
    for (int t = 0; t < trials; ++t)
    {
        h.setZero();
        for (std::size_t p = 0; p < n_paths; ++p)
        {
            const cplx a = cn(beta);
            const double phi = ua(gen);
            for (std::size_t k = 0; k < m; ++k)
                h(k) += a * std::polar(1.0, -pi * k * std::cos(phi));
        }
        h /= std::sqrt(static_cast<double>(n_paths));
        ComplexVector y = static_cast<double>(tau) * h;
        for (const auto &l : chol)
        {
            for (std::size_t k = 0; k < m; ++k)
                z(k) = cn(1.0);
            y += static_cast<double>(tau) * (l * z);
        }
        for (std::size_t k = 0; k < m; ++k)
            y(k) += cn(tau * sigma2);
        const double v = std::norm(h.dot(x.filter * y));
        s1 += v;
        s2 += v * v;
    }
    const double mc = s1 / trials;
    const double se = std::sqrt((s2 / trials - mc * mc) / trials);
    INFO("analytic " << analytic << " mc " << mc << " se " << se);
    CHECK(std::abs(mc - analytic) < 4.0 * se);
}

TEST_CASE("ergodic rate point structure")
{
    const auto one = build_layout({CellSpec(0, 0)}, 40, 50, 3, 64000);
    const auto sc1 = build_covariances(one, AngularSpread::from_degrees(30), ArraySpec(6), 1.0, 1);
    const auto p1 = ergodic_rate_point(sc1, 20);
    CHECK(p1.intercell == 0.0);
    CHECK(p1.noise == 1.0);
    CHECK(p1.signal == Catch::Approx(first_moment(sc1.link(0, 0).r_hat)).epsilon(1e-14));
    CHECK(p1.source == Source::analytic);

    const auto two = build_layout({CellSpec(0, 0), CellSpec(1, 200)}, 40, 50, 3, 64000);
    const auto sc = build_covariances(two, AngularSpread::from_degrees(30), ArraySpec(6), 1.0, 1);
    const auto fast = ergodic_rate_point(sc, 20, 0, SecondMomentPath::fast);
    const auto ref = ergodic_rate_point(sc, 20, 0, SecondMomentPath::reference);
    CHECK(fast.rate_bps_hz == Catch::Approx(ref.rate_bps_hz).epsilon(1e-10));
    CHECK(fast.intercell == Catch::Approx(ref.intercell).epsilon(1e-9));
    CHECK(std::abs(fast.rate_bps_hz - fast.recomputed_rate()) <= 1e-12);
    CHECK(fast.intercell > 0.0);
    CHECK(fast.self_interference > 0.0);

    // Intercell term written out: eta_1 E|h_01^H w_1|^2 with eta_1 = 1 / tr R_hat_11.
    const double want = second_moment_fast(second_moment_inputs(sc, 0, 1, 20)) / first_moment(sc.link(1, 1).r_hat);
    CHECK(fast.intercell == Catch::Approx(want).epsilon(1e-14));
    CHECK_THROWS_AS(ergodic_rate_point(sc, 20, 2), std::out_of_range);
}
