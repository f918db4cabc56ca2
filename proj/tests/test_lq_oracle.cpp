// Copyright 2025 The adp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "adp/dynamics.hpp"
#include "adp/linalg.hpp"
#include "adp/lq_oracle.hpp"
#include "adp/rng.hpp"
#include "doctest.h"

using Eigen::MatrixXd;
using Eigen::VectorXd;
using namespace adp;

namespace {

struct LqCase {
    MatrixXd A, B, Sigma;
    StageCost L;
    double gamma;
};

// A = [[1, 0.1], [0.5, -0.5]], B = [1, 0.5]; the 2-state benchmark plant.
LqCase benchmark_case() {
    MatrixXd a(2, 2), b(2, 1);
    a << 1.0, 0.1, 0.5, -0.5;
    b << 1.0, 0.5;
    MatrixXd l = MatrixXd::Identity(3, 3);
    l(2, 2) = 1e-2;
    return {a, b, 1e-6 * MatrixXd::Identity(2, 2), StageCost(l, 2, 1), 0.95};
}

RiccatiSolution solve_case(const LqCase& c) {
    MatrixXd p = solve_dare(c.A, c.B, c.L, c.gamma);
    return build_qstar(c.A, c.B, c.L, c.gamma, p, c.Sigma);
}

}  // namespace

TEST_SUITE("lq_oracle") {

TEST_CASE("scalar Riccati solution matches the closed form") {
    // A = B = L_xx = L_uu = 1, gamma = 0.95. The fixed point solves
    // 0.95 P^2 - 0.9 P - 1 = 0, so P = (0.9 + sqrt(4.61)) / 1.9.
    MatrixXd one = MatrixXd::Identity(1, 1);
    StageCost l(MatrixXd::Identity(2, 2), 1, 1);
    const double p_exact = (0.9 + std::sqrt(4.61)) / 1.9;

    MatrixXd p = solve_dare(one, one, l, 0.95);
    CHECK(p(0, 0) == doctest::Approx(p_exact).epsilon(1e-12));

    RiccatiSolution sol = build_qstar(one, one, l, 0.95, p, one);
    const double k_exact = -0.95 * p_exact / (1 + 0.95 * p_exact);
    CHECK(sol.K(0, 0) == doctest::Approx(k_exact).epsilon(1e-12));
    // e* = g P / (1-g); delta_e = g (g P)^2 / ((1 + g P)(1-g)).
    CHECK(sol.e_star == doctest::Approx(0.95 * p_exact / 0.05).epsilon(1e-12));
    const double de_exact =
        0.95 * std::pow(0.95 * p_exact, 2) / (1 + 0.95 * p_exact) / 0.05;
    CHECK(sol.delta_e == doctest::Approx(de_exact).epsilon(1e-12));
    CHECK(sol.delta_e == doctest::Approx(17.476454472320803).epsilon(1e-12));
}

TEST_CASE("benchmark plant reproduces the reference solution") {
    // Reference values from an independent Riccati solver.
    LqCase c = benchmark_case();
    RiccatiSolution sol = solve_case(c);

    MatrixXd p_ref(2, 2);
    p_ref << 1.0099213749986535, -0.00163024253024488,
        -0.00163024253024488, 1.2799305168725947;
    CHECK((sol.P - p_ref).cwiseAbs().maxCoeff() < 1e-9);

    CHECK(sol.K(0, 0) == doctest::Approx(-0.9921374998653135).epsilon(1e-9));
    CHECK(sol.K(0, 1) == doctest::Approx(0.16302425302450035).epsilon(1e-8));
    CHECK(sol.q_uu()(0, 0) == doctest::Approx(1.2718600736022294).epsilon(1e-10));
    CHECK(sol.e_star == doctest::Approx(4.3507185945553668e-05).epsilon(1e-8));
    CHECK(sol.delta_e == doctest::Approx(2.4429075306230557e-05).epsilon(1e-8));
}

TEST_CASE("solve_dare satisfies the Riccati equation residual") {
    Rng rng(21);
    for (int trial = 0; trial < 8; ++trial) {
        const int n_x = 2 + trial % 5;
        LtiSystem sys = random_lti(n_x, rng);
        MatrixXd l = MatrixXd::Identity(n_x + 2, n_x + 2);
        StageCost cost(l, n_x, 2);
        const double g = 0.95;
        MatrixXd p = solve_dare(sys.A, sys.B, cost, g);

        MatrixXd luu = cost.L_uu() + g * sys.B.transpose() * p * sys.B;
        MatrixXd lxu = g * sys.A.transpose() * p * sys.B;
        MatrixXd rhs = cost.L_xx() + g * sys.A.transpose() * p * sys.A -
                       lxu * luu.inverse() * lxu.transpose();
        CHECK((p - rhs).cwiseAbs().maxCoeff() < 1e-8);
        CHECK(linalg::is_pd(p));
    }
}

TEST_CASE("build_qstar invariants") {
    Rng rng(22);
    for (int trial = 0; trial < 6; ++trial) {
        const int n_x = 2 + trial;
        LtiSystem sys = random_lti(n_x, rng);
        MatrixXd sigma_b(n_x, n_x);
        for (int i = 0; i < n_x; ++i)
            for (int j = 0; j < n_x; ++j) sigma_b(i, j) = rng.uniform(-1.0, 1.0);
        MatrixXd sigma = 0.01 * sigma_b * sigma_b.transpose();
        MatrixXd l = MatrixXd::Identity(n_x + 2, n_x + 2);
        StageCost cost(l, n_x, 2);
        const double g = 0.95;
        MatrixXd p = solve_dare(sys.A, sys.B, cost, g);
        RiccatiSolution sol = build_qstar(sys.A, sys.B, cost, g, p, sigma);

        // P is the Schur complement of q_uu in Qstar.
        MatrixXd schur =
            sol.q_xx() -
            sol.q_xu() * sol.q_uu().inverse() * sol.q_xu().transpose();
        CHECK((schur - sol.P).cwiseAbs().maxCoeff() < 1e-9);

        // Qstar symmetric, q_uu PD, gain closes the loop inside the disc.
        CHECK((sol.Qstar - sol.Qstar.transpose()).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(linalg::is_pd(sol.q_uu()));
        CHECK((sol.K + sol.q_uu().inverse() * sol.q_xu().transpose())
                  .cwiseAbs()
                  .maxCoeff() < 1e-10);
        CHECK(linalg::spectral_radius(std::sqrt(g) * (sys.A + sys.B * sol.K)) <
              1.0);

        // Offsets: e* matches its trace formula; delta_e >= 0, zero iff
        // Sigma = 0 here.
        CHECK(sol.e_star ==
              doctest::Approx(g * (sol.P * sigma).trace() / (1 - g)).epsilon(1e-12));
        CHECK(sol.delta_e >= 0.0);
        RiccatiSolution dry = build_qstar(sys.A, sys.B, cost, g, p,
                                          MatrixXd::Zero(n_x, n_x));
        CHECK(dry.e_star == 0.0);
        CHECK(dry.delta_e == 0.0);
    }
}

TEST_CASE("linearized cartpole gain and curvature") {
    // Reference values from an independent Riccati solver on the
    // Euler-linearized plant (M=4, m=2, l=1, g=9.8, dt=1e-3).
    CartPole cp(4.0, 2.0, 1.0, 9.8, 1e-3, 1e-6 * MatrixXd::Identity(4, 4));
    LtiSystem lin = linearize_cartpole(cp);
    CHECK(lin.A(0, 1) == doctest::Approx(1e-3).epsilon(1e-14));
    CHECK(lin.A(1, 2) == doctest::Approx(1e-3 * 4.9).epsilon(1e-12));
    CHECK(lin.A(3, 2) == doctest::Approx(1e-3 * 14.7).epsilon(1e-12));
    CHECK(lin.B(1, 0) == doctest::Approx(2.5e-4).epsilon(1e-12));
    CHECK(lin.B(3, 0) == doctest::Approx(2.5e-4).epsilon(1e-12));
    CHECK((lin.noise_cov - cp.noise_cov).cwiseAbs().maxCoeff() == 0.0);

    Eigen::VectorXd ldiag(5);
    ldiag << 1.0, 1.0, 1e2, 10.0, 1e-3;
    StageCost cost(MatrixXd(ldiag.asDiagonal()), 4, 1);
    MatrixXd p = solve_dare(lin.A, lin.B, cost, 0.99);
    RiccatiSolution sol = build_qstar(lin.A, lin.B, cost, 0.99, p, lin.noise_cov);

    CHECK(sol.q_uu()(0, 0) ==
          doctest::Approx(0.0010229275813314746).epsilon(1e-7));
    Eigen::RowVectorXd k_ref(4);
    k_ref << -0.6471288666360685, -6.604864889319856, -115.29325862334956,
        -83.16458085187527;
    CHECK((sol.K.row(0) - k_ref).cwiseAbs().maxCoeff() < 1e-4);
    CHECK(sol.e_star == doctest::Approx(1.078201061365438).epsilon(1e-6));
}

TEST_CASE("relaxed fixed point balances exactly at qhat") {
    // On the scalar plant with Sigma = 0.3:
    //   Fhat qhat - qhat = 0, and Fhat q* - q* = (1-g) delta_e.
    MatrixXd one = MatrixXd::Identity(1, 1);
    LtiSystem sys(one, one, 0.3 * one);
    StageCost l(MatrixXd::Identity(2, 2), 1, 1);
    const double g = 0.95;
    MatrixXd p = solve_dare(one, one, l, g);
    RiccatiSolution sol = build_qstar(one, one, l, g, p, sys.noise_cov);

    Rng rng(23);
    VectorXd x(1), u(1);
    x << 1.3;
    u << -0.4;
    auto [res_hat, se_hat] = relaxed_fp_residual(
        sys, l, g, sol.Qstar, sol.e_star + sol.delta_e, x, u, 200000, rng);
    CHECK(std::abs(res_hat) < 3.5 * se_hat);

    auto [res_star, se_star] = relaxed_fp_residual(sys, l, g, sol.Qstar,
                                                   sol.e_star, x, u, 200000, rng);
    CHECK(std::abs(res_star - (1 - g) * sol.delta_e) < 3.5 * se_star);

    // A visibly wrong q is rejected by the same probe.
    auto [res_off, se_off] = relaxed_fp_residual(
        sys, l, g, 1.2 * sol.Qstar, sol.e_star + sol.delta_e, x, u, 50000, rng);
    CHECK(std::abs(res_off) > 5 * se_off);
}

TEST_CASE("degenerate problems are rejected") {
    StageCost l(MatrixXd::Identity(2, 2), 1, 1);
    MatrixXd one = MatrixXd::Identity(1, 1);
    CHECK_THROWS_AS(solve_dare(one, one, l, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(solve_dare(one, one, l, 0.0), std::invalid_argument);

    // Unstabilizable growth: A = 2, B = 0, gamma 0.95 diverges.
    CHECK_THROWS_AS(solve_dare(2.0 * one, 0.0 * one, l, 0.95),
                    std::runtime_error);
}

}  // TEST_SUITE
