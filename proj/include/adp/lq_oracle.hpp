/*
 Copyright 2025 The adp Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/
#ifndef ADP_LQ_ORACLE_HPP
#define ADP_LQ_ORACLE_HPP

#include <Eigen/Dense>
#include <utility>

#include "adp/dynamics.hpp"
#include "adp/rng.hpp"

namespace adp {

/**
 * @brief Ground-truth objects for the discounted LQ problem.
 *
 * P solves the discounted Riccati equation; Qstar is the optimal q-function
 * matrix over the joint (x,u) vector with constant offset e_star; K is the
 * optimal gain; delta_e is the constant up-shift carried by the fixed point
 * of the relaxed operator, so qhat = (Qstar, e_star + delta_e).
 */
struct RiccatiSolution {
    Eigen::MatrixXd P;      // n_x x n_x, symmetric PD
    Eigen::MatrixXd Qstar;  // (n_x+n_u) x (n_x+n_u), symmetric
    double e_star = 0.0;    // gamma Tr(P Sigma) / (1 - gamma)
    double delta_e = 0.0;   // >= 0
    Eigen::MatrixXd K;      // n_u x n_x
    int n_x = 0;
    int n_u = 0;

    Eigen::MatrixXd q_xx() const { return Qstar.topLeftCorner(n_x, n_x); }
    Eigen::MatrixXd q_xu() const { return Qstar.topRightCorner(n_x, n_u); }
    Eigen::MatrixXd q_uu() const { return Qstar.bottomRightCorner(n_u, n_u); }
};

/**
 * @brief Discounted DARE by fixed-point iteration from P0 = L_xx.
 *
 * Iterates P <- L_xx + g A'PA - (L_xu + g A'PB)(L_uu + g B'PB)^{-1}(...)'
 * with symmetrization each sweep, until the max-norm update is <= tol.
 *
 * @throws std::runtime_error on divergence / iteration exhaustion, or when
 *         the inner input block loses positive definiteness (ill-posed).
 */
Eigen::MatrixXd solve_dare(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                           const StageCost& L, double gamma,
                           double tol = 1e-10, int max_iter = 100000);

/**
 * @brief Assembles Qstar, K, e_star and delta_e from a Riccati solution.
 *
 *   q_xx = L_xx + g A'PA,  q_xu = L_xu + g A'PB,  q_uu = L_uu + g B'PB,
 *   K = -q_uu^{-1} q_xu',
 *   e_star  = g Tr(P Sigma) / (1-g),
 *   delta_e = g Tr(q_xu q_uu^{-1} q_xu' Sigma) / (1-g).
 */
RiccatiSolution build_qstar(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                            const StageCost& L, double gamma,
                            const Eigen::MatrixXd& P,
                            const Eigen::MatrixXd& Sigma);

/**
 * @brief Euler-discretized linearization of the cart-pole about the upright
 *        equilibrium; noise covariance copied from the plant.
 */
LtiSystem linearize_cartpole(const CartPole& cp);

/**
 * @brief Monte Carlo residual of the relaxed fixed-point identity at (x,u).
 *
 * Estimates Fhat q(x,u) = l(x,u) + g min_w E[q(x+, w)] with n_draws noise
 * samples (the minimum over w is closed-form for a quadratic q) and returns
 * (Fhat q(x,u) - q(x,u), standard error of the estimate). q is given by its
 * joint matrix and offset.
 */
std::pair<double, double> relaxed_fp_residual(
    const LtiSystem& sys, const StageCost& L, double gamma,
    const Eigen::MatrixXd& Qmat, double e, const Eigen::VectorXd& x,
    const Eigen::VectorXd& u, int n_draws, Rng& rng);

}  // namespace adp

#endif  // ADP_LQ_ORACLE_HPP
