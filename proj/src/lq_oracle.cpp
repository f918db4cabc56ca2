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
#include "adp/lq_oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "adp/linalg.hpp"

namespace adp {

namespace {
constexpr double kPdTol = 1e-10;
}

Eigen::MatrixXd solve_dare(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                           const StageCost& L, double gamma, double tol,
                           int max_iter) {
    if (gamma <= 0.0 || gamma >= 1.0)
        throw std::invalid_argument("solve_dare: gamma outside (0,1)");
    if (A.rows() != L.n_x || B.cols() != L.n_u)
        throw std::invalid_argument("solve_dare: dimension mismatch");
    const Eigen::MatrixXd Lxx = L.L_xx();
    const Eigen::MatrixXd Lxu = L.L_xu();
    const Eigen::MatrixXd Luu = L.L_uu();
    Eigen::MatrixXd P = Lxx;
    for (int it = 0; it < max_iter; ++it) {
        const Eigen::MatrixXd G = Luu + gamma * B.transpose() * P * B;
        if (linalg::min_eigenvalue(G) <= kPdTol)
            throw std::runtime_error("solve_dare: input block lost positive definiteness");
        const Eigen::MatrixXd W = Lxu + gamma * A.transpose() * P * B;
        Eigen::MatrixXd Pn = Lxx + gamma * A.transpose() * P * A -
                             W * G.llt().solve(W.transpose());
        Pn = linalg::symmetrize(Pn);
        if (!Pn.allFinite() || Pn.cwiseAbs().maxCoeff() > 1e100)
            throw std::runtime_error("solve_dare: iteration diverged");
        if ((Pn - P).cwiseAbs().maxCoeff() <= tol) return Pn;
        P = Pn;
    }
    throw std::runtime_error("solve_dare: no convergence within max_iter");
}

RiccatiSolution build_qstar(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                            const StageCost& L, double gamma,
                            const Eigen::MatrixXd& P,
                            const Eigen::MatrixXd& Sigma) {
    const int n_x = L.n_x;
    const int n_u = L.n_u;
    if (Sigma.rows() != n_x || Sigma.cols() != n_x)
        throw std::invalid_argument("build_qstar: Sigma shape mismatch");
    RiccatiSolution out;
    out.n_x = n_x;
    out.n_u = n_u;
    out.P = linalg::symmetrize(P);
    const Eigen::MatrixXd q_xx = L.L_xx() + gamma * A.transpose() * P * A;
    const Eigen::MatrixXd q_xu = L.L_xu() + gamma * A.transpose() * P * B;
    const Eigen::MatrixXd q_uu = L.L_uu() + gamma * B.transpose() * P * B;
    if (linalg::min_eigenvalue(q_uu) <= kPdTol)
        throw std::runtime_error("build_qstar: q_uu not positive definite");
    out.Qstar.resize(n_x + n_u, n_x + n_u);
    out.Qstar << q_xx, q_xu, q_xu.transpose(), q_uu;
    out.Qstar = linalg::symmetrize(out.Qstar);
    const auto llt = q_uu.llt();
    out.K = -llt.solve(q_xu.transpose());
    out.e_star = gamma * (P * Sigma).trace() / (1.0 - gamma);
    out.delta_e =
        gamma * (q_xu * llt.solve(q_xu.transpose()) * Sigma).trace() /
        (1.0 - gamma);
    return out;
}

LtiSystem linearize_cartpole(const CartPole& cp) {
    const double M = cp.cart_mass;
    const double m = cp.pole_mass;
    const double l = cp.pole_length;
    const double g = cp.gravity;
    Eigen::MatrixXd Ac = Eigen::MatrixXd::Zero(4, 4);
    Ac(0, 1) = 1.0;
    Ac(1, 2) = m * g / M;
    Ac(2, 3) = 1.0;
    Ac(3, 2) = (M + m) * g / (M * l);
    Eigen::VectorXd Bc(4);
    Bc << 0.0, 1.0 / M, 0.0, 1.0 / (M * l);
    const Eigen::MatrixXd A = Eigen::MatrixXd::Identity(4, 4) + cp.dt * Ac;
    const Eigen::MatrixXd B = cp.dt * Bc;
    return {A, B, cp.noise_cov};
}

std::pair<double, double> relaxed_fp_residual(
    const LtiSystem& sys, const StageCost& L, double gamma,
    const Eigen::MatrixXd& Qmat, double e, const Eigen::VectorXd& x,
    const Eigen::VectorXd& u, int n_draws, Rng& rng) {
    const int n_x = sys.state_dim();
    const int n_u = sys.input_dim();
    const Eigen::MatrixXd q_xx = Qmat.topLeftCorner(n_x, n_x);
    const Eigen::MatrixXd q_xu = Qmat.topRightCorner(n_x, n_u);
    const Eigen::MatrixXd q_uu = Qmat.bottomRightCorner(n_u, n_u);
    const Eigen::VectorXd base = sys.A * x + sys.B * u;

    Eigen::MatrixXd draws(n_draws, n_x);
    Eigen::VectorXd quad(n_draws);
    Eigen::VectorXd z(n_x);
    Eigen::VectorXd mean_xp = Eigen::VectorXd::Zero(n_x);
    for (int j = 0; j < n_draws; ++j) {
        for (int i = 0; i < n_x; ++i) z(i) = rng.normal();
        const Eigen::VectorXd xp = base + sys.noise_factor * z;
        draws.row(j) = xp.transpose();
        quad(j) = xp.dot(q_xx * xp);
        mean_xp += xp;
    }
    mean_xp /= n_draws;

    // The inner minimum over w of E[q(x+, w)] is attained at
    // w* = -q_uu^{-1} q_xu' E[x+]; evaluate each draw at that w*.
    const Eigen::VectorXd w_star = -q_uu.llt().solve(q_xu.transpose() * mean_xp);
    const Eigen::VectorXd vals =
        quad + 2.0 * (draws * (q_xu * w_star)) +
        Eigen::VectorXd::Constant(n_draws, w_star.dot(q_uu * w_star));
    const double mean_val = vals.mean();
    const double var =
        (vals.array() - mean_val).square().sum() / (n_draws - 1.0);
    const double se = gamma * std::sqrt(var / n_draws);

    const double fhat = stage_cost(L, x, u) + gamma * (mean_val + e);
    Eigen::VectorXd zxu(n_x + n_u);
    zxu << x, u;
    const double qval = zxu.dot(Qmat * zxu) + e;
    return {fhat - qval, se};
}

}  // namespace adp
