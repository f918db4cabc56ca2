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
#include "adp/dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include "adp/linalg.hpp"

namespace adp {

namespace {

Eigen::VectorXd noise_draw(const Eigen::MatrixXd& factor, Rng& rng) {
    const int n = static_cast<int>(factor.rows());
    Eigen::VectorXd z(n);
    for (int i = 0; i < n; ++i) z(i) = rng.normal();
    return factor * z;
}

void check_cov(const Eigen::MatrixXd& cov, int n, const char* what) {
    if (cov.rows() != n || cov.cols() != n)
        throw std::invalid_argument(std::string(what) + ": covariance shape mismatch");
    if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument(std::string(what) + ": covariance not symmetric");
    if (!linalg::is_psd(cov))
        throw std::invalid_argument(std::string(what) + ": covariance not PSD");
}

}  // namespace

LtiSystem::LtiSystem(Eigen::MatrixXd A_in, Eigen::MatrixXd B_in,
                     Eigen::MatrixXd noise_cov_in)
    : A(std::move(A_in)), B(std::move(B_in)), noise_cov(std::move(noise_cov_in)) {
    if (A.rows() != A.cols()) throw std::invalid_argument("LtiSystem: A not square");
    if (B.rows() != A.rows()) throw std::invalid_argument("LtiSystem: B row mismatch");
    check_cov(noise_cov, state_dim(), "LtiSystem");
    noise_factor = linalg::psd_factor(noise_cov);
}

CartPole::CartPole(double cart_mass_in, double pole_mass_in,
                   double pole_length_in, double gravity_in, double dt_in,
                   Eigen::MatrixXd noise_cov_in)
    : cart_mass(cart_mass_in),
      pole_mass(pole_mass_in),
      pole_length(pole_length_in),
      gravity(gravity_in),
      dt(dt_in),
      noise_cov(std::move(noise_cov_in)) {
    if (cart_mass <= 0 || pole_mass <= 0 || pole_length <= 0 || dt <= 0)
        throw std::invalid_argument("CartPole: nonpositive physical parameter");
    check_cov(noise_cov, 4, "CartPole");
    noise_factor = linalg::psd_factor(noise_cov);
}

StageCost::StageCost(Eigen::MatrixXd L_in, int n_x_in, int n_u_in)
    : L(std::move(L_in)), n_x(n_x_in), n_u(n_u_in) {
    const int d = n_x + n_u;
    if (L.rows() != d || L.cols() != d)
        throw std::invalid_argument("StageCost: L shape mismatch");
    if ((L - L.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("StageCost: L not symmetric");
    if (!linalg::is_psd(L))
        throw std::invalid_argument("StageCost: L not PSD");
    if (linalg::min_eigenvalue(L_uu()) <= 0)
        throw std::invalid_argument("StageCost: L_uu not positive definite");
}

double stage_cost(const StageCost& cost, const Eigen::VectorXd& x,
                  const Eigen::VectorXd& u) {
    if (x.size() != cost.n_x || u.size() != cost.n_u)
        throw std::invalid_argument("stage_cost: dimension mismatch");
    Eigen::VectorXd z(cost.n_x + cost.n_u);
    z << x, u;
    return z.dot(cost.L * z);
}

Eigen::VectorXd lti_step(const LtiSystem& sys, const Eigen::VectorXd& x,
                         const Eigen::VectorXd& u, Rng& rng) {
    if (x.size() != sys.state_dim() || u.size() != sys.input_dim())
        throw std::invalid_argument("lti_step: dimension mismatch");
    return sys.A * x + sys.B * u + noise_draw(sys.noise_factor, rng);
}

Eigen::VectorXd cartpole_step(const CartPole& cp, const Eigen::VectorXd& state,
                              double u, Rng& rng) {
    if (state.size() != 4)
        throw std::invalid_argument("cartpole_step: state must be 4-dimensional");
    const double pd = state(1);
    const double th = state(2);
    const double thd = state(3);
    const double s = std::sin(th);
    const double c = std::cos(th);
    const double m = cp.pole_mass;
    const double l = cp.pole_length;
    const double pdd =
        (m * cp.gravity * s * c - m * l * thd * thd * s + u) /
        (cp.cart_mass + m * s * s);
    const double thdd = (cp.gravity * s + pdd * c) / l;
    Eigen::VectorXd next(4);
    next << state(0) + cp.dt * pd, pd + cp.dt * pdd, th + cp.dt * thd,
        thd + cp.dt * thdd;
    return next + noise_draw(cp.noise_factor, rng);
}

LtiSource::LtiSource(LtiSystem sys, StageCost cost)
    : sys_(std::move(sys)), cost_(std::move(cost)) {
    if (cost_.n_x != sys_.state_dim() || cost_.n_u != sys_.input_dim())
        throw std::invalid_argument("LtiSource: cost dimension mismatch");
}

std::pair<double, Eigen::VectorXd> LtiSource::query(const Eigen::VectorXd& x,
                                                    const Eigen::VectorXd& u,
                                                    Rng& rng) const {
    return {stage_cost(cost_, x, u), lti_step(sys_, x, u, rng)};
}

CartPoleSource::CartPoleSource(CartPole cp, StageCost cost)
    : cp_(std::move(cp)), cost_(std::move(cost)) {
    if (cost_.n_x != 4 || cost_.n_u != 1)
        throw std::invalid_argument("CartPoleSource: cost dimension mismatch");
}

std::pair<double, Eigen::VectorXd> CartPoleSource::query(
    const Eigen::VectorXd& x, const Eigen::VectorXd& u, Rng& rng) const {
    return {stage_cost(cost_, x, u), cartpole_step(cp_, x, u(0), rng)};
}

LtiSystem random_lti(int n_x, Rng& rng) {
    if (n_x < 2) throw std::invalid_argument("random_lti: n_x must be >= 2");
    const int n_u = 2;
    const Eigen::MatrixXd zero_cov = Eigen::MatrixXd::Zero(n_x, n_x);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        Eigen::MatrixXd A(n_x, n_x);
        Eigen::MatrixXd B(n_x, n_u);
        for (int i = 0; i < n_x; ++i)
            for (int j = 0; j < n_x; ++j) {
                if (i == j) {
                    A(i, j) = 0.5;
                } else {
                    const bool drop = rng.uniform() < 0.1;
                    const double v = rng.uniform(-0.1, 0.1);
                    A(i, j) = drop ? 0.0 : v;
                }
            }
        for (int i = 0; i < n_x; ++i)
            for (int j = 0; j < n_u; ++j) {
                const bool drop = rng.uniform() < 0.1;
                const double v = rng.uniform(-0.1, 0.1);
                B(i, j) = drop ? 0.0 : v;
            }
        if (is_stabilizable(A, B, 0.95)) return {A, B, zero_cov};
    }
    throw std::runtime_error("random_lti: no stabilizable system in 1000 attempts");
}

bool is_stabilizable(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                     double gamma) {
    if (A.rows() != A.cols() || B.rows() != A.rows())
        throw std::invalid_argument("is_stabilizable: dimension mismatch");
    if (gamma <= 0.0 || gamma >= 1.0)
        throw std::invalid_argument("is_stabilizable: gamma outside (0,1)");
    const int n = static_cast<int>(A.rows());
    const int m = static_cast<int>(B.cols());
    const double sg = std::sqrt(gamma);
    const Eigen::MatrixXd Ag = sg * A;
    const Eigen::MatrixXd Bg = sg * B;
    Eigen::EigenSolver<Eigen::MatrixXd> es(Ag, /*computeEigenvectors=*/false);
    for (int k = 0; k < n; ++k) {
        const std::complex<double> lam = es.eigenvalues()(k);
        if (std::abs(lam) < 1.0) continue;
        // PBH matrix [lam I - Ag | Bg]; real embedding doubles both ranks.
        Eigen::MatrixXd Re(n, n + m);
        Re << lam.real() * Eigen::MatrixXd::Identity(n, n) - Ag, Bg;
        Eigen::MatrixXd Im = Eigen::MatrixXd::Zero(n, n + m);
        Im.topLeftCorner(n, n) = lam.imag() * Eigen::MatrixXd::Identity(n, n);
        Eigen::MatrixXd P(2 * n, 2 * (n + m));
        P << Re, -Im, Im, Re;
        if (linalg::rank_svd(P) < 2 * n) return false;
    }
    return true;
}

}  // namespace adp
