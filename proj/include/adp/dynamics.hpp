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
#ifndef ADP_DYNAMICS_HPP
#define ADP_DYNAMICS_HPP

#include <Eigen/Dense>
#include <utility>

#include "adp/rng.hpp"

namespace adp {

/**
 * @brief Discrete-time noisy linear system x+ = A x + B u + xi,
 *        xi ~ N(0, noise_cov).
 *
 * Immutable after construction; the Cholesky-type factor of the covariance
 * is cached so per-step sampling is a matrix-vector product. noise_cov may
 * be singular (including zero).
 */
struct LtiSystem {
    Eigen::MatrixXd A;
    Eigen::MatrixXd B;
    Eigen::MatrixXd noise_cov;
    Eigen::MatrixXd noise_factor;  // lower-triangular, factor * factor^T = noise_cov

    LtiSystem(Eigen::MatrixXd A_in, Eigen::MatrixXd B_in,
              Eigen::MatrixXd noise_cov_in);

    int state_dim() const { return static_cast<int>(A.rows()); }
    int input_dim() const { return static_cast<int>(B.cols()); }
};

/**
 * @brief Cart-pole (inverted pendulum on a cart), forward-Euler discretized.
 *
 * State layout (p, pdot, theta, thetadot); theta = 0 is upright. The input
 * is a horizontal force on the cart. Additive noise perturbs the discrete
 * update.
 */
struct CartPole {
    double cart_mass = 4.0;    // [kg]
    double pole_mass = 2.0;    // [kg]
    double pole_length = 1.0;  // [m]
    double gravity = 9.8;      // [m/s^2]
    double dt = 1e-3;          // [s]
    Eigen::MatrixXd noise_cov;
    Eigen::MatrixXd noise_factor;

    CartPole(double cart_mass_in, double pole_mass_in, double pole_length_in,
             double gravity_in, double dt_in, Eigen::MatrixXd noise_cov_in);
    CartPole() : CartPole(4.0, 2.0, 1.0, 9.8, 1e-3, Eigen::MatrixXd::Zero(4, 4)) {}
};

/**
 * @brief Quadratic stage cost l(x,u) = [x;u]^T L [x;u].
 *
 * L is symmetric PSD with a positive definite input block L_uu.
 */
struct StageCost {
    Eigen::MatrixXd L;
    int n_x;
    int n_u;

    StageCost(Eigen::MatrixXd L_in, int n_x_in, int n_u_in);

    Eigen::MatrixXd L_xx() const { return L.topLeftCorner(n_x, n_x); }
    Eigen::MatrixXd L_xu() const { return L.topRightCorner(n_x, n_u); }
    Eigen::MatrixXd L_uu() const { return L.bottomRightCorner(n_u, n_u); }
};

double stage_cost(const StageCost& cost, const Eigen::VectorXd& x,
                  const Eigen::VectorXd& u);

Eigen::VectorXd lti_step(const LtiSystem& sys, const Eigen::VectorXd& x,
                         const Eigen::VectorXd& u, Rng& rng);

/**
 * @brief One noisy Euler step of the cart-pole under force u.
 *
 * Accelerations come from the reduced form
 *   pddot = (m g sin(th) cos(th) - m l thdot^2 sin(th) + u) / (M + m sin^2(th)),
 *   thddot = (g sin(th) + pddot cos(th)) / l,
 * which is the exact solution of the coupled acceleration pair.
 */
Eigen::VectorXd cartpole_step(const CartPole& cp, const Eigen::VectorXd& state,
                              double u, Rng& rng);

/**
 * @brief Uniform interface to a simulator the learner may only sample.
 *
 * query returns the (deterministic) stage cost at (x,u) and one fresh draw
 * of the next state.
 */
class TransitionSource {
public:
    virtual ~TransitionSource() = default;
    virtual int state_dim() const = 0;
    virtual int input_dim() const = 0;
    virtual std::pair<double, Eigen::VectorXd> query(const Eigen::VectorXd& x,
                                                     const Eigen::VectorXd& u,
                                                     Rng& rng) const = 0;
};

class LtiSource : public TransitionSource {
public:
    LtiSource(LtiSystem sys, StageCost cost);
    int state_dim() const override { return sys_.state_dim(); }
    int input_dim() const override { return sys_.input_dim(); }
    std::pair<double, Eigen::VectorXd> query(const Eigen::VectorXd& x,
                                             const Eigen::VectorXd& u,
                                             Rng& rng) const override;
    const LtiSystem& system() const { return sys_; }
    const StageCost& cost() const { return cost_; }

private:
    LtiSystem sys_;
    StageCost cost_;
};

class CartPoleSource : public TransitionSource {
public:
    CartPoleSource(CartPole cp, StageCost cost);
    int state_dim() const override { return 4; }
    int input_dim() const override { return 1; }
    std::pair<double, Eigen::VectorXd> query(const Eigen::VectorXd& x,
                                             const Eigen::VectorXd& u,
                                             Rng& rng) const override;
    const CartPole& cartpole() const { return cp_; }
    const StageCost& cost() const { return cost_; }

private:
    CartPole cp_;
    StageCost cost_;
};

/**
 * @brief Random sparse LTI system: A_ii = 0.5, off-diagonal A and B entries
 *        zero with probability 0.1, otherwise uniform on [-0.1, 0.1].
 *
 * n_u is fixed at 2. Regenerates until is_stabilizable(A, B, 0.95) holds
 * (capped at 1000 attempts). The returned system carries zero noise; wrap
 * the (A, B) pair in a new LtiSystem to attach a covariance.
 */
LtiSystem random_lti(int n_x, Rng& rng);

/**
 * @brief PBH stabilizability test on (sqrt(gamma) A, sqrt(gamma) B).
 *
 * True iff rank [lambda I - sqrt(gamma) A | sqrt(gamma) B] = n_x for every
 * eigenvalue lambda with |lambda| >= 1. Complex eigenvalues are handled via
 * the real 2n embedding.
 */
bool is_stabilizable(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                     double gamma);

}  // namespace adp

#endif  // ADP_DYNAMICS_HPP
