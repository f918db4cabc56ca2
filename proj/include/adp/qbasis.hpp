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
#ifndef ADP_QBASIS_HPP
#define ADP_QBASIS_HPP

#include <Eigen/Dense>
#include <stdexcept>
#include <utility>

namespace adp {

/**
 * @brief Slot order for flattening a symmetric matrix plus offset into one
 *        coefficient vector: diagonal entries first, then the upper-triangle
 *        off-diagonals row-major, then the scalar offset.
 *
 * Off-diagonal feature entries carry a factor 2 so the coefficient vector
 * stores each Q_ij once; objective coefficients mirror the same convention.
 */
struct ThetaLayout {
    int dim;  // side length of the symmetric matrix

    explicit ThetaLayout(int d) : dim(d) {}

    int n_matrix_slots() const { return dim * (dim + 1) / 2; }
    int n_coeffs() const { return n_matrix_slots() + 1; }

    int diag_slot(int i) const { return i; }

    /// Slot of the (i,j) off-diagonal, i < j, row-major over the upper triangle.
    int offdiag_slot(int i, int j) const {
        // Strict-upper entries in rows 0..i-1: sum of (dim-1-r).
        const int before = i * dim - i * (i + 1) / 2;
        return dim + before + (j - i - 1);
    }

    int e_slot() const { return n_matrix_slots(); }
};

/// Quadratic feature map: phi(z) with z_i^2 on diagonal slots and 2 z_i z_j
/// on off-diagonal slots, so phi(z) . coeffs = z' Q z. (No offset slot.)
Eigen::VectorXd features(const Eigen::VectorXd& z);

/// Flatten (S, e) per ThetaLayout.
Eigen::VectorXd flatten(const Eigen::MatrixXd& S, double e);

/// Inverse of flatten for a given matrix dimension.
std::pair<Eigen::MatrixXd, double> unflatten(const Eigen::VectorXd& theta,
                                             int dim);

/// q(x,u) = [x;u]' Qmat [x;u] + e over the joint state-input vector.
struct QuadraticQ {
    Eigen::MatrixXd Qmat;
    double e = 0.0;
    int n_x = 0;
    int n_u = 0;

    Eigen::MatrixXd q_xx() const { return Qmat.topLeftCorner(n_x, n_x); }
    Eigen::MatrixXd q_xu() const { return Qmat.topRightCorner(n_x, n_u); }
    Eigen::MatrixXd q_uu() const { return Qmat.bottomRightCorner(n_u, n_u); }
};

/// v(x) = x' Vmat x + e_v; the auxiliary value variable of the two-family LP.
struct QuadraticV {
    Eigen::MatrixXd Vmat;
    double e_v = 0.0;
};

struct LinearPolicy {
    Eigen::MatrixXd K;  // n_u x n_x

    Eigen::VectorXd action(const Eigen::VectorXd& x) const { return K * x; }
};

double eval_q(const QuadraticQ& q, const Eigen::VectorXd& x,
              const Eigen::VectorXd& u);

/// Raised when the recovered q has no positive definite input block, i.e.
/// the minimizing input is not well defined (degenerate LP solution).
struct NonExtractableError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/**
 * @brief Greedy policy of a quadratic q: K = -q_uu^{-1} q_xu'.
 *
 * Requires the smallest eigenvalue of q_uu to exceed 1e-10; never
 * regularizes silently.
 *
 * @throws NonExtractableError otherwise.
 */
LinearPolicy extract_policy(const QuadraticQ& q);

}  // namespace adp

#endif  // ADP_QBASIS_HPP
