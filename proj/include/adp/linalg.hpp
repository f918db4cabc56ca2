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
#ifndef ADP_LINALG_HPP
#define ADP_LINALG_HPP

#include <Eigen/Dense>

namespace adp::linalg {

/// Smallest eigenvalue of the symmetric part of S.
double min_eigenvalue(const Eigen::MatrixXd& S);

bool is_psd(const Eigen::MatrixXd& S, double tol = 1e-12);

/// Positive definite with margin tol on the smallest eigenvalue.
bool is_pd(const Eigen::MatrixXd& S, double tol = 1e-10);

/**
 * @brief Lower-triangular factor F with F F^T = S for PSD S.
 *
 * Singular-safe: a (numerically) zero pivot zeroes its column instead of
 * failing, so degenerate covariances (including S = 0) are usable as
 * sampling factors.
 */
Eigen::MatrixXd psd_factor(const Eigen::MatrixXd& S);

/// Numerical rank, counting singular values above tol * sigma_max.
int rank_svd(const Eigen::MatrixXd& M, double tol = 1e-9);

double spectral_radius(const Eigen::MatrixXd& A);

inline Eigen::MatrixXd symmetrize(const Eigen::MatrixXd& S) {
    return 0.5 * (S + S.transpose());
}

}  // namespace adp::linalg

#endif  // ADP_LINALG_HPP
