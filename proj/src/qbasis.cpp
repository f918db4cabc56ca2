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
#include "adp/qbasis.hpp"

#include "adp/linalg.hpp"

namespace adp {

Eigen::VectorXd features(const Eigen::VectorXd& z) {
    const int d = static_cast<int>(z.size());
    const ThetaLayout layout(d);
    Eigen::VectorXd phi(layout.n_matrix_slots());
    for (int i = 0; i < d; ++i) phi(layout.diag_slot(i)) = z(i) * z(i);
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            phi(layout.offdiag_slot(i, j)) = 2.0 * z(i) * z(j);
    return phi;
}

Eigen::VectorXd flatten(const Eigen::MatrixXd& S, double e) {
    const int d = static_cast<int>(S.rows());
    if (S.cols() != d) throw std::invalid_argument("flatten: matrix not square");
    const ThetaLayout layout(d);
    Eigen::VectorXd theta(layout.n_coeffs());
    for (int i = 0; i < d; ++i) theta(layout.diag_slot(i)) = S(i, i);
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            theta(layout.offdiag_slot(i, j)) = S(i, j);
    theta(layout.e_slot()) = e;
    return theta;
}

std::pair<Eigen::MatrixXd, double> unflatten(const Eigen::VectorXd& theta,
                                             int dim) {
    const ThetaLayout layout(dim);
    if (theta.size() != layout.n_coeffs())
        throw std::invalid_argument("unflatten: coefficient count mismatch");
    Eigen::MatrixXd S(dim, dim);
    for (int i = 0; i < dim; ++i) S(i, i) = theta(layout.diag_slot(i));
    for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j) {
            S(i, j) = theta(layout.offdiag_slot(i, j));
            S(j, i) = S(i, j);
        }
    return {S, theta(layout.e_slot())};
}

double eval_q(const QuadraticQ& q, const Eigen::VectorXd& x,
              const Eigen::VectorXd& u) {
    if (x.size() != q.n_x || u.size() != q.n_u)
        throw std::invalid_argument("eval_q: dimension mismatch");
    Eigen::VectorXd z(q.n_x + q.n_u);
    z << x, u;
    return z.dot(q.Qmat * z) + q.e;
}

LinearPolicy extract_policy(const QuadraticQ& q) {
    const Eigen::MatrixXd q_uu = q.q_uu();
    if (linalg::min_eigenvalue(q_uu) <= 1e-10)
        throw NonExtractableError(
            "extract_policy: q_uu not positive definite (degenerate solution)");
    return {-q_uu.llt().solve(q.q_xu().transpose())};
}

}  // namespace adp
