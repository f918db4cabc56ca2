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
#include "adp/linalg.hpp"

#include <cmath>

namespace adp::linalg {

double min_eigenvalue(const Eigen::MatrixXd& S) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(symmetrize(S),
                                                      Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

bool is_psd(const Eigen::MatrixXd& S, double tol) {
    return min_eigenvalue(S) >= -tol;
}

bool is_pd(const Eigen::MatrixXd& S, double tol) {
    return min_eigenvalue(S) > tol;
}

Eigen::MatrixXd psd_factor(const Eigen::MatrixXd& S) {
    const int n = static_cast<int>(S.rows());
    Eigen::MatrixXd F = Eigen::MatrixXd::Zero(n, n);
    const double scale = std::max(1.0, S.diagonal().maxCoeff());
    const double tiny = 1e-14 * scale;
    for (int j = 0; j < n; ++j) {
        double d = S(j, j);
        for (int k = 0; k < j; ++k) d -= F(j, k) * F(j, k);
        if (d <= tiny) continue;  // column stays zero
        F(j, j) = std::sqrt(d);
        for (int i = j + 1; i < n; ++i) {
            double v = S(i, j);
            for (int k = 0; k < j; ++k) v -= F(i, k) * F(j, k);
            F(i, j) = v / F(j, j);
        }
    }
    return F;
}

int rank_svd(const Eigen::MatrixXd& M, double tol) {
    if (M.size() == 0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) <= 0.0) return 0;
    int r = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > tol * sv(0)) ++r;
    return r;
}

double spectral_radius(const Eigen::MatrixXd& A) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(A, /*computeEigenvectors=*/false);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace adp::linalg
