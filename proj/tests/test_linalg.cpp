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

#include <Eigen/Dense>

#include "adp/linalg.hpp"
#include "adp/rng.hpp"
#include "doctest.h"

using Eigen::MatrixXd;
using adp::Rng;
namespace la = adp::linalg;

namespace {

MatrixXd random_matrix(Rng& rng, int n, int m) {
    MatrixXd a(n, m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) a(i, j) = rng.uniform(-1.0, 1.0);
    return a;
}

}  // namespace

TEST_SUITE("linalg") {

TEST_CASE("min_eigenvalue on hand matrices") {
    MatrixXd d = MatrixXd::Zero(2, 2);
    d(0, 0) = 2.0;
    d(1, 1) = 0.5;
    CHECK(la::min_eigenvalue(d) == doctest::Approx(0.5).epsilon(1e-12));

    // Uses the symmetric part: [[1, 2], [0, 1]] -> sym [[1, 1], [1, 1]],
    // eigenvalues {0, 2}.
    MatrixXd u(2, 2);
    u << 1, 2, 0, 1;
    CHECK(la::min_eigenvalue(u) == doctest::Approx(0.0).epsilon(1e-12));

    MatrixXd neg = -MatrixXd::Identity(3, 3);
    CHECK(la::min_eigenvalue(neg) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("is_psd / is_pd boundary behaviour") {
    CHECK(la::is_psd(MatrixXd::Zero(3, 3)));
    CHECK_FALSE(la::is_pd(MatrixXd::Zero(3, 3)));
    CHECK(la::is_pd(MatrixXd::Identity(4, 4)));
    CHECK_FALSE(la::is_psd(-MatrixXd::Identity(2, 2)));

    // Rank-1 projector: PSD, not PD.
    Eigen::VectorXd v(3);
    v << 1, 2, 3;
    MatrixXd p = v * v.transpose();
    CHECK(la::is_psd(p));
    CHECK_FALSE(la::is_pd(p));

    // A tiny positive eigenvalue below the PD margin is not "PD at tol".
    MatrixXd eps = MatrixXd::Identity(2, 2) * 1e-14;
    CHECK_FALSE(la::is_pd(eps, 1e-10));
    CHECK(la::is_pd(eps, 1e-16));
}

TEST_CASE("psd_factor reproduces the matrix") {
    Rng rng(31);
    for (int n : {1, 2, 4, 6}) {
        MatrixXd b = random_matrix(rng, n, n);
        MatrixXd s = b * b.transpose();
        MatrixXd f = la::psd_factor(s);
        CHECK((f * f.transpose() - s).cwiseAbs().maxCoeff() < 1e-10);
        // Lower triangular.
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) CHECK(f(i, j) == 0.0);
    }
}

TEST_CASE("psd_factor tolerates singular and zero matrices") {
    MatrixXd z = MatrixXd::Zero(3, 3);
    MatrixXd f = la::psd_factor(z);
    CHECK(f.cwiseAbs().maxCoeff() == 0.0);

    // Rank-deficient: S = v v^T.
    Eigen::VectorXd v(3);
    v << 2, -1, 0;
    MatrixXd s = v * v.transpose();
    MatrixXd g = la::psd_factor(s);
    CHECK((g * g.transpose() - s).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("rank_svd counts singular values") {
    Rng rng(32);
    MatrixXd a = random_matrix(rng, 5, 3);  // full column rank a.s.
    CHECK(la::rank_svd(a) == 3);
    MatrixXd outer = a.col(0) * a.col(1).transpose();
    CHECK(la::rank_svd(outer) == 1);
    CHECK(la::rank_svd(MatrixXd::Zero(4, 4)) == 0);
    // Appending a linearly dependent column must not raise the rank.
    MatrixXd aug(5, 4);
    aug << a, a.col(0) + 2.0 * a.col(2);
    CHECK(la::rank_svd(aug) == 3);
}

TEST_CASE("spectral_radius on hand matrices") {
    MatrixXd d = MatrixXd::Zero(2, 2);
    d(0, 0) = 0.3;
    d(1, 1) = -0.9;
    CHECK(la::spectral_radius(d) == doctest::Approx(0.9).epsilon(1e-12));

    // Rotation: complex pair on the unit circle.
    const double a = 0.7;
    MatrixXd rot(2, 2);
    rot << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
    CHECK(la::spectral_radius(rot) == doctest::Approx(1.0).epsilon(1e-12));

    // Nilpotent.
    MatrixXd nil = MatrixXd::Zero(2, 2);
    nil(0, 1) = 5.0;
    CHECK(la::spectral_radius(nil) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("symmetrize") {
    Rng rng(33);
    MatrixXd a = random_matrix(rng, 4, 4);
    MatrixXd s = la::symmetrize(a);
    CHECK((s - s.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((la::symmetrize(s) - s).cwiseAbs().maxCoeff() == 0.0);
}

}  // TEST_SUITE
