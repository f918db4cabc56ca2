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
#include <cstring>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "adp/kernels.hpp"
#include "adp/rng.hpp"
#include "doctest.h"

using adp::Rng;
using adp::kernels::Backend;

namespace {

std::vector<double> random_vec(Rng& rng, int n, double scale = 1.0) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (auto& x : v) x = scale * rng.uniform(-1.0, 1.0);
    return v;
}

// Largest elementwise deviation, relative to the vector scale.
double rel_err(const std::vector<double>& a, const std::vector<double>& b) {
    double num = 0, den = 1;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num = std::max(num, std::abs(a[i] - b[i]));
        den = std::max(den, std::abs(a[i]));
    }
    return num / den;
}

// Runs the full primitive set through one backend and compares against an
// Eigen reference. Sizes deliberately include 1 and non-multiples of the
// SIMD width so remainder loops are exercised.
void check_backend(const Backend& be) {
    Rng rng(2024);
    const int sizes[] = {1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 64, 100, 257};
    for (int rows : sizes) {
        for (int cols : {1, 3, 8, 13}) {
            auto a = random_vec(rng, rows * cols, 2.0);
            auto x = random_vec(rng, cols);
            auto xr = random_vec(rng, rows);
            auto d = random_vec(rng, rows);
            for (auto& w : d) w = std::abs(w) + 0.1;

            Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic,
                                           Eigen::Dynamic, Eigen::RowMajor>>
                A(a.data(), rows, cols);
            Eigen::Map<const Eigen::VectorXd> xv(x.data(), cols);
            Eigen::Map<const Eigen::VectorXd> xrv(xr.data(), rows);
            Eigen::Map<const Eigen::VectorXd> dv(d.data(), rows);

            // dot
            {
                const double ref = xrv.dot(dv);
                const double got = be.dot(xr.data(), d.data(), rows);
                CHECK(std::abs(got - ref) <= 1e-13 * (1.0 + std::abs(ref)));
            }

            // axpy
            {
                auto y = random_vec(rng, cols);
                Eigen::VectorXd ref =
                    Eigen::Map<Eigen::VectorXd>(y.data(), cols) + 0.37 * xv;
                be.axpy(0.37, x.data(), y.data(), cols);
                for (int i = 0; i < cols; ++i)
                    REQUIRE(y[static_cast<std::size_t>(i)] ==
                            doctest::Approx(ref(i)).epsilon(1e-13));
            }

            // matvec / matvec_t
            {
                std::vector<double> y(static_cast<std::size_t>(rows));
                be.matvec(a.data(), rows, cols, x.data(), y.data());
                Eigen::VectorXd ref = A * xv;
                std::vector<double> refv(ref.data(), ref.data() + rows);
                REQUIRE(rel_err(y, refv) < 1e-13);

                std::vector<double> yt(static_cast<std::size_t>(cols));
                be.matvec_t(a.data(), rows, cols, xr.data(), yt.data());
                Eigen::VectorXd reft = A.transpose() * xrv;
                std::vector<double> reftv(reft.data(), reft.data() + cols);
                REQUIRE(rel_err(yt, reftv) < 1e-13);
            }

            // weighted_gram
            {
                std::vector<double> m(
                    static_cast<std::size_t>(cols) * cols, -1.0);
                be.weighted_gram(a.data(), rows, cols, d.data(), m.data());
                Eigen::MatrixXd ref =
                    A.transpose() * dv.asDiagonal() * A;
                for (int i = 0; i < cols; ++i)
                    for (int j = 0; j < cols; ++j)
                        REQUIRE(m[static_cast<std::size_t>(i) * cols + j] ==
                                doctest::Approx(ref(i, j)).epsilon(1e-12));
            }
        }
    }
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("scalar backend matches Eigen reference") {
    check_backend(adp::kernels::scalar_backend());
}

TEST_CASE("simd backend matches Eigen reference when present") {
    const Backend* simd = adp::kernels::avx2_backend();
    if (!simd) simd = adp::kernels::neon_backend();
    if (!simd) return;  // plain build; scalar case already covers it
    check_backend(*simd);
}

TEST_CASE("simd and scalar agree to summation-order tolerance") {
    const Backend* simd = adp::kernels::avx2_backend();
    if (!simd) simd = adp::kernels::neon_backend();
    if (!simd) return;
    const Backend& ref = adp::kernels::scalar_backend();

    Rng rng(555);
    for (int trial = 0; trial < 20; ++trial) {
        const int rows = 1 + static_cast<int>(rng.uniform(0.0, 200.0));
        const int cols = 1 + static_cast<int>(rng.uniform(0.0, 24.0));
        auto a = random_vec(rng, rows * cols, 3.0);
        auto d = random_vec(rng, rows);
        for (auto& w : d) w = std::abs(w);

        std::vector<double> m0(static_cast<std::size_t>(cols) * cols);
        std::vector<double> m1(m0.size());
        ref.weighted_gram(a.data(), rows, cols, d.data(), m0.data());
        simd->weighted_gram(a.data(), rows, cols, d.data(), m1.data());
        REQUIRE(rel_err(m0, m1) < 1e-13);

        std::vector<double> y0(static_cast<std::size_t>(rows));
        std::vector<double> y1(y0.size());
        auto x = random_vec(rng, cols);
        ref.matvec(a.data(), rows, cols, x.data(), y0.data());
        simd->matvec(a.data(), rows, cols, x.data(), y1.data());
        REQUIRE(rel_err(y0, y1) < 1e-13);
    }
}

TEST_CASE("weighted_gram output is exactly symmetric") {
    const Backend& be = adp::kernels::active();
    Rng rng(77);
    const int rows = 57, cols = 11;
    auto a = random_vec(rng, rows * cols);
    auto d = random_vec(rng, rows);
    for (auto& w : d) w = std::abs(w);
    std::vector<double> m(static_cast<std::size_t>(cols) * cols);
    be.weighted_gram(a.data(), rows, cols, d.data(), m.data());
    for (int i = 0; i < cols; ++i)
        for (int j = 0; j < i; ++j)
            CHECK(m[static_cast<std::size_t>(i) * cols + j] ==
                  m[static_cast<std::size_t>(j) * cols + i]);
}

TEST_CASE("active backend is one of the published ones") {
    const Backend& be = adp::kernels::active();
    const std::string name = be.name;
    CHECK((name == "scalar" || name == "avx2" || name == "neon"));
    if (const Backend* simd = adp::kernels::avx2_backend())
        CHECK(std::string(simd->name) == "avx2");
    if (const Backend* simd = adp::kernels::neon_backend())
        CHECK(std::string(simd->name) == "neon");
}

}  // TEST_SUITE
