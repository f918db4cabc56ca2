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
#include "adp/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace adp::kernels {

namespace {

double dot_scalar(const double* x, const double* y, int n) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += x[i] * y[i];
    return s;
}

void axpy_scalar(double a, const double* x, double* y, int n) {
    for (int i = 0; i < n; ++i) y[i] += a * x[i];
}

void matvec_scalar(const double* A, int rows, int cols, const double* x,
                   double* y) {
    for (int i = 0; i < rows; ++i) y[i] = dot_scalar(A + static_cast<long>(i) * cols, x, cols);
}

void matvec_t_scalar(const double* A, int rows, int cols, const double* x,
                     double* y) {
    for (int j = 0; j < cols; ++j) y[j] = 0.0;
    for (int i = 0; i < rows; ++i)
        axpy_scalar(x[i], A + static_cast<long>(i) * cols, y, cols);
}

void weighted_gram_scalar(const double* A, int rows, int cols,
                          const double* d, double* M) {
    for (long k = 0; k < static_cast<long>(cols) * cols; ++k) M[k] = 0.0;
    for (int i = 0; i < rows; ++i) {
        const double* g = A + static_cast<long>(i) * cols;
        const double w = d[i];
        for (int j = 0; j < cols; ++j) {
            const double s = w * g[j];
            double* Mj = M + static_cast<long>(j) * cols;
            for (int k = j; k < cols; ++k) Mj[k] += s * g[k];
        }
    }
    // Mirror the upper triangle.
    for (int j = 0; j < cols; ++j)
        for (int k = j + 1; k < cols; ++k)
            M[static_cast<long>(k) * cols + j] = M[static_cast<long>(j) * cols + k];
}

const Backend kScalar = {
    "scalar",        dot_scalar,      axpy_scalar,
    matvec_scalar,   matvec_t_scalar, weighted_gram_scalar,
};

const Backend* pick() {
    const char* env = std::getenv("ADP_KERNELS");
    if (env != nullptr) {
        if (std::strcmp(env, "scalar") == 0) return &kScalar;
        if (std::strcmp(env, "avx2") == 0 && avx2_backend()) return avx2_backend();
        if (std::strcmp(env, "neon") == 0 && neon_backend()) return neon_backend();
        return &kScalar;
    }
    if (avx2_backend()) return avx2_backend();
    if (neon_backend()) return neon_backend();
    return &kScalar;
}

}  // namespace

const Backend& scalar_backend() { return kScalar; }

const Backend& active() {
    static const Backend* chosen = pick();
    return *chosen;
}

}  // namespace adp::kernels
