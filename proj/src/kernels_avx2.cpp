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

#if defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

namespace adp::kernels {

namespace {

double dot_avx2(const double* x, const double* y, int n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    int i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4)
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    acc0 = _mm256_add_pd(acc0, acc1);
    double lane[4];
    _mm256_storeu_pd(lane, acc0);
    double s = lane[0] + lane[1] + lane[2] + lane[3];
    for (; i < n; ++i) s += x[i] * y[i];
    return s;
}

void axpy_avx2(double a, const double* x, double* y, int n) {
    const __m256d va = _mm256_set1_pd(a);
    int i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vy = _mm256_loadu_pd(y + i);
        vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
        _mm256_storeu_pd(y + i, vy);
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

void matvec_avx2(const double* A, int rows, int cols, const double* x,
                 double* y) {
    for (int i = 0; i < rows; ++i)
        y[i] = dot_avx2(A + static_cast<long>(i) * cols, x, cols);
}

void matvec_t_avx2(const double* A, int rows, int cols, const double* x,
                   double* y) {
    for (int j = 0; j < cols; ++j) y[j] = 0.0;
    for (int i = 0; i < rows; ++i)
        axpy_avx2(x[i], A + static_cast<long>(i) * cols, y, cols);
}

void weighted_gram_avx2(const double* A, int rows, int cols, const double* d,
                        double* M) {
    for (long k = 0; k < static_cast<long>(cols) * cols; ++k) M[k] = 0.0;
    for (int i = 0; i < rows; ++i) {
        const double* g = A + static_cast<long>(i) * cols;
        const double w = d[i];
        for (int j = 0; j < cols; ++j) {
            const double s = w * g[j];
            const __m256d vs = _mm256_set1_pd(s);
            double* Mj = M + static_cast<long>(j) * cols;
            int k = j;
            for (; k + 4 <= cols; k += 4) {
                __m256d vm = _mm256_loadu_pd(Mj + k);
                vm = _mm256_fmadd_pd(vs, _mm256_loadu_pd(g + k), vm);
                _mm256_storeu_pd(Mj + k, vm);
            }
            for (; k < cols; ++k) Mj[k] += s * g[k];
        }
    }
    for (int j = 0; j < cols; ++j)
        for (int k = j + 1; k < cols; ++k)
            M[static_cast<long>(k) * cols + j] = M[static_cast<long>(j) * cols + k];
}

const Backend kAvx2 = {
    "avx2",      dot_avx2,      axpy_avx2,
    matvec_avx2, matvec_t_avx2, weighted_gram_avx2,
};

}  // namespace

const Backend* avx2_backend() {
#if defined(__GNUC__) || defined(__clang__)
    // The library may run on older CPUs than the build machine.
    if (!__builtin_cpu_supports("avx2")) return nullptr;
#endif
    return &kAvx2;
}

}  // namespace adp::kernels

#else

namespace adp::kernels {
const Backend* avx2_backend() { return nullptr; }
}  // namespace adp::kernels

#endif
