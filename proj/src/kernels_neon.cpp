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

#if defined(__aarch64__) && defined(__ARM_NEON)

#include <arm_neon.h>

namespace adp::kernels {

namespace {

double dot_neon(const double* x, const double* y, int n) {
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    int i = 0;
    for (; i + 4 <= n; i += 4) {
        acc0 = vfmaq_f64(acc0, vld1q_f64(x + i), vld1q_f64(y + i));
        acc1 = vfmaq_f64(acc1, vld1q_f64(x + i + 2), vld1q_f64(y + i + 2));
    }
    for (; i + 2 <= n; i += 2)
        acc0 = vfmaq_f64(acc0, vld1q_f64(x + i), vld1q_f64(y + i));
    double s = vaddvq_f64(acc0) + vaddvq_f64(acc1);
    for (; i < n; ++i) s += x[i] * y[i];
    return s;
}

void axpy_neon(double a, const double* x, double* y, int n) {
    const float64x2_t va = vdupq_n_f64(a);
    int i = 0;
    for (; i + 2 <= n; i += 2)
        vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), va, vld1q_f64(x + i)));
    for (; i < n; ++i) y[i] += a * x[i];
}

void matvec_neon(const double* A, int rows, int cols, const double* x,
                 double* y) {
    for (int i = 0; i < rows; ++i)
        y[i] = dot_neon(A + static_cast<long>(i) * cols, x, cols);
}

void matvec_t_neon(const double* A, int rows, int cols, const double* x,
                   double* y) {
    for (int j = 0; j < cols; ++j) y[j] = 0.0;
    for (int i = 0; i < rows; ++i)
        axpy_neon(x[i], A + static_cast<long>(i) * cols, y, cols);
}

void weighted_gram_neon(const double* A, int rows, int cols, const double* d,
                        double* M) {
    for (long k = 0; k < static_cast<long>(cols) * cols; ++k) M[k] = 0.0;
    for (int i = 0; i < rows; ++i) {
        const double* g = A + static_cast<long>(i) * cols;
        const double w = d[i];
        for (int j = 0; j < cols; ++j) {
            const double s = w * g[j];
            const float64x2_t vs = vdupq_n_f64(s);
            double* Mj = M + static_cast<long>(j) * cols;
            int k = j;
            for (; k + 2 <= cols; k += 2)
                vst1q_f64(Mj + k, vfmaq_f64(vld1q_f64(Mj + k), vs, vld1q_f64(g + k)));
            for (; k < cols; ++k) Mj[k] += s * g[k];
        }
    }
    for (int j = 0; j < cols; ++j)
        for (int k = j + 1; k < cols; ++k)
            M[static_cast<long>(k) * cols + j] = M[static_cast<long>(j) * cols + k];
}

const Backend kNeon = {
    "neon",      dot_neon,      axpy_neon,
    matvec_neon, matvec_t_neon, weighted_gram_neon,
};

}  // namespace

const Backend* neon_backend() { return &kNeon; }

}  // namespace adp::kernels

#else

namespace adp::kernels {
const Backend* neon_backend() { return nullptr; }
}  // namespace adp::kernels

#endif
