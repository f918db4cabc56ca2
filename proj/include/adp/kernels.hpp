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
#ifndef ADP_KERNELS_HPP
#define ADP_KERNELS_HPP

namespace adp::kernels {

/**
 * @brief Dense double-precision primitives behind the LP solver hot loops.
 *
 * All matrices are row-major. Every backend implements identical semantics;
 * the SIMD variants may differ from the scalar reference only by
 * floating-point summation order. Backend selection happens once per
 * process, so a given run is deterministic.
 */
struct Backend {
    const char* name;

    /// sum_i x[i]*y[i]
    double (*dot)(const double* x, const double* y, int n);

    /// y += a*x
    void (*axpy)(double a, const double* x, double* y, int n);

    /// y = A x for row-major A (rows x cols)
    void (*matvec)(const double* A, int rows, int cols, const double* x,
                   double* y);

    /// y = A^T x for row-major A (rows x cols); y has length cols
    void (*matvec_t)(const double* A, int rows, int cols, const double* x,
                     double* y);

    /**
     * M = A^T diag(d) A for row-major A (rows x cols); M is cols x cols,
     * row-major, fully written (symmetric).
     */
    void (*weighted_gram)(const double* A, int rows, int cols,
                          const double* d, double* M);
};

/// Portable reference implementation.
const Backend& scalar_backend();

/// AVX2+FMA variant; nullptr when unsupported by the build or the CPU.
const Backend* avx2_backend();

/// NEON variant; nullptr off aarch64.
const Backend* neon_backend();

/**
 * @brief Backend used by the solver.
 *
 * Picks the widest supported variant at first use. The environment variable
 * ADP_KERNELS (scalar | avx2 | neon) forces a specific one.
 */
const Backend& active();

}  // namespace adp::kernels

#endif  // ADP_KERNELS_HPP
