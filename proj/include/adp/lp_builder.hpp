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
#ifndef ADP_LP_BUILDER_HPP
#define ADP_LP_BUILDER_HPP

#include <Eigen/Dense>
#include <iosfwd>

#include "adp/qbasis.hpp"
#include "adp/sampling.hpp"

namespace adp {

using RowMatrixXd =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/**
 * @brief Dense inequality-form program: maximize c_obj . theta subject to
 *        G theta <= h.
 *
 * Variable order follows ThetaLayout on the joint (x,u) quadratic; the
 * two-family program appends a second ThetaLayout block for the state
 * quadratic v. G is row-major: each constraint row is contiguous, which is
 * what the solver's normal-equations accumulation wants.
 */
struct LpProblem {
    Eigen::VectorXd c_obj;
    RowMatrixXd G;
    Eigen::VectorXd h;
    int n_x = 0;
    int n_u = 0;
    bool has_v = false;  // true for the two-family (q,v) program

    int n_vars() const { return static_cast<int>(G.cols()); }
    int n_rows() const { return static_cast<int>(G.rows()); }
};

/// Second moment matrix C of the objective measure: integral of q against
/// the measure equals Tr(Q C) + e for a zero-mean measure with covariance C.
struct ObjectiveMoments {
    Eigen::MatrixXd C;  // (n_x+n_u) x (n_x+n_u), symmetric PSD
};

/**
 * @brief Objective coefficients: C_ii on diagonal slots, 2 C_ij on
 *        off-diagonal slots, 1 on the offset, zeros on any v-slots.
 */
Eigen::VectorXd objective_vector(const ObjectiveMoments& C, int n_x, int n_u,
                                 bool with_v);

/**
 * @brief Single-family relaxed program: one row per sample encoding
 *        q(x,u) <= l(x,u) + g (1/M) sum_i q(x+_i, w).
 *
 * Row coefficients: phi([x;u]) - g mean_i phi([x+_i; w]) on the matrix
 * slots, (1-g) on the offset; rhs l(x,u).
 */
LpProblem build_rlp(const Dataset& data, double gamma,
                    const ObjectiveMoments& C);

/**
 * @brief Two-family program with variables (q, v): per sample,
 *        family A: q(x,u) - g (1/M) sum_i v(x+_i) <= l(x,u)
 *        family B: v(x) - q(x,u) <= 0.
 *
 * Rows are interleaved (A then B per sample). The objective weights only
 * the q-block.
 */
LpProblem build_lp(const Dataset& data, double gamma,
                   const ObjectiveMoments& C);

/// Plain-text export (documented in the README) for third-party checks.
void write_lp_text(const LpProblem& p, std::ostream& os);

LpProblem read_lp_text(std::istream& is);

}  // namespace adp

#endif  // ADP_LP_BUILDER_HPP
