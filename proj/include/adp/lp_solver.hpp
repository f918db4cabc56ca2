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
#ifndef ADP_LP_SOLVER_HPP
#define ADP_LP_SOLVER_HPP

#include <Eigen/Dense>
#include <string>

#include "adp/lp_builder.hpp"

namespace adp {

enum class SolveStatus { Optimal, Unbounded, Infeasible, IterationLimit };

const char* to_string(SolveStatus s);

struct SolverSettings {
    double feas_tol = 1e-8;    // primal/dual residual tolerance
    double gap_tol = 1e-8;     // relative duality-gap tolerance
    int max_iter = 200;
    double divergence = 1e12;  // objective blow-up threshold
    bool verbose = false;
};

/**
 * @brief Solver outcome.
 *
 * theta and duals are populated iff status == Optimal. For Unbounded the
 * objective is +inf and ray (when nonempty) is a normalized direction with
 * G ray <= 0, c_obj . ray > 0. For Infeasible, farkas is a normalized
 * certificate y >= 0, G^T y ~ 0, h . y < 0. IterationLimit keeps the
 * best-seen objective and a diagnostic note.
 */
struct LpSolution {
    SolveStatus status = SolveStatus::IterationLimit;
    Eigen::VectorXd theta;
    double objective = 0.0;
    Eigen::VectorXd duals;
    int iterations = 0;
    double solve_time_s = 0.0;
    std::string diagnostic;
    Eigen::VectorXd ray;
    Eigen::VectorXd farkas;
};

/**
 * @brief Mehrotra-style predictor-corrector interior-point method for
 *        maximize c_obj . theta subject to G theta <= h.
 *
 * Dense normal equations on the Ruiz-equilibrated problem with iterative
 * refinement of each Newton solve; termination is measured on the scaled
 * problem (standard practice; the experiment programs here are badly
 * scaled in original units). On dual-degenerate programs, where huge
 * multipliers floor the computable residuals at roundoff, an iterate is
 * accepted as optimal once complementarity certifies the gap and the
 * residuals sit at that floor (the diagnostic notes this). A stalled
 * endgame is finished combinatorially when possible (active-set polish of
 * the interior iterate, certified against the unmodified tolerances) and
 * otherwise re-solved in extended precision. Deterministic and
 * single-threaded.
 */
LpSolution solve_lp(const LpProblem& p, const SolverSettings& s = {});

}  // namespace adp

#endif  // ADP_LP_SOLVER_HPP
