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
#ifndef ADP_FINITE_ORACLE_HPP
#define ADP_FINITE_ORACLE_HPP

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <vector>

#include "adp/rng.hpp"

namespace adp {

/**
 * @brief Tabular MDP: cost(s,a) >= 0 and a row-stochastic transition tensor,
 *        stored as trans with row index s*n_a + a over next states.
 *
 * Brute-force laboratory for the exact Bellman operator and its relaxed
 * (min-outside-the-expectation) variant.
 */
struct FiniteMdp {
    int n_s = 0;
    int n_a = 0;
    double gamma = 0.0;
    Eigen::MatrixXd cost;   // n_s x n_a
    Eigen::MatrixXd trans;  // (n_s*n_a) x n_s, rows sum to 1

    FiniteMdp(int n_s_in, int n_a_in, double gamma_in, Eigen::MatrixXd cost_in,
              Eigen::MatrixXd trans_in);

    int row(int s, int a) const { return s * n_a + a; }
};

using QTable = Eigen::MatrixXd;  // n_s x n_a

/// (F q)[s,a] = cost[s,a] + gamma * sum_s' P[s,a,s'] min_b q[s',b]
QTable op_f(const FiniteMdp& m, const QTable& q);

/// (Fhat q)[s,a] = cost[s,a] + gamma * min_b sum_s' P[s,a,s'] q[s',b]
QTable op_f_hat(const FiniteMdp& m, const QTable& q);

using BellmanOp = QTable (*)(const FiniteMdp&, const QTable&);

/**
 * @brief Value iteration to a certified tol-accurate fixed point.
 *
 * Stops when the sup-norm update is <= tol*(1-gamma)/gamma, which bounds
 * the distance to the true fixed point by tol (contraction estimate).
 *
 * @throws std::runtime_error when max_iter is exhausted.
 */
QTable fixed_point(const FiniteMdp& m, BellmanOp op, const QTable& q0,
                   double tol = 1e-10, int max_iter = 1000000);

/**
 * @brief Seedable random MDP: transition rows ~ Dirichlet(1,..,1), costs
 *        uniform on [0,1]. deterministic=true draws one-hot rows instead.
 */
FiniteMdp random_mdp(int n_s, int n_a, double gamma, Rng& rng,
                     bool deterministic = false);

struct PropertyReport {
    std::string property;
    bool asserted = true;  // reported-only rows are not pass/fail gated
    bool pass = false;
    double worst = 0.0;    // worst measured value across instances
    double threshold = 0.0;
    std::string note;
};

/**
 * @brief Runs the operator property suite on seeded random MDPs
 *        (every fifth instance deterministic) and returns one report row
 *        per property. Greedy-policy agreement between the two fixed
 *        points is reported, never asserted.
 */
std::vector<PropertyReport> run_property_suite(int n_mdps, std::uint64_t seed,
                                               std::ostream* log = nullptr);

/// CSV: property,asserted,pass,worst,threshold,note
void write_report_csv(const std::vector<PropertyReport>& reports,
                      std::ostream& os);

}  // namespace adp

#endif  // ADP_FINITE_ORACLE_HPP
