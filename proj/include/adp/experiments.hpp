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
#ifndef ADP_EXPERIMENTS_HPP
#define ADP_EXPERIMENTS_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "adp/dynamics.hpp"
#include "adp/lq_oracle.hpp"
#include "adp/qbasis.hpp"
#include "adp/rng.hpp"
#include "adp/sampling.hpp"

namespace adp {

/**
 * How the classical two-family program is sized relative to the relaxed one:
 * EqualSamples reuses every sample (so twice the rows), EqualRows keeps the
 * row counts comparable by giving the classical program the first half of
 * the samples.
 */
enum class PairingMode { EqualSamples, EqualRows };

const char* to_string(PairingMode m);
PairingMode pairing_from_string(const std::string& s);

/**
 * @brief Full description of one experiment run; loadable from JSON and
 *        overridable from the command line.
 *
 * Experiment 2 sweeps the state dimension, so its stage cost, objective
 * covariance, state box and noise are built per dimension from the exp2_*
 * scalars instead of the explicit matrices.
 */
struct ExperimentConfig {
    int experiment = 1;
    double gamma = 0.95;
    Eigen::MatrixXd L;  // joint (x,u) stage-cost matrix
    Eigen::MatrixXd C;  // objective covariance over (x,u)
    Eigen::VectorXd state_lo, state_hi;
    Eigen::VectorXd input_lo, input_hi;
    Eigen::VectorXd init_lo, init_hi;  // rollout initial-state box
    Eigen::MatrixXd noise_cov;
    Eigen::MatrixXd A, B;  // experiment-1 plant
    std::vector<int> n_constraints;
    std::vector<int> n_x_list;  // experiment-2 dimension sweep
    int mc_draws = 100;
    int repetitions = 10;
    std::uint64_t seed = 1;
    PairingMode pairing = PairingMode::EqualSamples;
    std::string out_dir = "out";
    int n_rollouts = 10;
    double exp2_l_input = 1e-4;
    double exp2_c_input = 0.8;
    double exp2_noise = 1e-4;
    double exp2_state_half = 0.5;

    static ExperimentConfig defaults_for(int experiment);
};

/// Parses a JSON config file; fields default per the file's experiment id.
/// @throws std::runtime_error on missing file or malformed content.
ExperimentConfig load_config(const std::string& path);

/// One solved program (or baseline) inside an experiment.
struct RunRecord {
    std::string method;  // "RLP", "LP" or "LQR"
    int run = 0;
    int n_constraints = 0;
    int n_x = 0;
    double gap = std::numeric_limits<double>::quiet_NaN();
    double e_error = std::numeric_limits<double>::quiet_NaN();
    double solve_time_s = 0.0;
    std::string status;
    Eigen::MatrixXd K;  // empty when no policy could be extracted
    double e = std::numeric_limits<double>::quiet_NaN();
};

/**
 * @brief Debiased relative error of a recovered quadratic kernel:
 *        ||Qmat - Q*||_F / ||Q*||_F. The offset e is excluded here and
 *        compared separately against its own target.
 */
double optimality_gap(const QuadraticQ& qhat, const RiccatiSolution& truth);

/// Smallest H with gamma^H <= tail; the rollout truncation rule.
int truncation_horizon(double gamma, double tail = 1e-6);

/**
 * @brief Truncated Monte Carlo estimate of the discounted closed-loop cost.
 *
 * Each rollout draws x0 from nu0, plays u = Kx and accumulates the
 * source-reported stage costs over `horizon` steps. Rollout j uses the
 * derived stream rng.derive(j), so rollouts are independent of each other
 * and two calls with the same base rng see identical initial states and
 * noise (paired comparisons across policies).
 */
struct RolloutResult {
    double mean_cost = std::numeric_limits<double>::quiet_NaN();
    double std_err = std::numeric_limits<double>::quiet_NaN();
    int n_diverged = 0;
    std::vector<Eigen::MatrixXd> states;  // per rollout, (steps+1) x n_x
    std::vector<Eigen::MatrixXd> inputs;  // per rollout, steps x n_u
    std::vector<double> costs;            // per rollout; NaN when diverged
    std::vector<bool> diverged;
};

RolloutResult rollout_cost(const TransitionSource& source,
                           const LinearPolicy& policy,
                           const BoxDistribution& nu0, double gamma,
                           int horizon, int n_rollouts, const Rng& rng);

/// One method's rollout block in experiment 3.
struct Exp3MethodResult {
    std::string method;
    RolloutResult rollouts;
    double solve_time_s = 0.0;
};

/**
 * @brief Runs the configured experiment, writes its CSV outputs (plus a
 *        small metadata JSON) into cfg.out_dir and returns the records.
 *
 * Identical config and seed give byte-identical CSVs up to the measured
 * solve_time_s column. Non-optimal solver statuses are recorded, not fatal.
 * @throws std::invalid_argument on an invalid config.
 */
std::vector<RunRecord> run_experiment(const ExperimentConfig& cfg);

void write_exp1_csv(const std::vector<RunRecord>& records, std::ostream& os);
void write_exp2_csv(const std::vector<RunRecord>& records, std::ostream& os);
void write_exp3_summary_csv(const std::vector<Exp3MethodResult>& rows,
                            std::ostream& os);
void write_exp3_traj_csv(const std::vector<Exp3MethodResult>& rows,
                         std::ostream& os);

}  // namespace adp

#endif  // ADP_EXPERIMENTS_HPP
