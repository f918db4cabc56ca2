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
#ifndef ADP_SAMPLING_HPP
#define ADP_SAMPLING_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "adp/dynamics.hpp"
#include "adp/rng.hpp"

namespace adp {

/// Axis-aligned uniform box; the state / input / initial-state measure.
struct BoxDistribution {
    Eigen::VectorXd lo;
    Eigen::VectorXd hi;

    BoxDistribution(Eigen::VectorXd lo_in, Eigen::VectorXd hi_in);

    /// U([-half, half]^dim)
    static BoxDistribution symmetric(int dim, double half);

    int dim() const { return static_cast<int>(lo.size()); }
    Eigen::VectorXd sample(Rng& rng) const;
};

/**
 * @brief One sampled constraint: roll-out record (x, u, l(x,u), M draws of
 *        the next state) plus the comparison input w.
 *
 * next_states holds the M i.i.d. draws as rows.
 */
struct ConstraintSample {
    Eigen::VectorXd x;
    Eigen::VectorXd u;
    Eigen::VectorXd w;
    double cost = 0.0;
    Eigen::MatrixXd next_states;  // M x n_x

    int mc_draws() const { return static_cast<int>(next_states.rows()); }
};

struct Dataset {
    std::vector<ConstraintSample> samples;
    int n_x = 0;
    int n_u = 0;
    int mc_draws = 0;
    std::uint64_t seed = 0;

    int size() const { return static_cast<int>(samples.size()); }
};

/**
 * @brief Draws n_constraints i.i.d. tuples: x ~ state_dist, u ~ input_dist,
 *        w ~ input_dist (independent of u), then queries the source M times
 *        at (x,u).
 *
 * The cost is taken from the first query (it is deterministic in (x,u)).
 */
Dataset sample_dataset(const TransitionSource& source,
                       const BoxDistribution& state_dist,
                       const BoxDistribution& input_dist, int n_constraints,
                       int M, Rng& rng);

/// CSV with header x_0..,u_0..,w_0..,cost,mc_index,xp_0..; one row per draw.
void write_dataset_csv(const Dataset& data, std::ostream& os);

/// Inverse of write_dataset_csv (exact: values round-trip via %.17g).
Dataset read_dataset_csv(std::istream& is);

}  // namespace adp

#endif  // ADP_SAMPLING_HPP
