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
#include "adp/sampling.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "adp/text_io.hpp"

namespace adp {

BoxDistribution::BoxDistribution(Eigen::VectorXd lo_in, Eigen::VectorXd hi_in)
    : lo(std::move(lo_in)), hi(std::move(hi_in)) {
    if (lo.size() != hi.size())
        throw std::invalid_argument("BoxDistribution: bound length mismatch");
    for (int i = 0; i < lo.size(); ++i)
        if (lo(i) > hi(i))
            throw std::invalid_argument("BoxDistribution: lower bound above upper");
}

BoxDistribution BoxDistribution::symmetric(int dim, double half) {
    return {Eigen::VectorXd::Constant(dim, -half),
            Eigen::VectorXd::Constant(dim, half)};
}

Eigen::VectorXd BoxDistribution::sample(Rng& rng) const {
    Eigen::VectorXd v(dim());
    for (int i = 0; i < dim(); ++i) v(i) = rng.uniform(lo(i), hi(i));
    return v;
}

Dataset sample_dataset(const TransitionSource& source,
                       const BoxDistribution& state_dist,
                       const BoxDistribution& input_dist, int n_constraints,
                       int M, Rng& rng) {
    if (n_constraints < 1 || M < 1)
        throw std::invalid_argument("sample_dataset: need n_constraints >= 1 and M >= 1");
    if (state_dist.dim() != source.state_dim() ||
        input_dist.dim() != source.input_dim())
        throw std::invalid_argument("sample_dataset: distribution dimension mismatch");
    Dataset data;
    data.n_x = source.state_dim();
    data.n_u = source.input_dim();
    data.mc_draws = M;
    data.seed = rng.seed();
    data.samples.reserve(n_constraints);
    for (int k = 0; k < n_constraints; ++k) {
        ConstraintSample cs;
        cs.x = state_dist.sample(rng);
        cs.u = input_dist.sample(rng);
        cs.w = input_dist.sample(rng);
        cs.next_states.resize(M, data.n_x);
        for (int i = 0; i < M; ++i) {
            auto [cost, xp] = source.query(cs.x, cs.u, rng);
            if (i == 0) cs.cost = cost;
            cs.next_states.row(i) = xp.transpose();
        }
        data.samples.push_back(std::move(cs));
    }
    return data;
}

void write_dataset_csv(const Dataset& data, std::ostream& os) {
    for (int i = 0; i < data.n_x; ++i) os << "x_" << i << ',';
    for (int i = 0; i < data.n_u; ++i) os << "u_" << i << ',';
    for (int i = 0; i < data.n_u; ++i) os << "w_" << i << ',';
    os << "cost,mc_index";
    for (int i = 0; i < data.n_x; ++i) os << ",xp_" << i;
    os << '\n';
    for (const auto& cs : data.samples) {
        for (int m = 0; m < cs.mc_draws(); ++m) {
            for (int i = 0; i < data.n_x; ++i) os << fmt_g17(cs.x(i)) << ',';
            for (int i = 0; i < data.n_u; ++i) os << fmt_g17(cs.u(i)) << ',';
            for (int i = 0; i < data.n_u; ++i) os << fmt_g17(cs.w(i)) << ',';
            os << fmt_g17(cs.cost) << ',' << m;
            for (int i = 0; i < data.n_x; ++i)
                os << ',' << fmt_g17(cs.next_states(m, i));
            os << '\n';
        }
    }
}

Dataset read_dataset_csv(std::istream& is) {
    std::string header;
    if (!std::getline(is, header))
        throw std::runtime_error("read_dataset_csv: empty input");
    int n_x = 0, n_u = 0;
    {
        std::stringstream ss(header);
        std::string col;
        while (std::getline(ss, col, ',')) {
            if (col.rfind("x_", 0) == 0) ++n_x;
            if (col.rfind("u_", 0) == 0) ++n_u;
        }
    }
    if (n_x == 0 || n_u == 0)
        throw std::runtime_error("read_dataset_csv: unrecognized header");
    Dataset data;
    data.n_x = n_x;
    data.n_u = n_u;
    std::string line;
    std::vector<Eigen::VectorXd> pending_xp;
    ConstraintSample cur;
    auto flush = [&]() {
        if (pending_xp.empty()) return;
        cur.next_states.resize(static_cast<int>(pending_xp.size()), n_x);
        for (size_t i = 0; i < pending_xp.size(); ++i)
            cur.next_states.row(static_cast<int>(i)) = pending_xp[i].transpose();
        data.samples.push_back(cur);
        pending_xp.clear();
    };
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string tok;
        std::vector<std::string> toks;
        while (std::getline(ss, tok, ',')) toks.push_back(tok);
        const size_t expected = static_cast<size_t>(n_x + 2 * n_u + 2 + n_x);
        if (toks.size() != expected)
            throw std::runtime_error("read_dataset_csv: bad column count");
        size_t p = 0;
        Eigen::VectorXd x(n_x), u(n_u), w(n_u), xp(n_x);
        for (int i = 0; i < n_x; ++i) x(i) = std::stod(toks[p++]);
        for (int i = 0; i < n_u; ++i) u(i) = std::stod(toks[p++]);
        for (int i = 0; i < n_u; ++i) w(i) = std::stod(toks[p++]);
        const double cost = std::stod(toks[p++]);
        const int mc_index = std::stoi(toks[p++]);
        for (int i = 0; i < n_x; ++i) xp(i) = std::stod(toks[p++]);
        if (mc_index == 0) {
            flush();
            cur = ConstraintSample{};
            cur.x = x;
            cur.u = u;
            cur.w = w;
            cur.cost = cost;
        }
        pending_xp.push_back(xp);
    }
    flush();
    if (data.samples.empty())
        throw std::runtime_error("read_dataset_csv: no rows");
    data.mc_draws = data.samples.front().mc_draws();
    return data;
}

}  // namespace adp
