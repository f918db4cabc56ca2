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
#include "adp/lp_builder.hpp"

#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "adp/text_io.hpp"

namespace adp {

namespace {

void check_dataset(const Dataset& data, double gamma) {
    if (data.samples.empty())
        throw std::invalid_argument("lp_builder: empty dataset");
    if (gamma <= 0.0 || gamma >= 1.0)
        throw std::invalid_argument("lp_builder: gamma outside (0,1)");
}

Eigen::VectorXd moment_coeffs(const Eigen::MatrixXd& C) {
    // Same slot convention as features(): off-diagonals carry the factor 2.
    return flatten(C, 1.0);
}

}  // namespace

Eigen::VectorXd objective_vector(const ObjectiveMoments& C, int n_x, int n_u,
                                 bool with_v) {
    const int d = n_x + n_u;
    if (C.C.rows() != d || C.C.cols() != d)
        throw std::invalid_argument("objective_vector: moment matrix shape mismatch");
    const ThetaLayout q_layout(d);
    const int nq = q_layout.n_coeffs();
    const int nv = with_v ? ThetaLayout(n_x).n_coeffs() : 0;
    Eigen::VectorXd c = Eigen::VectorXd::Zero(nq + nv);
    c.head(nq) = moment_coeffs(C.C);
    return c;
}

LpProblem build_rlp(const Dataset& data, double gamma,
                    const ObjectiveMoments& C) {
    check_dataset(data, gamma);
    const int n_x = data.n_x;
    const int n_u = data.n_u;
    const int d = n_x + n_u;
    const ThetaLayout layout(d);
    const int nq = layout.n_matrix_slots();

    LpProblem p;
    p.n_x = n_x;
    p.n_u = n_u;
    p.has_v = false;
    p.c_obj = objective_vector(C, n_x, n_u, false);
    p.G.resize(data.size(), nq + 1);
    p.h.resize(data.size());

    Eigen::VectorXd zxu(d), zpw(d);
    for (int r = 0; r < data.size(); ++r) {
        const ConstraintSample& cs = data.samples[static_cast<size_t>(r)];
        zxu << cs.x, cs.u;
        Eigen::VectorXd row = features(zxu);
        const int M = cs.mc_draws();
        Eigen::VectorXd mean_phi = Eigen::VectorXd::Zero(nq);
        for (int i = 0; i < M; ++i) {
            zpw << cs.next_states.row(i).transpose(), cs.w;
            mean_phi += features(zpw);
        }
        row -= (gamma / M) * mean_phi;
        p.G.row(r).head(nq) = row.transpose();
        p.G(r, layout.e_slot()) = 1.0 - gamma;
        p.h(r) = cs.cost;
    }
    return p;
}

LpProblem build_lp(const Dataset& data, double gamma,
                   const ObjectiveMoments& C) {
    check_dataset(data, gamma);
    const int n_x = data.n_x;
    const int n_u = data.n_u;
    const int d = n_x + n_u;
    const ThetaLayout q_layout(d);
    const ThetaLayout v_layout(n_x);
    const int nq = q_layout.n_coeffs();
    const int nv = v_layout.n_coeffs();
    const int e_q = q_layout.e_slot();
    const int e_v = nq + v_layout.e_slot();

    LpProblem p;
    p.n_x = n_x;
    p.n_u = n_u;
    p.has_v = true;
    p.c_obj = objective_vector(C, n_x, n_u, true);
    p.G.setZero(2 * data.size(), nq + nv);
    p.h.resize(2 * data.size());

    Eigen::VectorXd zxu(d);
    for (int r = 0; r < data.size(); ++r) {
        const ConstraintSample& cs = data.samples[static_cast<size_t>(r)];
        zxu << cs.x, cs.u;
        const Eigen::VectorXd phi_xu = features(zxu);
        const int M = cs.mc_draws();
        Eigen::VectorXd mean_phi_v = Eigen::VectorXd::Zero(v_layout.n_matrix_slots());
        for (int i = 0; i < M; ++i)
            mean_phi_v += features(cs.next_states.row(i).transpose());
        mean_phi_v /= M;

        // Family A: q(x,u) - g (1/M) sum_i v(x+_i) <= l(x,u)
        const int ra = 2 * r;
        p.G.row(ra).head(q_layout.n_matrix_slots()) = phi_xu.transpose();
        p.G(ra, e_q) = 1.0;
        p.G.row(ra).segment(nq, v_layout.n_matrix_slots()) =
            -gamma * mean_phi_v.transpose();
        p.G(ra, e_v) = -gamma;
        p.h(ra) = cs.cost;

        // Family B: v(x) - q(x,u) <= 0
        const int rb = 2 * r + 1;
        p.G.row(rb).head(q_layout.n_matrix_slots()) = -phi_xu.transpose();
        p.G(rb, e_q) = -1.0;
        p.G.row(rb).segment(nq, v_layout.n_matrix_slots()) =
            features(cs.x).transpose();
        p.G(rb, e_v) = 1.0;
        p.h(rb) = 0.0;
    }
    return p;
}

void write_lp_text(const LpProblem& p, std::ostream& os) {
    os << "adp-lp 1\n";
    os << "vars " << p.n_vars() << "\n";
    os << "rows " << p.n_rows() << "\n";
    os << "max";
    for (int j = 0; j < p.n_vars(); ++j) os << ' ' << fmt_g17(p.c_obj(j));
    os << '\n';
    for (int i = 0; i < p.n_rows(); ++i) {
        os << "row";
        for (int j = 0; j < p.n_vars(); ++j) os << ' ' << fmt_g17(p.G(i, j));
        os << " <= " << fmt_g17(p.h(i)) << '\n';
    }
}

LpProblem read_lp_text(std::istream& is) {
    std::string tok;
    int version = 0;
    if (!(is >> tok >> version) || tok != "adp-lp" || version != 1)
        throw std::runtime_error("read_lp_text: not an adp-lp v1 file");
    int n = 0, m = 0;
    if (!(is >> tok >> n) || tok != "vars" || n <= 0)
        throw std::runtime_error("read_lp_text: bad vars line");
    if (!(is >> tok >> m) || tok != "rows" || m <= 0)
        throw std::runtime_error("read_lp_text: bad rows line");
    LpProblem p;
    p.c_obj.resize(n);
    p.G.resize(m, n);
    p.h.resize(m);
    if (!(is >> tok) || tok != "max")
        throw std::runtime_error("read_lp_text: bad objective line");
    for (int j = 0; j < n; ++j)
        if (!(is >> p.c_obj(j)))
            throw std::runtime_error("read_lp_text: bad objective coefficient");
    for (int i = 0; i < m; ++i) {
        if (!(is >> tok) || tok != "row")
            throw std::runtime_error("read_lp_text: bad row line");
        for (int j = 0; j < n; ++j)
            if (!(is >> p.G(i, j)))
                throw std::runtime_error("read_lp_text: bad row coefficient");
        if (!(is >> tok) || tok != "<=")
            throw std::runtime_error("read_lp_text: missing <=");
        if (!(is >> p.h(i)))
            throw std::runtime_error("read_lp_text: bad right-hand side");
    }
    return p;
}

}  // namespace adp
