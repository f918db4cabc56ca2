// Copyright 2025 The adp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <sstream>

#include <Eigen/Dense>

#include "adp/dynamics.hpp"
#include "adp/lp_builder.hpp"
#include "adp/qbasis.hpp"
#include "adp/rng.hpp"
#include "adp/sampling.hpp"
#include "doctest.h"

using Eigen::MatrixXd;
using Eigen::VectorXd;
using namespace adp;

namespace {

Dataset small_dataset(int n, int m, std::uint64_t seed, int n_x = 2,
                      int n_u = 1) {
    Rng rng(seed);
    Dataset data;
    data.n_x = n_x;
    data.n_u = n_u;
    data.mc_draws = m;
    data.seed = seed;
    for (int k = 0; k < n; ++k) {
        ConstraintSample cs;
        cs.x = VectorXd::NullaryExpr(n_x, [&](int) { return rng.uniform(-2.0, 2.0); });
        cs.u = VectorXd::NullaryExpr(n_u, [&](int) { return rng.uniform(-1.0, 1.0); });
        cs.w = VectorXd::NullaryExpr(n_u, [&](int) { return rng.uniform(-1.0, 1.0); });
        cs.cost = rng.uniform(0.0, 3.0);
        cs.next_states = MatrixXd::NullaryExpr(
            m, n_x, [&](int, int) { return rng.uniform(-2.0, 2.0); });
        data.samples.push_back(cs);
    }
    return data;
}

ObjectiveMoments identity_moments(int d) { return ObjectiveMoments{MatrixXd::Identity(d, d)}; }

VectorXd joint(const VectorXd& a, const VectorXd& b) {
    VectorXd z(a.size() + b.size());
    z << a, b;
    return z;
}

}  // namespace

TEST_SUITE("lp_builder") {

TEST_CASE("objective_vector places moments on the layout") {
    MatrixXd c(3, 3);
    c << 2.0, 0.3, 0.0, 0.3, 1.0, -0.1, 0.0, -0.1, 0.5;
    VectorXd obj = objective_vector(ObjectiveMoments{c}, 2, 1, false);
    REQUIRE(obj.size() == 7);
    CHECK(obj(0) == 2.0);
    CHECK(obj(1) == 1.0);
    CHECK(obj(2) == 0.5);
    CHECK(obj(3) == doctest::Approx(0.6).epsilon(1e-15));   // 2 C_01
    CHECK(obj(4) == 0.0);                                   // 2 C_02
    CHECK(obj(5) == doctest::Approx(-0.2).epsilon(1e-15));  // 2 C_12
    CHECK(obj(6) == 1.0);                                   // offset

    // v-block gets zero weight.
    VectorXd obj_v = objective_vector(ObjectiveMoments{c}, 2, 1, true);
    REQUIRE(obj_v.size() == 7 + ThetaLayout(2).n_coeffs());
    CHECK((obj_v.head(7) - obj).cwiseAbs().maxCoeff() == 0.0);
    CHECK(obj_v.tail(obj_v.size() - 7).cwiseAbs().maxCoeff() == 0.0);

    // For any (Q, e): c_obj . flatten(Q,e) = Tr(QC) + e.
    Rng rng(61);
    MatrixXd q(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) q(i, j) = q(j, i) = rng.uniform(-1.0, 1.0);
    const double e = 0.37;
    CHECK(obj.dot(flatten(q, e)) ==
          doctest::Approx((q * c).trace() + e).epsilon(1e-13));
}

TEST_CASE("build_rlp rows encode the relaxed inequality") {
    const double g = 0.9;
    Dataset data = small_dataset(6, 3, 6100);
    LpProblem p = build_rlp(data, g, identity_moments(3));

    CHECK(p.n_rows() == 6);
    CHECK(p.n_vars() == 7);  // ThetaLayout(3).n_coeffs()
    CHECK(p.n_x == 2);
    CHECK(p.n_u == 1);
    CHECK_FALSE(p.has_v);

    ThetaLayout layout(3);
    for (int r = 0; r < 6; ++r) {
        const auto& cs = data.samples[static_cast<std::size_t>(r)];
        VectorXd expect = VectorXd::Zero(7);
        expect.head(6) = features(joint(cs.x, cs.u));
        for (int i = 0; i < 3; ++i) {
            VectorXd xp = cs.next_states.row(i).transpose();
            expect.head(6) -= (g / 3.0) * features(joint(xp, cs.w));
        }
        expect(layout.e_slot()) = 1.0 - g;
        CHECK((p.G.row(r).transpose() - expect).cwiseAbs().maxCoeff() < 1e-14);
        CHECK(p.h(r) == cs.cost);
    }

    // Row semantics: for any theta, G theta <= h iff
    // q(x,u) <= l + g mean_i q(xp_i, w).
    Rng rng(62);
    VectorXd theta(7);
    for (int i = 0; i < 7; ++i) theta(i) = rng.uniform(-1.0, 1.0);
    auto [qm, qe] = unflatten(theta, 3);
    QuadraticQ qq{qm, qe, 2, 1};
    for (int r = 0; r < 6; ++r) {
        const auto& cs = data.samples[static_cast<std::size_t>(r)];
        double rhs = cs.cost;
        for (int i = 0; i < 3; ++i)
            rhs += (g / 3.0) *
                   eval_q(qq, cs.next_states.row(i).transpose(), cs.w);
        const double slack = rhs - eval_q(qq, cs.x, cs.u);
        const double row_slack = p.h(r) - p.G.row(r).dot(theta);
        CHECK(row_slack == doctest::Approx(slack).epsilon(1e-12));
    }
}

TEST_CASE("build_lp interleaves the two families") {
    const double g = 0.9;
    Dataset data = small_dataset(5, 4, 6200);
    LpProblem p = build_lp(data, g, identity_moments(3));

    const int n_q = ThetaLayout(3).n_coeffs();  // 7
    const int n_v = ThetaLayout(2).n_coeffs();  // 4
    CHECK(p.n_rows() == 10);
    CHECK(p.n_vars() == n_q + n_v);
    CHECK(p.has_v);

    ThetaLayout ql(3), vl(2);
    for (int r = 0; r < 5; ++r) {
        const auto& cs = data.samples[static_cast<std::size_t>(r)];

        // Family A: q(x,u) - g mean_i v(xp_i) <= cost.
        VectorXd a = VectorXd::Zero(p.n_vars());
        a.head(ql.n_matrix_slots()) = features(joint(cs.x, cs.u));
        a(ql.e_slot()) = 1.0;
        for (int i = 0; i < 4; ++i) {
            VectorXd xp = cs.next_states.row(i).transpose();
            a.segment(n_q, vl.n_matrix_slots()) -= (g / 4.0) * features(xp);
        }
        a(n_q + vl.e_slot()) = -g;
        CHECK((p.G.row(2 * r).transpose() - a).cwiseAbs().maxCoeff() < 1e-14);
        CHECK(p.h(2 * r) == cs.cost);

        // Family B: v(x) - q(x,u) <= 0, at the sampled pair itself.
        VectorXd b = VectorXd::Zero(p.n_vars());
        b.head(ql.n_matrix_slots()) = -features(joint(cs.x, cs.u));
        b(ql.e_slot()) = -1.0;
        b.segment(n_q, vl.n_matrix_slots()) = features(cs.x);
        b(n_q + vl.e_slot()) = 1.0;
        CHECK((p.G.row(2 * r + 1).transpose() - b).cwiseAbs().maxCoeff() < 1e-14);
        CHECK(p.h(2 * r + 1) == 0.0);
    }

    // Objective touches only the q block.
    CHECK(p.c_obj.tail(n_v).cwiseAbs().maxCoeff() == 0.0);
    CHECK(p.c_obj.head(n_q).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("variable counts follow the quadratic basis") {
    for (int n_x = 2; n_x <= 10; ++n_x) {
        Dataset data = small_dataset(3, 2, 6300 + static_cast<std::uint64_t>(n_x),
                                     n_x, 2);
        ObjectiveMoments c = identity_moments(n_x + 2);
        LpProblem rlp = build_rlp(data, 0.95, c);
        LpProblem lp = build_lp(data, 0.95, c);

        const int expected_rlp = (n_x + 2) * (n_x + 3) / 2 + 1;
        CHECK(rlp.n_vars() == expected_rlp);
        CHECK(lp.n_vars() == expected_rlp + n_x * (n_x + 1) / 2 + 1);
        CHECK(rlp.n_rows() == 3);
        CHECK(lp.n_rows() == 6);
    }
}

TEST_CASE("classical feasibility chains into relaxed feasibility") {
    // Augment the two-family program with family-B rows at every sampled
    // next state (xp_i, w). Any (q, v) feasible for that augmented system
    // has a q-part feasible for the relaxed program on the same data:
    // chain q(x,u) <= l + g mean_i v(xp_i) with v(xp_i) >= ... no, with
    // v(xp_i) - q(xp_i, w) <= 0.
    const double g = 0.9;
    Dataset data = small_dataset(40, 5, 6400);
    LpProblem lp = build_lp(data, g, identity_moments(3));
    LpProblem rlp = build_rlp(data, g, identity_moments(3));
    const int n_q = ThetaLayout(3).n_coeffs();

    Rng rng(63);
    for (int trial = 0; trial < 5; ++trial) {
        // Random (q, v), then shift both offsets down (dq on q, dv on v)
        // until every constraint of the augmented system holds. Shifting
        // changes family B slack by dq - dv and family A slack by
        // g dv - dq, so both families pin a linear system on (dq, dv).
        VectorXd theta(lp.n_vars());
        for (int i = 0; i < theta.size(); ++i) theta(i) = rng.uniform(-0.5, 0.5);
        auto [qm, qe] = unflatten(theta.head(n_q), 3);
        auto [vm, ve] = unflatten(theta.tail(lp.n_vars() - n_q), 2);
        QuadraticQ qq{qm, qe, 2, 1};

        double worst_b = 0.0;  // max over sampled and chained B rows
        double worst_a = 0.0;
        for (const auto& cs : data.samples) {
            const double vx = cs.x.dot(vm * cs.x) + ve;
            worst_b = std::max(worst_b, vx - eval_q(qq, cs.x, cs.u));
            double bar_v = 0.0;
            for (int i = 0; i < cs.mc_draws(); ++i) {
                VectorXd xp = cs.next_states.row(i).transpose();
                const double vxp = xp.dot(vm * xp) + ve;
                worst_b = std::max(worst_b, vxp - eval_q(qq, xp, cs.w));
                bar_v += vxp / cs.mc_draws();
            }
            worst_a = std::max(worst_a,
                               eval_q(qq, cs.x, cs.u) - cs.cost - g * bar_v);
        }
        // Need dv - dq >= worst_b and dq - g dv >= worst_a; solve with a
        // 1e-6 margin on both.
        const double wb = std::max(0.0, worst_b);
        const double dq =
            (std::max(0.0, worst_a + g * wb) + (1.0 + g) * 1e-6) / (1.0 - g);
        const double dv = wb + dq + 1e-6;
        qe -= dq;
        ve -= dv;

        // The adjusted theta is feasible for the built two-family program
        // (its rows are a subset of the augmented system)...
        theta.head(n_q) = flatten(qm, qe);
        theta.tail(lp.n_vars() - n_q) = flatten(vm, ve);
        CHECK((lp.G * theta - lp.h).maxCoeff() <= 0.0);

        // ...and its q-part satisfies every relaxed row, because each RLP
        // row is the A row plus g/M times the chained B rows.
        VectorXd theta_q = theta.head(n_q);
        CHECK((rlp.G * theta_q - rlp.h).maxCoeff() <= 1e-12);
    }
}

TEST_CASE("lp text round trip") {
    Dataset data = small_dataset(4, 2, 6500);
    LpProblem p = build_lp(data, 0.95, identity_moments(3));

    std::ostringstream out;
    write_lp_text(p, out);
    std::istringstream in(out.str());
    LpProblem back = read_lp_text(in);

    CHECK(back.n_vars() == p.n_vars());
    CHECK(back.n_rows() == p.n_rows());
    CHECK((back.c_obj - p.c_obj).cwiseAbs().maxCoeff() == 0.0);
    CHECK((back.G - p.G).cwiseAbs().maxCoeff() == 0.0);
    CHECK((back.h - p.h).cwiseAbs().maxCoeff() == 0.0);

    std::ostringstream out2;
    write_lp_text(back, out2);
    CHECK(out.str() == out2.str());
    CHECK(out.str().rfind("adp-lp 1", 0) == 0);
}

}  // TEST_SUITE
