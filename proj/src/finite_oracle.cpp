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
#include "adp/finite_oracle.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "adp/text_io.hpp"

namespace adp {

FiniteMdp::FiniteMdp(int n_s_in, int n_a_in, double gamma_in,
                     Eigen::MatrixXd cost_in, Eigen::MatrixXd trans_in)
    : n_s(n_s_in),
      n_a(n_a_in),
      gamma(gamma_in),
      cost(std::move(cost_in)),
      trans(std::move(trans_in)) {
    if (gamma <= 0.0 || gamma >= 1.0)
        throw std::invalid_argument("FiniteMdp: gamma outside (0,1)");
    if (cost.rows() != n_s || cost.cols() != n_a)
        throw std::invalid_argument("FiniteMdp: cost shape mismatch");
    if (trans.rows() != n_s * n_a || trans.cols() != n_s)
        throw std::invalid_argument("FiniteMdp: transition shape mismatch");
    if (cost.minCoeff() < 0.0)
        throw std::invalid_argument("FiniteMdp: negative cost");
    if (trans.minCoeff() < 0.0)
        throw std::invalid_argument("FiniteMdp: negative transition probability");
    for (int r = 0; r < trans.rows(); ++r)
        if (std::abs(trans.row(r).sum() - 1.0) > 1e-12)
            throw std::invalid_argument("FiniteMdp: transition row not stochastic");
}

QTable op_f(const FiniteMdp& m, const QTable& q) {
    if (q.rows() != m.n_s || q.cols() != m.n_a)
        throw std::invalid_argument("op_f: shape mismatch");
    const Eigen::VectorXd vmin = q.rowwise().minCoeff();
    QTable out(m.n_s, m.n_a);
    for (int s = 0; s < m.n_s; ++s)
        for (int a = 0; a < m.n_a; ++a)
            out(s, a) = m.cost(s, a) + m.gamma * m.trans.row(m.row(s, a)).dot(vmin);
    return out;
}

QTable op_f_hat(const FiniteMdp& m, const QTable& q) {
    if (q.rows() != m.n_s || q.cols() != m.n_a)
        throw std::invalid_argument("op_f_hat: shape mismatch");
    QTable out(m.n_s, m.n_a);
    for (int s = 0; s < m.n_s; ++s)
        for (int a = 0; a < m.n_a; ++a) {
            // Expected q per candidate action b, minimized after averaging.
            const Eigen::RowVectorXd expq = m.trans.row(m.row(s, a)) * q;
            out(s, a) = m.cost(s, a) + m.gamma * expq.minCoeff();
        }
    return out;
}

QTable fixed_point(const FiniteMdp& m, BellmanOp op, const QTable& q0,
                   double tol, int max_iter) {
    const double stop = tol * (1.0 - m.gamma) / m.gamma;
    QTable q = q0;
    for (int it = 0; it < max_iter; ++it) {
        QTable qn = op(m, q);
        const double delta = (qn - q).cwiseAbs().maxCoeff();
        q = std::move(qn);
        if (delta <= stop) return q;
    }
    throw std::runtime_error("fixed_point: max_iter exhausted");
}

FiniteMdp random_mdp(int n_s, int n_a, double gamma, Rng& rng,
                     bool deterministic) {
    Eigen::MatrixXd cost(n_s, n_a);
    for (int s = 0; s < n_s; ++s)
        for (int a = 0; a < n_a; ++a) cost(s, a) = rng.uniform();
    Eigen::MatrixXd trans = Eigen::MatrixXd::Zero(n_s * n_a, n_s);
    for (int r = 0; r < n_s * n_a; ++r) {
        if (deterministic) {
            int idx = static_cast<int>(rng.uniform() * n_s);
            if (idx >= n_s) idx = n_s - 1;
            trans(r, idx) = 1.0;
        } else {
            // Dirichlet(1,..,1) row via normalized unit exponentials.
            double total = 0.0;
            for (int j = 0; j < n_s; ++j) {
                const double e = -std::log(1.0 - rng.uniform());
                trans(r, j) = e;
                total += e;
            }
            trans.row(r) /= total;
        }
    }
    return {n_s, n_a, gamma, std::move(cost), std::move(trans)};
}

namespace {

QTable random_table(int n_s, int n_a, double lo, double hi, Rng& rng) {
    QTable q(n_s, n_a);
    for (int s = 0; s < n_s; ++s)
        for (int a = 0; a < n_a; ++a) q(s, a) = rng.uniform(lo, hi);
    return q;
}

int argmin_row(const QTable& q, int s) {
    int best = 0;
    for (int a = 1; a < q.cols(); ++a)
        if (q(s, a) < q(s, best)) best = a;
    return best;
}

}  // namespace

std::vector<PropertyReport> run_property_suite(int n_mdps, std::uint64_t seed,
                                               std::ostream* log) {
    constexpr double kTol = 1e-10;
    const Rng master(seed);

    double worst_mono_f = 0.0, worst_mono_fh = 0.0;
    double worst_contr_f = 0.0, worst_contr_fh = 0.0;
    double worst_order = 0.0;
    double worst_fp_gap = 0.0;
    double worst_contain = 0.0;
    double worst_det = 0.0;
    int n_det = 0;
    double greedy_agree_sum = 0.0;

    for (int k = 0; k < n_mdps; ++k) {
        Rng rng = master.derive(static_cast<std::uint64_t>(k));
        const int n_s = 2 + static_cast<int>(rng.uniform() * 7.0);       // 2..8
        const int n_a = 1 + static_cast<int>(rng.uniform() * 4.0);       // 1..4
        const double gamma = rng.uniform(0.5, 0.95);
        const bool deterministic = (k % 5 == 4);
        const FiniteMdp m = random_mdp(std::min(n_s, 8), std::min(n_a, 4),
                                       gamma, rng, deterministic);

        for (int t = 0; t < 100; ++t) {
            const QTable q1 = random_table(m.n_s, m.n_a, -5.0, 5.0, rng);
            const QTable bump = random_table(m.n_s, m.n_a, 0.0, 5.0, rng);
            const QTable q2 = q1 + bump;
            worst_mono_f =
                std::max(worst_mono_f, (op_f(m, q1) - op_f(m, q2)).maxCoeff());
            worst_mono_fh = std::max(
                worst_mono_fh, (op_f_hat(m, q1) - op_f_hat(m, q2)).maxCoeff());

            const QTable r1 = random_table(m.n_s, m.n_a, -5.0, 5.0, rng);
            const QTable r2 = random_table(m.n_s, m.n_a, -5.0, 5.0, rng);
            const double dist = (r1 - r2).cwiseAbs().maxCoeff();
            if (dist > 1e-8) {
                worst_contr_f = std::max(
                    worst_contr_f,
                    (op_f(m, r1) - op_f(m, r2)).cwiseAbs().maxCoeff() / dist -
                        m.gamma);
                worst_contr_fh = std::max(
                    worst_contr_fh,
                    (op_f_hat(m, r1) - op_f_hat(m, r2)).cwiseAbs().maxCoeff() /
                            dist -
                        m.gamma);
            }
            worst_order =
                std::max(worst_order, (op_f(m, r1) - op_f_hat(m, r1)).maxCoeff());
        }

        const QTable zero = QTable::Zero(m.n_s, m.n_a);
        const QTable far = QTable::Constant(m.n_s, m.n_a, 1e6);
        const QTable qs0 = fixed_point(m, op_f, zero, kTol);
        const QTable qs1 = fixed_point(m, op_f, far, kTol);
        const QTable qh0 = fixed_point(m, op_f_hat, zero, kTol);
        const QTable qh1 = fixed_point(m, op_f_hat, far, kTol);
        worst_fp_gap = std::max({worst_fp_gap,
                                 (qs0 - qs1).cwiseAbs().maxCoeff(),
                                 (qh0 - qh1).cwiseAbs().maxCoeff()});
        worst_contain = std::max(worst_contain, (qs0 - qh0).maxCoeff());
        if (deterministic) {
            ++n_det;
            worst_det = std::max(worst_det, (qs0 - qh0).cwiseAbs().maxCoeff());
        }
        int agree = 0;
        for (int s = 0; s < m.n_s; ++s)
            if (argmin_row(qs0, s) == argmin_row(qh0, s)) ++agree;
        greedy_agree_sum += static_cast<double>(agree) / m.n_s;

        if (log)
            *log << "mdp " << k << ": n_s=" << m.n_s << " n_a=" << m.n_a
                 << " gamma=" << fmt_g17(m.gamma)
                 << (deterministic ? " deterministic" : "") << "\n";
    }

    std::vector<PropertyReport> out;
    auto push = [&](const std::string& name, double worst, double thr) {
        out.push_back({name, true, worst <= thr, worst, thr, ""});
    };
    push("monotonicity_f", worst_mono_f, 1e-12);
    push("monotonicity_fhat", worst_mono_fh, 1e-12);
    push("contraction_f_minus_gamma", worst_contr_f, 1e-12);
    push("contraction_fhat_minus_gamma", worst_contr_fh, 1e-12);
    push("ordering_f_le_fhat", worst_order, 1e-12);
    push("fixed_point_uniqueness", worst_fp_gap, 2.0 * kTol);
    push("containment_qstar_le_qhat", worst_contain, 1e-10);
    push("deterministic_collapse", worst_det, 2.0 * kTol);
    PropertyReport greedy;
    greedy.property = "greedy_agreement_rate";
    greedy.asserted = false;
    greedy.pass = true;
    greedy.worst = n_mdps > 0 ? greedy_agree_sum / n_mdps : 0.0;
    greedy.threshold = 0.0;
    greedy.note = "reported only; no claim outside the LQ case";
    out.push_back(greedy);
    return out;
}

void write_report_csv(const std::vector<PropertyReport>& reports,
                      std::ostream& os) {
    os << "property,asserted,pass,worst,threshold,note\n";
    for (const auto& r : reports)
        os << r.property << ',' << (r.asserted ? 1 : 0) << ','
           << (r.pass ? 1 : 0) << ',' << fmt_g17(r.worst) << ','
           << fmt_g17(r.threshold) << ',' << r.note << '\n';
}

}  // namespace adp
