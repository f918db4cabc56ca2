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
#include "adp/experiments.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <utility>

#include "adp/lp_builder.hpp"
#include "adp/lp_solver.hpp"
#include "adp/text_io.hpp"
#include "json.hpp"

namespace adp {

const char* to_string(PairingMode m) {
    return m == PairingMode::EqualSamples ? "equal-samples" : "equal-rows";
}

PairingMode pairing_from_string(const std::string& s) {
    if (s == "equal-samples") return PairingMode::EqualSamples;
    if (s == "equal-rows") return PairingMode::EqualRows;
    throw std::invalid_argument("unknown pairing mode: " + s);
}

namespace {

Eigen::MatrixXd diag_matrix(const std::vector<double>& d) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

Eigen::VectorXd const_vector(int n, double v) {
    return Eigen::VectorXd::Constant(n, v);
}

}  // namespace

ExperimentConfig ExperimentConfig::defaults_for(int experiment) {
    ExperimentConfig cfg;
    cfg.experiment = experiment;
    switch (experiment) {
        case 1:
            cfg.gamma = 0.95;
            cfg.L = diag_matrix({1.0, 1.0, 1e-2});
            cfg.C = diag_matrix({1.0, 1.0, 1e-1});
            cfg.state_lo = const_vector(2, -3.0);
            cfg.state_hi = const_vector(2, 3.0);
            cfg.input_lo = const_vector(1, -1.0);
            cfg.input_hi = const_vector(1, 1.0);
            cfg.noise_cov = 1e-6 * Eigen::MatrixXd::Identity(2, 2);
            cfg.A = Eigen::MatrixXd{{1.0, 0.1}, {0.5, -0.5}};
            cfg.B = Eigen::MatrixXd{{1.0}, {0.5}};
            cfg.n_constraints = {1250, 2500, 5000, 10000, 20000};
            cfg.mc_draws = 100;
            cfg.repetitions = 10;
            break;
        case 2:
            cfg.gamma = 0.95;
            cfg.input_lo = const_vector(2, -3.0);
            cfg.input_hi = const_vector(2, 3.0);
            cfg.n_constraints = {50000};
            cfg.n_x_list = {2, 3, 4, 5, 6, 7, 8, 9, 10};
            cfg.mc_draws = 100;
            cfg.repetitions = 10;
            cfg.exp2_l_input = 1e-4;
            cfg.exp2_c_input = 0.8;
            cfg.exp2_noise = 1e-4;
            cfg.exp2_state_half = 0.5;
            break;
        case 3:
            cfg.gamma = 0.99;
            cfg.L = diag_matrix({1.0, 1.0, 1e2, 10.0, 1e-3});
            cfg.C = diag_matrix({1.0, 1.0, 1.0, 1.0, 0.8});
            cfg.state_lo = Eigen::VectorXd{{-3.0, -3.0, -1.0, -1.0}};
            cfg.state_hi = Eigen::VectorXd{{3.0, 3.0, 1.0, 1.0}};
            cfg.input_lo = const_vector(1, -100.0);
            cfg.input_hi = const_vector(1, 100.0);
            cfg.init_lo = Eigen::VectorXd{{-1.0, -1.0, -0.5, -0.5}};
            cfg.init_hi = Eigen::VectorXd{{1.0, 1.0, 0.5, 0.5}};
            cfg.noise_cov = 1e-6 * Eigen::MatrixXd::Identity(4, 4);
            cfg.n_constraints = {10000};
            cfg.mc_draws = 1;
            cfg.repetitions = 1;
            cfg.n_rollouts = 10;
            break;
        default:
            throw std::invalid_argument("unknown experiment id");
    }
    return cfg;
}

namespace {

Eigen::VectorXd json_vector(const nlohmann::json& j) {
    if (!j.is_array()) throw std::runtime_error("config: expected an array");
    Eigen::VectorXd v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) v(i) = j[i].get<double>();
    return v;
}

// Array of arrays = full matrix; flat array = diagonal.
Eigen::MatrixXd json_matrix(const nlohmann::json& j) {
    if (!j.is_array() || j.empty())
        throw std::runtime_error("config: expected a nonempty array");
    if (!j[0].is_array()) {
        const Eigen::VectorXd d = json_vector(j);
        return d.asDiagonal();
    }
    const std::size_t rows = j.size(), cols = j[0].size();
    Eigen::MatrixXd m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array() || j[r].size() != cols)
            throw std::runtime_error("config: ragged matrix");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = j[r][c].get<double>();
    }
    return m;
}

}  // namespace

ExperimentConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open config file: " + path);
    nlohmann::json j;
    try {
        f >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("config parse error: " + std::string(e.what()));
    }
    ExperimentConfig cfg = ExperimentConfig::defaults_for(j.value("experiment", 1));
    try {
        if (j.contains("gamma")) cfg.gamma = j["gamma"].get<double>();
        if (j.contains("L")) cfg.L = json_matrix(j["L"]);
        if (j.contains("C")) cfg.C = json_matrix(j["C"]);
        if (j.contains("A")) cfg.A = json_matrix(j["A"]);
        if (j.contains("B")) cfg.B = json_matrix(j["B"]);
        if (j.contains("noise_cov")) cfg.noise_cov = json_matrix(j["noise_cov"]);
        if (j.contains("state_lo")) cfg.state_lo = json_vector(j["state_lo"]);
        if (j.contains("state_hi")) cfg.state_hi = json_vector(j["state_hi"]);
        if (j.contains("input_lo")) cfg.input_lo = json_vector(j["input_lo"]);
        if (j.contains("input_hi")) cfg.input_hi = json_vector(j["input_hi"]);
        if (j.contains("init_lo")) cfg.init_lo = json_vector(j["init_lo"]);
        if (j.contains("init_hi")) cfg.init_hi = json_vector(j["init_hi"]);
        if (j.contains("n_constraints")) {
            cfg.n_constraints.clear();
            if (j["n_constraints"].is_array())
                for (const auto& v : j["n_constraints"])
                    cfg.n_constraints.push_back(v.get<int>());
            else
                cfg.n_constraints.push_back(j["n_constraints"].get<int>());
        }
        if (j.contains("n_x_list")) {
            cfg.n_x_list.clear();
            for (const auto& v : j["n_x_list"])
                cfg.n_x_list.push_back(v.get<int>());
        }
        if (j.contains("mc_draws")) cfg.mc_draws = j["mc_draws"].get<int>();
        if (j.contains("repetitions"))
            cfg.repetitions = j["repetitions"].get<int>();
        if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("pairing"))
            cfg.pairing = pairing_from_string(j["pairing"].get<std::string>());
        if (j.contains("out_dir")) cfg.out_dir = j["out_dir"].get<std::string>();
        if (j.contains("n_rollouts")) cfg.n_rollouts = j["n_rollouts"].get<int>();
        if (j.contains("exp2_l_input"))
            cfg.exp2_l_input = j["exp2_l_input"].get<double>();
        if (j.contains("exp2_c_input"))
            cfg.exp2_c_input = j["exp2_c_input"].get<double>();
        if (j.contains("exp2_noise")) cfg.exp2_noise = j["exp2_noise"].get<double>();
        if (j.contains("exp2_state_half"))
            cfg.exp2_state_half = j["exp2_state_half"].get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("config field error: " + std::string(e.what()));
    }
    return cfg;
}

double optimality_gap(const QuadraticQ& qhat, const RiccatiSolution& truth) {
    if (qhat.Qmat.rows() != truth.Qstar.rows())
        throw std::invalid_argument("optimality_gap: dimension mismatch");
    return (qhat.Qmat - truth.Qstar).norm() / truth.Qstar.norm();
}

int truncation_horizon(double gamma, double tail) {
    if (!(gamma > 0.0 && gamma < 1.0))
        throw std::invalid_argument("truncation_horizon: gamma outside (0,1)");
    int h = static_cast<int>(std::ceil(std::log(tail) / std::log(gamma)));
    if (h < 1) h = 1;
    while (h > 1 && std::pow(gamma, h - 1) <= tail) --h;
    while (std::pow(gamma, h) > tail) ++h;
    return h;
}

RolloutResult rollout_cost(const TransitionSource& source,
                           const LinearPolicy& policy,
                           const BoxDistribution& nu0, double gamma,
                           int horizon, int n_rollouts, const Rng& rng) {
    if (n_rollouts < 1) throw std::invalid_argument("rollout_cost: n_rollouts < 1");
    if (std::pow(gamma, horizon) > 1e-6)
        throw std::invalid_argument("rollout_cost: horizon too short for gamma");
    const int n_x = source.state_dim();
    const int n_u = source.input_dim();
    constexpr double kDivergence = 1e6;

    RolloutResult out;
    std::vector<double> kept;
    for (int j = 0; j < n_rollouts; ++j) {
        Rng rj = rng.derive(static_cast<std::uint64_t>(j));
        Eigen::VectorXd x = nu0.sample(rj);
        Eigen::MatrixXd st(horizon + 1, n_x);
        Eigen::MatrixXd in(horizon, n_u);
        st.row(0) = x.transpose();
        double cost = 0.0, disc = 1.0;
        bool diverged = false;
        int steps = 0;
        for (int k = 0; k < horizon; ++k) {
            const Eigen::VectorXd u = policy.action(x);
            auto [l, xp] = source.query(x, u, rj);
            cost += disc * l;
            disc *= gamma;
            in.row(k) = u.transpose();
            x = xp;
            st.row(k + 1) = x.transpose();
            steps = k + 1;
            if (x.cwiseAbs().maxCoeff() > kDivergence) {
                diverged = true;
                break;
            }
        }
        st.conservativeResize(steps + 1, n_x);
        in.conservativeResize(steps, n_u);
        out.states.push_back(std::move(st));
        out.inputs.push_back(std::move(in));
        out.diverged.push_back(diverged);
        out.costs.push_back(diverged ? std::numeric_limits<double>::quiet_NaN()
                                     : cost);
        if (!diverged) kept.push_back(cost);
    }
    out.n_diverged = n_rollouts - static_cast<int>(kept.size());
    if (!kept.empty()) {
        double mean = 0.0;
        for (double c : kept) mean += c;
        mean /= static_cast<double>(kept.size());
        out.mean_cost = mean;
        if (kept.size() > 1) {
            double var = 0.0;
            for (double c : kept) var += (c - mean) * (c - mean);
            var /= static_cast<double>(kept.size() - 1);
            out.std_err = std::sqrt(var / static_cast<double>(kept.size()));
        } else {
            out.std_err = 0.0;
        }
    }
    return out;
}

namespace {

// Builds the record for one solved program. truth may be null (experiment 3,
// where no quadratic ground truth exists); e_target is the offset the
// method should recover (e*+delta_e for the relaxed program, e* otherwise).
RunRecord make_record(const std::string& method, int run, int n_constr, int n_x,
                      int n_u, const LpSolution& sol,
                      const RiccatiSolution* truth, double e_target) {
    RunRecord rec;
    rec.method = method;
    rec.run = run;
    rec.n_constraints = n_constr;
    rec.n_x = n_x;
    rec.solve_time_s = sol.solve_time_s;
    rec.status = to_string(sol.status);
    if (sol.status == SolveStatus::Optimal) {
        const ThetaLayout layout(n_x + n_u);
        auto [Qmat, e] = unflatten(sol.theta.head(layout.n_coeffs()), n_x + n_u);
        const QuadraticQ q{Qmat, e, n_x, n_u};
        rec.e = e;
        if (truth) {
            rec.gap = optimality_gap(q, *truth);
            rec.e_error = std::abs(e - e_target);
        }
        try {
            rec.K = extract_policy(q).K;
        } catch (const NonExtractableError&) {
            // Leave K empty; the status stays whatever the solver reported.
        }
    }
    return rec;
}

Dataset pairing_subset(const Dataset& data, PairingMode mode) {
    if (mode == PairingMode::EqualSamples) return data;
    Dataset half = data;
    half.samples.resize((data.samples.size() + 1) / 2);
    return half;
}

void write_meta_json(const ExperimentConfig& cfg, const std::string& path) {
    nlohmann::json j;
    j["experiment"] = cfg.experiment;
    j["gamma"] = cfg.gamma;
    j["seed"] = cfg.seed;
    j["n_constraints"] = cfg.n_constraints;
    j["mc_draws"] = cfg.mc_draws;
    j["repetitions"] = cfg.repetitions;
    j["pairing"] = to_string(cfg.pairing);
    if (cfg.experiment == 2) j["n_x_list"] = cfg.n_x_list;
    if (cfg.experiment == 3) j["n_rollouts"] = cfg.n_rollouts;
    // Conventions that are choices of this artifact, not forced by theory.
    j["notes"]["gap_metric"] =
        "debiased relative Frobenius distance ||Q - Q*||_F / ||Q*||_F; "
        "the constant offset is excluded and reported as e_error";
    j["notes"]["e_error"] =
        "relaxed program offset compared to e*+delta_e, classical to e*";
    j["notes"]["truncation_horizon"] =
        "rollouts stop at the smallest H with gamma^H <= 1e-6";
    std::ofstream f(path);
    f << j.dump(2) << '\n';
}

std::vector<RunRecord> run_exp1(const ExperimentConfig& cfg) {
    const int n_x = 2, n_u = 1;
    const StageCost L(cfg.L, n_x, n_u);
    const LtiSystem sys(cfg.A, cfg.B, cfg.noise_cov);
    const LtiSource source(sys, L);
    const Eigen::MatrixXd P = solve_dare(cfg.A, cfg.B, L, cfg.gamma);
    const RiccatiSolution truth =
        build_qstar(cfg.A, cfg.B, L, cfg.gamma, P, cfg.noise_cov);
    const ObjectiveMoments C{cfg.C};
    const BoxDistribution state_dist(cfg.state_lo, cfg.state_hi);
    const BoxDistribution input_dist(cfg.input_lo, cfg.input_hi);
    const Rng master(cfg.seed);

    std::vector<RunRecord> records;
    for (std::size_t i = 0; i < cfg.n_constraints.size(); ++i) {
        const int n = cfg.n_constraints[i];
        for (int r = 0; r < cfg.repetitions; ++r) {
            Rng rng = master.derive((static_cast<std::uint64_t>(i) << 20) + r);
            const Dataset data = sample_dataset(source, state_dist, input_dist,
                                                n, cfg.mc_draws, rng);
            const LpSolution rlp_sol = solve_lp(build_rlp(data, cfg.gamma, C));
            records.push_back(make_record("RLP", r, n, n_x, n_u, rlp_sol,
                                          &truth, truth.e_star + truth.delta_e));
            const Dataset lp_data = pairing_subset(data, cfg.pairing);
            const LpSolution lp_sol = solve_lp(build_lp(lp_data, cfg.gamma, C));
            records.push_back(make_record("LP", r, n, n_x, n_u, lp_sol, &truth,
                                          truth.e_star));
        }
    }
    std::ofstream f(std::filesystem::path(cfg.out_dir) / "exp1.csv");
    write_exp1_csv(records, f);
    write_meta_json(cfg, (std::filesystem::path(cfg.out_dir) / "exp1_meta.json")
                             .string());
    return records;
}

std::vector<RunRecord> run_exp2(const ExperimentConfig& cfg) {
    const int n_u = 2;
    const int n = cfg.n_constraints.front();
    const BoxDistribution input_dist(cfg.input_lo, cfg.input_hi);
    const Rng master(cfg.seed);

    std::vector<RunRecord> records;
    for (int n_x : cfg.n_x_list) {
        Rng sys_rng = master.derive(static_cast<std::uint64_t>(n_x));
        const LtiSystem drawn = random_lti(n_x, sys_rng);
        const Eigen::MatrixXd Sigma =
            cfg.exp2_noise * Eigen::MatrixXd::Identity(n_x, n_x);
        const LtiSystem sys(drawn.A, drawn.B, Sigma);

        Eigen::MatrixXd Lm = Eigen::MatrixXd::Identity(n_x + n_u, n_x + n_u);
        Lm.bottomRightCorner(n_u, n_u) *= cfg.exp2_l_input;
        Eigen::MatrixXd Cm = Eigen::MatrixXd::Identity(n_x + n_u, n_x + n_u);
        Cm.bottomRightCorner(n_u, n_u) *= cfg.exp2_c_input;
        const StageCost L(Lm, n_x, n_u);
        const ObjectiveMoments C{Cm};
        const LtiSource source(sys, L);
        const BoxDistribution state_dist = BoxDistribution::symmetric(
            n_x, cfg.exp2_state_half);
        const Eigen::MatrixXd P = solve_dare(sys.A, sys.B, L, cfg.gamma);
        const RiccatiSolution truth =
            build_qstar(sys.A, sys.B, L, cfg.gamma, P, Sigma);

        for (int r = 0; r < cfg.repetitions; ++r) {
            Rng rng = master.derive((static_cast<std::uint64_t>(n_x) << 20) + r);
            const Dataset data = sample_dataset(source, state_dist, input_dist,
                                                n, cfg.mc_draws, rng);
            const LpSolution rlp_sol = solve_lp(build_rlp(data, cfg.gamma, C));
            records.push_back(make_record("RLP", r, n, n_x, n_u, rlp_sol,
                                          &truth, truth.e_star + truth.delta_e));
            const Dataset lp_data = pairing_subset(data, cfg.pairing);
            const LpSolution lp_sol = solve_lp(build_lp(lp_data, cfg.gamma, C));
            records.push_back(make_record("LP", r, n, n_x, n_u, lp_sol, &truth,
                                          truth.e_star));
        }
    }
    std::ofstream f(std::filesystem::path(cfg.out_dir) / "exp2.csv");
    write_exp2_csv(records, f);
    write_meta_json(cfg, (std::filesystem::path(cfg.out_dir) / "exp2_meta.json")
                             .string());
    return records;
}

std::vector<RunRecord> run_exp3(const ExperimentConfig& cfg) {
    const int n_x = 4, n_u = 1;
    const StageCost L(cfg.L, n_x, n_u);
    const CartPole cp(4.0, 2.0, 1.0, 9.8, 1e-3, cfg.noise_cov);
    const CartPoleSource source(cp, L);
    const ObjectiveMoments C{cfg.C};
    const BoxDistribution state_dist(cfg.state_lo, cfg.state_hi);
    const BoxDistribution input_dist(cfg.input_lo, cfg.input_hi);
    const BoxDistribution nu0(cfg.init_lo, cfg.init_hi);
    const int n = cfg.n_constraints.front();
    const Rng master(cfg.seed);

    Rng data_rng = master.derive(7001);
    const Dataset data =
        sample_dataset(source, state_dist, input_dist, n, cfg.mc_draws, data_rng);
    const LpSolution rlp_sol = solve_lp(build_rlp(data, cfg.gamma, C));
    const Dataset lp_data = pairing_subset(data, cfg.pairing);
    const LpSolution lp_sol = solve_lp(build_lp(lp_data, cfg.gamma, C));

    // LQR baseline from the linearization about the upright equilibrium.
    const auto t0 = std::chrono::steady_clock::now();
    const LtiSystem lin = linearize_cartpole(cp);
    const Eigen::MatrixXd P = solve_dare(lin.A, lin.B, L, cfg.gamma);
    const RiccatiSolution lqr =
        build_qstar(lin.A, lin.B, L, cfg.gamma, P, cfg.noise_cov);
    const double lqr_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();

    std::vector<RunRecord> records;
    records.push_back(
        make_record("RLP", 0, n, n_x, n_u, rlp_sol, nullptr, 0.0));
    records.push_back(make_record("LP", 0, n, n_x, n_u, lp_sol, nullptr, 0.0));
    RunRecord lqr_rec;
    lqr_rec.method = "LQR";
    lqr_rec.n_constraints = 0;
    lqr_rec.n_x = n_x;
    lqr_rec.solve_time_s = lqr_time;
    lqr_rec.status = "optimal";
    lqr_rec.K = lqr.K;
    lqr_rec.e = lqr.e_star;
    records.push_back(lqr_rec);

    const int horizon = truncation_horizon(cfg.gamma);
    const Rng roll_rng = master.derive(7002);
    std::vector<Exp3MethodResult> rows;
    const std::vector<std::string> order = {"LP", "RLP", "LQR"};
    for (const auto& method : order) {
        Exp3MethodResult row;
        row.method = method;
        const RunRecord* rec = nullptr;
        for (const auto& r : records)
            if (r.method == method) rec = &r;
        row.solve_time_s = rec->solve_time_s;
        if (rec->K.size() > 0) {
            const LinearPolicy pol{rec->K};
            row.rollouts = rollout_cost(source, pol, nu0, cfg.gamma, horizon,
                                        cfg.n_rollouts, roll_rng);
        } else {
            // No extractable policy: report every rollout as lost.
            row.rollouts.n_diverged = cfg.n_rollouts;
        }
        rows.push_back(std::move(row));
    }

    std::ofstream fs(std::filesystem::path(cfg.out_dir) / "exp3_summary.csv");
    write_exp3_summary_csv(rows, fs);
    std::ofstream ft(std::filesystem::path(cfg.out_dir) / "exp3_traj.csv");
    write_exp3_traj_csv(rows, ft);
    write_meta_json(cfg, (std::filesystem::path(cfg.out_dir) / "exp3_meta.json")
                             .string());
    return records;
}

}  // namespace

std::vector<RunRecord> run_experiment(const ExperimentConfig& cfg) {
    if (!(cfg.gamma > 0.0 && cfg.gamma < 1.0))
        throw std::invalid_argument("config: gamma outside (0,1)");
    if (cfg.n_constraints.empty())
        throw std::invalid_argument("config: empty constraint list");
    for (int n : cfg.n_constraints)
        if (n < 1) throw std::invalid_argument("config: nonpositive constraint count");
    if (cfg.mc_draws < 1) throw std::invalid_argument("config: mc_draws < 1");
    if (cfg.repetitions < 1)
        throw std::invalid_argument("config: repetitions < 1");
    std::filesystem::create_directories(cfg.out_dir);
    switch (cfg.experiment) {
        case 1:
            return run_exp1(cfg);
        case 2:
            return run_exp2(cfg);
        case 3:
            return run_exp3(cfg);
        default:
            throw std::invalid_argument("config: unknown experiment id");
    }
}

void write_exp1_csv(const std::vector<RunRecord>& records, std::ostream& os) {
    os << "method,run,n_constraints,gap,e_error,solve_time_s,status\n";
    for (const auto& r : records)
        os << r.method << ',' << r.run << ',' << r.n_constraints << ','
           << fmt_g17(r.gap) << ',' << fmt_g17(r.e_error) << ','
           << fmt_g17(r.solve_time_s) << ',' << r.status << '\n';
}

void write_exp2_csv(const std::vector<RunRecord>& records, std::ostream& os) {
    os << "method,run,n_x,gap,e_error,solve_time_s,status\n";
    for (const auto& r : records)
        os << r.method << ',' << r.run << ',' << r.n_x << ',' << fmt_g17(r.gap)
           << ',' << fmt_g17(r.e_error) << ',' << fmt_g17(r.solve_time_s)
           << ',' << r.status << '\n';
}

void write_exp3_summary_csv(const std::vector<Exp3MethodResult>& rows,
                            std::ostream& os) {
    os << "method,mean_cost,std_err,n_diverged,solve_time_s\n";
    for (const auto& row : rows)
        os << row.method << ',' << fmt_g17(row.rollouts.mean_cost) << ','
           << fmt_g17(row.rollouts.std_err) << ',' << row.rollouts.n_diverged
           << ',' << fmt_g17(row.solve_time_s) << '\n';
}

void write_exp3_traj_csv(const std::vector<Exp3MethodResult>& rows,
                         std::ostream& os) {
    os << "method,rollout,t,p,pdot,theta,thetadot,u\n";
    for (const auto& row : rows) {
        for (std::size_t j = 0; j < row.rollouts.states.size(); ++j) {
            const Eigen::MatrixXd& st = row.rollouts.states[j];
            const Eigen::MatrixXd& in = row.rollouts.inputs[j];
            for (int t = 0; t < in.rows(); ++t)
                os << row.method << ',' << j << ',' << t << ','
                   << fmt_g17(st(t, 0)) << ',' << fmt_g17(st(t, 1)) << ','
                   << fmt_g17(st(t, 2)) << ',' << fmt_g17(st(t, 3)) << ','
                   << fmt_g17(in(t, 0)) << '\n';
        }
    }
}

}  // namespace adp
