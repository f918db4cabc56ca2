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
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "adp/experiments.hpp"
#include "adp/finite_oracle.hpp"
#include "adp/lp_builder.hpp"
#include "adp/lp_solver.hpp"
#include "adp/text_io.hpp"

namespace {

struct ExpOptions {
    std::string config;
    std::uint64_t seed = 0;
    std::vector<int> constraints;
    int mc = 0;
    int reps = 0;
    std::string pairing;
    std::string out;

    CLI::Option* seed_opt = nullptr;
    CLI::Option* constraints_opt = nullptr;
    CLI::Option* mc_opt = nullptr;
    CLI::Option* reps_opt = nullptr;
    CLI::Option* pairing_opt = nullptr;
    CLI::Option* out_opt = nullptr;
};

void add_exp_options(CLI::App* sub, ExpOptions& o) {
    sub->add_option("--config", o.config, "JSON config file");
    o.seed_opt = sub->add_option("--seed", o.seed, "master seed");
    o.constraints_opt =
        sub->add_option("--constraints", o.constraints,
                        "constraint count, or comma-separated sweep list")
            ->delimiter(',');
    o.mc_opt = sub->add_option("--mc", o.mc, "Monte Carlo draws per constraint");
    o.reps_opt = sub->add_option("--reps", o.reps, "repetitions per setting");
    o.pairing_opt = sub->add_option("--pairing", o.pairing,
                                    "equal-samples | equal-rows")
                        ->check(CLI::IsMember({"equal-samples", "equal-rows"}));
    o.out_opt = sub->add_option("--out", o.out, "output directory");
}

int run_exp(int id, const ExpOptions& o) {
    adp::ExperimentConfig cfg = o.config.empty()
                                    ? adp::ExperimentConfig::defaults_for(id)
                                    : adp::load_config(o.config);
    if (cfg.experiment != id)
        throw std::runtime_error(
            "config file is for a different experiment than the subcommand");
    if (*o.seed_opt) cfg.seed = o.seed;
    if (*o.constraints_opt) cfg.n_constraints = o.constraints;
    if (*o.mc_opt) cfg.mc_draws = o.mc;
    if (*o.reps_opt) cfg.repetitions = o.reps;
    if (*o.pairing_opt) cfg.pairing = adp::pairing_from_string(o.pairing);
    if (*o.out_opt) cfg.out_dir = o.out;

    const auto records = adp::run_experiment(cfg);
    int non_optimal = 0;
    for (const auto& r : records)
        if (r.status != "optimal") ++non_optimal;
    std::cout << "experiment " << id << ": " << records.size()
              << " records written to " << cfg.out_dir;
    if (non_optimal > 0) std::cout << " (" << non_optimal << " non-optimal)";
    std::cout << "\n";
    return 0;
}

int run_verify_operators(int n_mdps, std::uint64_t seed,
                         const std::string& out) {
    const auto reports = adp::run_property_suite(n_mdps, seed, nullptr);
    bool all_pass = true;
    for (const auto& r : reports) {
        if (!r.asserted) {
            std::cout << "[INFO] " << r.property << " = "
                      << adp::fmt_g17(r.worst) << " (" << r.note << ")\n";
            continue;
        }
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.property
                  << " worst=" << adp::fmt_g17(r.worst)
                  << " threshold=" << adp::fmt_g17(r.threshold) << "\n";
        all_pass = all_pass && r.pass;
    }
    std::ofstream f(out);
    adp::write_report_csv(reports, f);
    std::cout << "report written to " << out << "\n";
    return all_pass ? 0 : 1;
}

int run_solve(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open LP file: " + path);
    const adp::LpProblem p = adp::read_lp_text(f);
    const adp::LpSolution s = adp::solve_lp(p);
    std::cout << "status " << adp::to_string(s.status) << "\n"
              << "objective " << adp::fmt_g17(s.objective) << "\n"
              << "iterations " << s.iterations << "\n"
              << "solve_time_s " << adp::fmt_g17(s.solve_time_s) << "\n";
    if (!s.diagnostic.empty()) std::cout << "note " << s.diagnostic << "\n";
    if (s.status == adp::SolveStatus::Optimal) {
        std::cout << "theta";
        for (int i = 0; i < s.theta.size(); ++i)
            std::cout << ' ' << adp::fmt_g17(s.theta(i));
        std::cout << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sampled linear programs for q-function learning and control"};
    app.require_subcommand(1);

    ExpOptions exp_opts[3];
    CLI::App* subs[3];
    subs[0] = app.add_subcommand("exp1", "LTI system, constraint-count sweep");
    subs[1] = app.add_subcommand("exp2", "random LTI systems, dimension sweep");
    subs[2] = app.add_subcommand("exp3", "cart-pole swing-stabilization");
    for (int i = 0; i < 3; ++i) add_exp_options(subs[i], exp_opts[i]);

    int mdps = 100;
    std::uint64_t vo_seed = 1;
    std::string vo_out = "operator_report.csv";
    CLI::App* vo = app.add_subcommand(
        "verify-operators", "finite-space Bellman operator property suite");
    vo->add_option("--mdps", mdps, "number of random MDPs");
    vo->add_option("--seed", vo_seed, "suite seed");
    vo->add_option("--out", vo_out, "report CSV path");

    std::string lp_path;
    CLI::App* solve = app.add_subcommand("solve", "solve an exported LP file");
    solve->add_option("--lp", lp_path, "LP text file")->required();

    try {
        app.parse(argc, argv);
        for (int i = 0; i < 3; ++i)
            if (subs[i]->parsed()) return run_exp(i + 1, exp_opts[i]);
        if (vo->parsed()) return run_verify_operators(mdps, vo_seed, vo_out);
        if (solve->parsed()) return run_solve(lp_path);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
