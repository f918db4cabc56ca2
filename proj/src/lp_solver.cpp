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
#include "adp/lp_solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "adp/kernels.hpp"

namespace adp {

namespace {

using Eigen::VectorXd;

template <typename T>
using Arr = Eigen::Array<T, Eigen::Dynamic, 1>;
template <typename T>
using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <typename T>
using Vec = Eigen::Matrix<T, Eigen::Dynamic, 1>;
template <typename T>
using RowMat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

/// Precision-tied solver constants.  The caps and floors track the unit
/// roundoff of the working scalar: the dual cap and the diagonal shift bound
/// the condition number the Cholesky factorization has to survive, and the
/// refinement / step floors mark where further progress is pure noise.
template <typename T>
struct Knobs;
template <>
struct Knobs<double> {
    static constexpr double dual_cap = 1e16;
    static constexpr double diag_reg = 1e-12;
    static constexpr double refine_stop = 1e-14;
    static constexpr double step_floor = 1e-14;
};
template <>
struct Knobs<long double> {
    static constexpr long double dual_cap = 1e19L;
    static constexpr long double diag_reg = 1e-15L;
    static constexpr long double refine_stop = 1e-17L;
    static constexpr long double step_floor = 1e-16L;
};

/// Largest alpha in (0,1] with v + alpha*dv >= (1-frac legroom); standard
/// fraction-to-the-boundary rule.
template <typename T>
T step_len(const Arr<T>& v, const Arr<T>& dv, T frac) {
    T a = std::numeric_limits<T>::infinity();
    for (int i = 0; i < v.size(); ++i)
        if (dv(i) < T(0)) a = std::min(a, -v(i) / dv(i));
    if (a == std::numeric_limits<T>::infinity()) return T(1);
    if (!std::isfinite(a)) return T(0);
    return std::min(T(1), frac * a);
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    }
};

/// Lawson-Hanson nonnegative least squares: min |A z - b| over z >= 0.
/// A has few rows here (one per LP variable), so the passive set stays
/// small and every inner solve is a tiny dense QR.
template <typename T>
Vec<T> nnls_lh(const Mat<T>& A, const Vec<T>& b) {
    const int k = static_cast<int>(A.cols());
    Vec<T> z = Vec<T>::Zero(k);
    std::vector<int> passive;
    std::vector<char> in_passive(k, 0);
    const T w_tol = T(1e-12) * (T(1) + b.template lpNorm<Eigen::Infinity>());

    auto solve_passive = [&]() -> Vec<T> {
        Mat<T> Ap(A.rows(), passive.size());
        for (std::size_t j = 0; j < passive.size(); ++j)
            Ap.col(j) = A.col(passive[j]);
        return Ap.colPivHouseholderQr().solve(b);
    };

    for (int outer = 0; outer < 200; ++outer) {
        const Vec<T> w = A.transpose() * (b - A * z);
        int enter = -1;
        T w_max = w_tol;
        for (int j = 0; j < k; ++j)
            if (!in_passive[j] && w(j) > w_max) {
                w_max = w(j);
                enter = j;
            }
        if (enter < 0) break;
        passive.push_back(enter);
        in_passive[enter] = 1;
        for (int inner = 0; inner < 50; ++inner) {
            const Vec<T> t = solve_passive();
            T t_min = std::numeric_limits<T>::infinity();
            for (Eigen::Index j = 0; j < t.size(); ++j) t_min = std::min(t_min, t(j));
            if (t_min > T(0)) {
                for (std::size_t j = 0; j < passive.size(); ++j)
                    z(passive[j]) = t(j);
                break;
            }
            // Blocking step: move toward t until the first passive
            // coordinate hits zero, then drop it.
            T alpha = T(1);
            for (std::size_t j = 0; j < passive.size(); ++j)
                if (t(j) <= T(0)) {
                    const T zj = z(passive[j]);
                    alpha = std::min(alpha, zj / (zj - t(j)));
                }
            for (std::size_t j = 0; j < passive.size(); ++j) {
                const int col = passive[j];
                z(col) += alpha * (t(j) - z(col));
            }
            std::vector<int> kept;
            for (int col : passive) {
                if (z(col) <= T(0)) {
                    z(col) = T(0);
                    in_passive[col] = 0;
                } else {
                    kept.push_back(col);
                }
            }
            passive = std::move(kept);
            if (passive.empty()) break;
        }
    }
    return z;
}

/// One full interior-point attempt ladder in scalar type T: two Newton
/// refinement schedules, each followed by an active-set polish of a stalled
/// endgame.  Instantiated for double (the fast path, using the SIMD kernels)
/// and long double (the escalation path for endgames that stall below the
/// reach of double normal equations).
template <typename T>
LpSolution solve_ipm(const LpProblem& p, const SolverSettings& set,
                     const Timer& timer) {
    constexpr bool kNative = std::is_same_v<T, double>;
    const int m = p.n_rows();
    const int n = p.n_vars();
    const auto& kern = kernels::active();
    const T tol = static_cast<T>(set.feas_tol);
    const T gap_tol = static_cast<T>(set.gap_tol);

    // Ruiz equilibration: iterate square-root max-norm scaling of rows and
    // columns, then normalize h and c once more so the scaled data is O(1).
    RowMat<T> Gs = p.G.template cast<T>();
    Arr<T> rsc = Arr<T>::Ones(m);
    Arr<T> csc = Arr<T>::Ones(n);
    for (int pass = 0; pass < 10; ++pass) {
        Arr<T> rn = Gs.cwiseAbs().rowwise().maxCoeff().array().max(T(1e-12)).sqrt();
        Gs.array().colwise() /= rn;
        rsc *= rn;
        Arr<T> cn =
            Gs.cwiseAbs().colwise().maxCoeff().transpose().array().max(T(1e-12)).sqrt();
        Gs.array().rowwise() /= cn.transpose();
        csc *= cn;
    }
    Arr<T> hs = p.h.template cast<T>().array() / rsc;
    Arr<T> cs = p.c_obj.template cast<T>().array() / csc;
    const T kh = std::max(T(1), hs.abs().maxCoeff());
    hs /= kh;
    const T kc = std::max(T(1), cs.abs().maxCoeff());
    cs /= kc;
    // original theta = (x / csc) * kh ; original duals = (y / rsc) * kc

    const T hs_norm = T(1) + hs.abs().maxCoeff();
    const T cs_norm = T(1) + cs.abs().maxCoeff();

    LpSolution best;
    best.status = SolveStatus::IterationLimit;
    best.objective = kNan;
    T best_err = std::numeric_limits<T>::infinity();
    Arr<T> best_xs;
    // Primal iterate at the abort point.  Its duals are usually polluted,
    // but its complementarity is far smaller than the best iterate's, so it
    // locates the optimal face more sharply for the polish below.
    Arr<T> stall_xs;

    // Work buffers; the scaled-matrix products go through the SIMD kernels
    // in the native instantiation and through Eigen otherwise.
    Vec<T> tmp_m(m), tmp_n(n);
    VectorXd fark_n(n), ray_m(m);
    auto gs_mul = [&](const Arr<T>& v) -> Arr<T> {
        if constexpr (kNative) {
            kern.matvec(Gs.data(), m, n, v.matrix().eval().data(), tmp_m.data());
        } else {
            tmp_m.noalias() = Gs * v.matrix();
        }
        return tmp_m.array();
    };
    auto gs_tmul = [&](const Arr<T>& v) -> Arr<T> {
        if constexpr (kNative) {
            kern.matvec_t(Gs.data(), m, n, v.matrix().eval().data(), tmp_n.data());
        } else {
            tmp_n.noalias() = Gs.transpose() * v.matrix();
        }
        return tmp_n.array();
    };

    // Endgame refinement schedule for the Newton solves.  The diagonal shift
    // in M and the scaling d near the dual cap leak real error into Gs' dy
    // once a few multipliers blow up, and no single schedule recovers every
    // degenerate endgame: a fixed two-round polish and a run-to-stagnation
    // polish each rescue instances the other stalls on.  The solve is
    // attempted with the first schedule and retried from scratch with the
    // second on a stall, keeping the best iterate seen across both.
    struct Refine {
        int rounds;
        bool until_stagnation;
    };
    static constexpr Refine kSchedules[] = {{2, false}, {10, true}};

    auto run = [&](const Refine& pol) -> LpSolution {
        Arr<T> x = Arr<T>::Zero(n);
        Arr<T> s = hs.max(T(1));
        Arr<T> y = Arr<T>::Ones(m);

        Eigen::LLT<Mat<T>> llt;
        Arr<T> d(m);

        // One Newton solve on the current factorization, with iterative
        // refinement against the unreduced KKT equations:
        //   Gs dx + ds = -rp ;  Gs' dy = -rd ;  S dy + Y ds = v.
        // The refinement residuals are accumulated in extended precision:
        // late in the solve the direction components span ~12 orders of
        // magnitude and working-precision accumulation bottoms out above the
        // level the corrector needs.
        auto newton = [&](const Arr<T>& rp, const Arr<T>& rd, const Arr<T>& v,
                          Arr<T>& dx, Arr<T>& ds, Arr<T>& dy) {
            Arr<T> w = v / s + d * rp;
            dx = llt.solve((-rd - gs_tmul(w)).matrix()).array();
            Arr<T> gdx = gs_mul(dx);
            ds = -rp - gdx;
            dy = w + d * gdx;
            Arr<T> e1(m), e2(n), e3(m);
            std::vector<long double> acc2(n);
            T prev = std::numeric_limits<T>::infinity();
            for (int r = 0; r < pol.rounds; ++r) {
                const T* g = Gs.data();
                for (int j = 0; j < n; ++j) acc2[j] = -static_cast<long double>(rd(j));
                for (int i = 0; i < m; ++i) {
                    const T* row = g + static_cast<std::size_t>(i) * n;
                    long double a1 = -static_cast<long double>(rp(i)) -
                                     static_cast<long double>(ds(i));
                    const long double dyi = dy(i);
                    for (int j = 0; j < n; ++j) {
                        a1 -= static_cast<long double>(row[j]) *
                              static_cast<long double>(dx(j));
                        acc2[j] -= static_cast<long double>(row[j]) * dyi;
                    }
                    e1(i) = static_cast<T>(a1);
                    e3(i) = static_cast<T>(
                        static_cast<long double>(v(i)) -
                        static_cast<long double>(s(i)) * dyi -
                        static_cast<long double>(y(i)) *
                            static_cast<long double>(ds(i)));
                }
                for (int j = 0; j < n; ++j) e2(j) = static_cast<T>(acc2[j]);
                const T e_norm = std::max(
                    {e1.abs().maxCoeff(), e2.abs().maxCoeff(), e3.abs().maxCoeff()});
                if (e_norm < Knobs<T>::refine_stop) break;
                if (pol.until_stagnation && e_norm >= prev) break;
                prev = e_norm;
                const Arr<T> w2 = e3 / s + d * e1;
                const Arr<T> ddx = llt.solve((e2 - gs_tmul(w2)).matrix()).array();
                const Arr<T> gddx = gs_mul(ddx);
                dx += ddx;
                ds += e1 - gddx;
                dy += w2 + d * gddx;
            }
        };

        auto finish = [&](LpSolution out) {
            out.solve_time_s = timer.seconds();
            return out;
        };
        auto finish_best = [&](int iters, const char* note) {
            stall_xs = x;
            LpSolution out = best;
            out.status = SolveStatus::IterationLimit;
            out.theta.resize(0);
            out.duals.resize(0);
            out.iterations = iters;
            out.diagnostic = note;
            return finish(std::move(out));
        };

        Mat<T> M(n, n);
        for (int it = 0; it < set.max_iter; ++it) {
            const Arr<T> rp = gs_mul(x) + s - hs;
            const Arr<T> rd = gs_tmul(y) - cs;
            const T mu = (s * y).sum() / m;
            const VectorXd xo = ((x / csc) * kh).matrix().template cast<double>();
            const VectorXd yo = ((y / rsc) * kc).matrix().template cast<double>();
            const T pres = rp.abs().maxCoeff() / hs_norm;
            const T dres = rd.abs().maxCoeff() / cs_norm;
            const T pobj_s = (cs * x).sum();
            const T dobj_s = (hs * y).sum();
            const T gap = std::abs(pobj_s - dobj_s) / (T(1) + std::abs(pobj_s));
            const double pobj = p.c_obj.dot(xo);
            if (set.verbose)
                std::printf(
                    "  it %3d mu=%9.2e pres=%9.2e dres=%9.2e gap=%9.2e obj=%.9e\n",
                    it, static_cast<double>(mu), static_cast<double>(pres),
                    static_cast<double>(dres), static_cast<double>(gap), pobj);

            const T err = std::max({pres, dres, gap});
            if (err < best_err) {
                best_err = err;
                best.theta = xo;
                best.objective = pobj;
                best.duals = yo;
                best.iterations = it;
                best_xs = x;
            }
            bool accept = pres <= tol && dres <= tol && gap <= gap_tol;
            const char* accept_note = "";
            // Degenerate programs push a few multipliers very large while
            // complementarity keeps shrinking; the computed dual residual and
            // objective gap then bottom out at the roundoff of the unsigned
            // sums |Gs|'|y| and |hs|'|y| + |cs|'|x|. Once complementarity
            // certifies the gap, accept residuals that sit at that floor
            // (capped), which is the precision the working scalar can express
            // for those multipliers.
            if (!accept && pres <= tol &&
                mu <= T(1e-10) * (T(1) + std::abs(pobj_s))) {
                constexpr T kMassEps = T(64) * std::numeric_limits<T>::epsilon();
                const T dmass =
                    (Gs.cwiseAbs().transpose() * y.abs().matrix()).maxCoeff();
                const T gmass =
                    (hs.abs() * y.abs()).sum() + (cs.abs() * x.abs()).sum();
                const T dres_floor =
                    std::min(kMassEps * dmass / cs_norm, T(1e-5));
                const T gap_floor = std::min(
                    kMassEps * gmass / (T(1) + std::abs(pobj_s)), T(1e-5));
                if (dres <= std::max(tol, dres_floor) &&
                    gap <= std::max(gap_tol, gap_floor)) {
                    accept = true;
                    accept_note = "optimal at the numerical floor (degenerate duals)";
                }
            }
            if (accept) {
                LpSolution out;
                out.status = SolveStatus::Optimal;
                out.theta = xo;
                out.objective = pobj;
                out.duals = yo;
                out.iterations = it;
                out.diagnostic = accept_note;
                return finish(std::move(out));
            }
            if (pobj > set.divergence && pres < T(1e-6)) {
                LpSolution out;
                out.status = SolveStatus::Unbounded;
                out.objective = kInf;
                out.iterations = it;
                out.diagnostic = "objective exceeded divergence threshold";
                return finish(std::move(out));
            }
            // Farkas certificate of primal infeasibility on the original data.
            {
                VectorXd yn = yo / std::max(yo.norm(), 1e-300);
                kern.matvec_t(p.G.data(), m, n, yn.data(), fark_n.data());
                if (yn.minCoeff() >= -1e-12 &&
                    fark_n.cwiseAbs().maxCoeff() < set.feas_tol &&
                    p.h.dot(yn) < -set.feas_tol) {
                    LpSolution out;
                    out.status = SolveStatus::Infeasible;
                    out.objective = kNan;
                    out.iterations = it;
                    out.farkas = yn;
                    return finish(std::move(out));
                }
            }

            d = (y / s).min(Knobs<T>::dual_cap);
            if constexpr (kNative) {
                kern.weighted_gram(Gs.data(), m, n, d.matrix().eval().data(),
                                   M.data());
            } else {
                M.noalias() =
                    Gs.transpose() * (Gs.array().colwise() * d).matrix();
            }
            // Tiny relative diagonal shift; keeps the factorization alive on
            // the degenerate faces the corrector steers into late in the
            // solve.
            for (int j = 0; j < n; ++j)
                M(j, j) += Knobs<T>::diag_reg * std::max(M(j, j), T(1e-4));
            llt.compute(M);
            if (llt.info() != Eigen::Success)
                return finish_best(it, "Newton factorization failed");

            Arr<T> dx(n), ds(m), dy(m);
            newton(rp, rd, -(s * y), dx, ds, dy);
            if (!dx.isFinite().all() || !ds.isFinite().all() || !dy.isFinite().all())
                return finish_best(it, "non-finite affine direction");

            T ap = step_len<T>(s, ds, T(1));
            T ad = step_len<T>(y, dy, T(1));
            const T mu_aff = ((s + ap * ds) * (y + ad * dy)).sum() / m;

            // Certified ray: the affine direction improves the objective while
            // complementarity is already resolved.
            if ((cs * dx).sum() > T(0) && mu_aff < T(1e-10) && mu < T(1e-8)) {
                VectorXd ray = ((dx / csc) * kh).matrix().template cast<double>();
                ray /= std::max(ray.norm(), 1e-300);
                kern.matvec(p.G.data(), m, n, ray.data(), ray_m.data());
                if (ray_m.maxCoeff() < set.feas_tol &&
                    p.c_obj.dot(ray) > set.feas_tol) {
                    LpSolution out;
                    out.status = SolveStatus::Unbounded;
                    out.objective = kInf;
                    out.iterations = it;
                    out.ray = ray;
                    return finish(std::move(out));
                }
            }

            const T sigma = std::pow(mu_aff / std::max(mu, T(1e-300)), 3);
            Arr<T> dx2(n), ds2(m), dy2(m);
            newton(rp, rd, sigma * mu - s * y - ds * dy, dx2, ds2, dy2);
            if (!dx2.isFinite().all() || !ds2.isFinite().all() ||
                !dy2.isFinite().all())
                return finish_best(it, "non-finite corrector direction");

            const T bf = std::max(T(0.995), T(1) - T(0.1) * mu);
            ap = step_len<T>(s, ds2, bf);
            ad = step_len<T>(y, dy2, bf);
            if (ap < Knobs<T>::step_floor && ad < Knobs<T>::step_floor)
                return finish_best(it, "step length collapsed");
            x += ap * dx2;
            s = (s + ap * ds2).max(T(1e-300));
            y = (y + ad * dy2).max(T(1e-300));
        }
        return finish_best(set.max_iter, "iteration limit reached");
    };

    // Active-set polish for a stalled endgame.  With tens of thousands of
    // rows the duality gap is mu times the row count, and the normal
    // equations lose the directions needed to push mu below ~1e-13 in
    // double precision.  The interior iterate does identify the optimal
    // face to a few rows, so finish the solve combinatorially: snap onto
    // the tight rows, then run primal active-set ascent (slide along the
    // face, add the blocking row, drop rows whose multiplier turns
    // negative) until the vertex is dual feasible.  The polished pair is
    // accepted only if it passes the full feasibility and gap checks, so a
    // wrong face guess costs time, never accuracy.
    auto polish = [&](int iters) -> LpSolution {
        LpSolution none;
        none.status = SolveStatus::IterationLimit;
        std::vector<int> order(m);
        std::vector<char> in_work(m);
        // The ascent runs against a deterministically perturbed right hand
        // side; the sampled rows make vertices massively degenerate and
        // zero-length pivots would otherwise cycle.  The certificate at the
        // end is computed against the true data, which rejects the rare
        // perturbation-induced wrong basis.
        Arr<T> hp(m);
        for (int i = 0; i < m; ++i) {
            const std::uint32_t mix = static_cast<std::uint32_t>(i) * 2654435761u;
            hp(i) = hs(i) + T(1e-11) * (T(0.5) + T(mix) / T(8589934592.0));
        }
        for (const Arr<T>* cand : {&stall_xs, &best_xs}) {
            if (cand->size() == 0) continue;
            const Arr<T> s_imp = hs - gs_mul(*cand);
            for (int i = 0; i < m; ++i) order[i] = i;
            std::sort(order.begin(), order.end(),
                      [&](int a, int b) { return s_imp(a) < s_imp(b); });
            // Greedy independent working set from the tightest rows.
            std::vector<int> work;
            std::fill(in_work.begin(), in_work.end(), 0);
            {
                Mat<T> wt(n, std::min(n, m));
                Eigen::ColPivHouseholderQR<Mat<T>> qr;
                for (int i = 0; i < m && static_cast<int>(work.size()) < n; ++i) {
                    const int row = order[i];
                    if (s_imp(row) > T(1e-6)) break;
                    wt.col(work.size()) = Gs.row(row).transpose();
                    qr.compute(wt.leftCols(work.size() + 1));
                    if (qr.rank() == static_cast<int>(work.size()) + 1) {
                        work.push_back(row);
                        in_work[row] = 1;
                    }
                }
            }
            auto snap = [&](const Arr<T>& rhs, Vec<T>& x, Arr<T>& sp) -> bool {
                Mat<T> Ga(static_cast<int>(work.size()), n);
                Vec<T> ha(static_cast<int>(work.size()));
                for (std::size_t i = 0; i < work.size(); ++i) {
                    Ga.row(i) = Gs.row(work[i]);
                    ha(i) = rhs(work[i]);
                }
                const Vec<T> xw = Ga.colPivHouseholderQr().solve(ha);
                const Arr<T> sw = rhs - gs_mul(xw.array());
                if (std::max(T(0), -sw.minCoeff()) / hs_norm > tol) return false;
                x = xw;
                sp = sw;
                return true;
            };
            // Snap onto the working rows; shrink until the point is feasible.
            Vec<T> x = cand->matrix();
            Arr<T> sp = hp - gs_mul(*cand);
            while (!work.empty()) {
                if (snap(hp, x, sp)) break;
                in_work[work.back()] = 0;
                work.pop_back();
            }
            // Ascent with smallest-index tie breaking on entering rows.
            bool at_opt = false;
            int pivots_used = 0;
            for (int pivot = 0; pivot < 300; ++pivot) {
                pivots_used = pivot;
                if (set.verbose && pivot % 25 == 0)
                    std::printf("  polish pivot %3d |W|=%3d obj_s=%.12e\n", pivot,
                                static_cast<int>(work.size()),
                                static_cast<double>(cs.matrix().dot(x)));
                Mat<T> wt(n, static_cast<int>(work.size()));
                for (std::size_t i = 0; i < work.size(); ++i)
                    wt.col(i) = Gs.row(work[i]).transpose();
                Vec<T> zc;
                Vec<T> dir = cs.matrix();
                if (!work.empty()) {
                    zc = wt.colPivHouseholderQr().solve(cs.matrix());
                    dir -= wt * zc;
                }
                // The residual test needs slack for the conditioning of the
                // working rows, and a full working set cannot slide at all;
                // both guards keep the set from collecting dependent rows.
                if (static_cast<int>(work.size()) < n &&
                    dir.cwiseAbs().maxCoeff() > T(1e-9)) {
                    const Arr<T> gd = gs_mul(dir.array());
                    T alpha = std::numeric_limits<T>::infinity();
                    int enter = -1;
                    for (int i = 0; i < m; ++i) {
                        if (in_work[i] || gd(i) <= T(1e-12)) continue;
                        const T a = std::max(sp(i), T(0)) / gd(i);
                        if (a < alpha) {
                            alpha = a;
                            enter = i;
                        }
                    }
                    if (enter < 0) break;  // ascent ray; cannot certify here
                    x += alpha * dir;
                    sp = hp - gs_mul(x.array());
                    work.push_back(enter);
                    in_work[enter] = 1;
                } else {
                    int drop = -1;
                    for (std::size_t i = 0; i < work.size(); ++i)
                        if (zc(i) < T(-1e-10) &&
                            (drop < 0 || work[i] < work[drop]))
                            drop = static_cast<int>(i);
                    if (drop < 0) {
                        at_opt = true;
                        break;
                    }
                    in_work[work[drop]] = 0;
                    work.erase(work.begin() + drop);
                }
            }
            if (!at_opt) {
                if (set.verbose)
                    std::printf("  polish abandoned after %d pivots (|W|=%d)\n",
                                pivots_used, static_cast<int>(work.size()));
                continue;
            }
            // Re-snap against the true right hand side before certifying.
            if (work.empty()) {
                sp = hs - gs_mul(x.array());
            } else if (!snap(hs, x, sp)) {
                if (set.verbose)
                    std::printf("  polish vertex infeasible on true data\n");
                continue;
            }
            const T pres_p = std::max(T(0), -sp.minCoeff()) / hs_norm;
            if (pres_p > tol) {
                if (set.verbose)
                    std::printf("  polish vertex infeasible: pres=%9.2e\n",
                                static_cast<double>(pres_p));
                continue;
            }
            // Rebuild multipliers over every row active at the vertex, not
            // just the working set, so degenerate support is covered.
            std::vector<int> act;
            for (int i = 0; i < m; ++i)
                if (sp(i) <= T(1e-9)) act.push_back(i);
            const int ka = static_cast<int>(act.size());
            Mat<T> At(n, ka);
            for (int i = 0; i < ka; ++i) At.col(i) = Gs.row(act[i]).transpose();
            const Vec<T> ya = nnls_lh<T>(At, cs.matrix());
            const T dres_p =
                (At * ya - cs.matrix()).cwiseAbs().maxCoeff() / cs_norm;
            T dobj_s = T(0);
            for (int i = 0; i < ka; ++i) dobj_s += hs(act[i]) * ya(i);
            const T pobj_s = cs.matrix().dot(x);
            const T gap_p =
                std::abs(pobj_s - dobj_s) / (T(1) + std::abs(pobj_s));
            if (set.verbose)
                std::printf("  polish ka=%5d pres=%9.2e dres=%9.2e gap=%9.2e\n",
                            ka, static_cast<double>(pres_p),
                            static_cast<double>(dres_p),
                            static_cast<double>(gap_p));
            if (dres_p > tol || gap_p > gap_tol) continue;
            LpSolution out;
            out.status = SolveStatus::Optimal;
            out.theta = ((x.array() / csc) * kh).matrix().template cast<double>();
            out.objective = p.c_obj.dot(out.theta);
            Arr<T> yf = Arr<T>::Zero(m);
            for (int i = 0; i < ka; ++i) yf(act[i]) = ya(i);
            out.duals = ((yf / rsc) * kc).matrix().template cast<double>();
            out.iterations = iters;
            out.diagnostic = "optimal via active-set polish of the stalled iterate";
            out.solve_time_s = timer.seconds();
            return out;
        }
        return none;
    };

    LpSolution out = run(kSchedules[0]);
    if (out.status != SolveStatus::IterationLimit) return out;
    LpSolution pol = polish(out.iterations);
    if (pol.status == SolveStatus::Optimal) return pol;
    out = run(kSchedules[1]);
    if (out.status != SolveStatus::IterationLimit) return out;
    pol = polish(out.iterations);
    if (pol.status == SolveStatus::Optimal) return pol;
    return out;
}

}  // namespace

const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "optimal";
        case SolveStatus::Unbounded: return "unbounded";
        case SolveStatus::Infeasible: return "infeasible";
        case SolveStatus::IterationLimit: return "iteration_limit";
    }
    return "unknown";
}

LpSolution solve_lp(const LpProblem& p, const SolverSettings& set) {
    if (p.n_rows() < 1 || p.n_vars() < 1)
        throw std::invalid_argument("solve_lp: empty problem");
    if (!p.G.allFinite() || !p.h.allFinite() || !p.c_obj.allFinite())
        throw std::invalid_argument("solve_lp: non-finite problem data");

    const Timer timer;
    LpSolution out = solve_ipm<double>(p, set, timer);
    if (out.status != SolveStatus::IterationLimit) return out;
    // Escalate a stalled endgame to extended precision.  A handful of the
    // sampled programs (long horizons; cost curvatures spanning seven orders
    // of magnitude) need a central path tighter than double normal equations
    // can represent; the wider scalar buys ~3 digits of endgame, which has
    // been enough for every such instance seen.  The fast path stays double.
    LpSolution wide = solve_ipm<long double>(p, set, timer);
    wide.solve_time_s = timer.seconds();
    if (wide.status != SolveStatus::IterationLimit) {
        if (wide.diagnostic.empty())
            wide.diagnostic = "resolved in extended precision";
        return wide;
    }
    return wide;
}

}  // namespace adp
