// SPDX-License-Identifier: Apache-2.0
//
// Bounded-variable primal simplex over a sparse column representation.
//
// Structure: rows are equilibrated by their max absolute coefficient, a slack
// column is appended per row, and the basis is maintained as a sparse LU
// factorization (left-looking, partial pivoting with deterministic ties) plus
// product-form eta updates between refactorizations.  Phase 1 minimizes the
// sum of auxiliary infeasibility (artificial) variables installed on rows
// whose initial slack basis is out of bounds.  Pricing is Dantzig (largest
// reduced cost, ties by lowest column index); after a long run of degenerate
// pivots the solver falls back to Bland's rule until progress resumes.
// Everything is deterministic in the model and options.

#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "oranjopt/milp_model.hpp"

namespace oranjopt {

enum class LpStatus { Optimal, Infeasible, Unbounded };

inline const char* to_string(LpStatus s) {
    switch (s) {
        case LpStatus::Optimal: return "optimal";
        case LpStatus::Infeasible: return "infeasible";
        case LpStatus::Unbounded: return "unbounded";
    }
    return "?";
}

struct LpOptions {
    double feas_tol = 1e-7;
    double dual_tol = 1e-9;
    long max_iterations = 1000000;
};

struct LpOutcome {
    LpStatus status = LpStatus::Infeasible;
    Point point;  // structural values; meaningful only when Optimal
    double objective = 0.0;
    long iterations = 0;
};

class SimplexSolver {
public:
    explicit SimplexSolver(const MilpModel& model, LpOptions opts = {})
        : opts_(opts), n_(static_cast<int>(model.num_variables())),
          m_(static_cast<int>(model.num_constraints())) {
        base_lo_.resize(n_);
        base_up_.resize(n_);
        cost_.assign(n_, 0.0);
        for (int j = 0; j < n_; ++j) {
            base_lo_[j] = model.variables()[j].lower;
            base_up_[j] = model.variables()[j].upper;
        }
        for (const auto& t : model.objective().terms) cost_[t.var] += t.coef;
        obj_constant_ = model.objective().constant;

        // Row-major gather, then column-compressed storage.
        std::vector<std::vector<std::pair<int, double>>> col_entries(n_);
        sense_.resize(m_);
        rhs_.resize(m_);
        row_scale_.assign(m_, 1.0);
        for (int i = 0; i < m_; ++i) {
            const Constraint& c = model.constraints()[i];
            sense_[i] = c.sense;
            double maxabs = 0.0;
            for (const auto& t : c.expr.terms) maxabs = std::max(maxabs, std::abs(t.coef));
            double s = maxabs > 0.0 ? 1.0 / maxabs : 1.0;
            row_scale_[i] = s;
            rhs_[i] = (c.rhs - c.expr.constant) * s;
            for (const auto& t : c.expr.terms) col_entries[t.var].emplace_back(i, t.coef * s);
        }
        col_ptr_.assign(n_ + 1, 0);
        for (int j = 0; j < n_; ++j) col_ptr_[j + 1] = col_ptr_[j] + static_cast<int>(col_entries[j].size());
        col_row_.resize(col_ptr_[n_]);
        col_val_.resize(col_ptr_[n_]);
        for (int j = 0; j < n_; ++j) {
            int k = col_ptr_[j];
            for (const auto& [r, v] : col_entries[j]) {
                col_row_[k] = r;
                col_val_[k] = v;
                ++k;
            }
        }
        slack_lo_.resize(m_);
        slack_up_.resize(m_);
        for (int i = 0; i < m_; ++i) {
            switch (sense_[i]) {
                case Sense::Le: slack_lo_[i] = 0.0; slack_up_[i] = kInfinity; break;
                case Sense::Ge: slack_lo_[i] = -kInfinity; slack_up_[i] = 0.0; break;
                case Sense::Eq: slack_lo_[i] = 0.0; slack_up_[i] = 0.0; break;
            }
        }
        max_abs_rhs_ = 0.0;
        for (int i = 0; i < m_; ++i) max_abs_rhs_ = std::max(max_abs_rhs_, std::abs(rhs_[i]));
    }

    LpOutcome solve() { return solve(base_lo_, base_up_); }

    // Bounds arrays cover the structural variables only.  A numerically
    // degenerate run (singular refactorization) is retried once from scratch
    // with more frequent refactorization before giving up.
    LpOutcome solve(std::span<const double> lower, std::span<const double> upper) {
        refactor_every_ = kRefactorNormal;
        try {
            return solve_once(lower, upper);
        } catch (const NumericalFailure&) {
            refactor_every_ = kRefactorStrict;
            return solve_once(lower, upper);
        }
    }

private:
    struct NumericalFailure {};

    LpOutcome solve_once(std::span<const double> lower, std::span<const double> upper) {
        lo_.assign(lower.begin(), lower.end());
        up_.assign(upper.begin(), upper.end());
        lo_.resize(n_ + m_ + m_);
        up_.resize(n_ + m_ + m_);
        for (int i = 0; i < m_; ++i) {
            lo_[n_ + i] = slack_lo_[i];
            up_[n_ + i] = slack_up_[i];
        }
        // Artificial columns (one per row), disabled until phase 1 enables them.
        for (int i = 0; i < m_; ++i) {
            lo_[n_ + m_ + i] = 0.0;
            up_[n_ + m_ + i] = 0.0;
        }
        art_sign_.assign(m_, 1.0);

        LpOutcome out;
        for (int j = 0; j < n_; ++j)
            if (lo_[j] > up_[j]) return out;  // empty box: infeasible

        if (m_ == 0) return solve_unconstrained(out);

        iterations_ = 0;
        if (!start_basis()) {
            out.status = LpStatus::Infeasible;
            out.iterations = iterations_;
            return out;
        }

        if (needs_phase1()) {
            install_artificials();
            PhaseResult r1 = iterate(/*phase1=*/true);
            if (r1 == PhaseResult::IterationLimit) throw std::runtime_error("simplex iteration limit");
            double infeas = phase1_objective();
            if (infeas > p1_tolerance()) {
                out.status = LpStatus::Infeasible;
                out.iterations = iterations_;
                return out;
            }
            for (int i = 0; i < m_; ++i) up_[n_ + m_ + i] = 0.0;  // freeze artificials
        }

        PhaseResult r2 = iterate(/*phase1=*/false);
        if (r2 == PhaseResult::IterationLimit) throw std::runtime_error("simplex iteration limit");
        if (r2 == PhaseResult::Unbounded) {
            out.status = LpStatus::Unbounded;
            out.iterations = iterations_;
            return out;
        }

        out.status = LpStatus::Optimal;
        out.point.values.assign(n_, 0.0);
        for (int j = 0; j < n_; ++j) out.point.values[j] = nonbasic_value(j);
        for (int i = 0; i < m_; ++i)
            if (basis_[i] < n_) out.point.values[basis_[i]] = xb_[i];
        for (int j = 0; j < n_; ++j) {
            double v = out.point.values[j];
            out.point.values[j] = std::min(std::max(v, lo_[j]), up_[j]);
        }
        double obj = obj_constant_;
        for (int j = 0; j < n_; ++j) obj += cost_[j] * out.point.values[j];
        out.objective = obj;
        out.iterations = iterations_;
        return out;
    }

    enum VStat : unsigned char { kBasic, kAtLower, kAtUpper, kFreeZero };
    enum class PhaseResult { Optimal, Unbounded, IterationLimit };

    // ---- column access (structurals, slacks, artificials) ----
    int total_cols() const { return n_ + m_ + m_; }
    bool is_slack(int j) const { return j >= n_ && j < n_ + m_; }
    bool is_artificial(int j) const { return j >= n_ + m_; }

    template <typename Fn>
    void for_col(int j, Fn&& fn) const {
        if (j < n_) {
            for (int k = col_ptr_[j]; k < col_ptr_[j + 1]; ++k) fn(col_row_[k], col_val_[k]);
        } else if (j < n_ + m_) {
            fn(j - n_, 1.0);
        } else {
            fn(j - n_ - m_, art_sign_[j - n_ - m_]);
        }
    }

    int col_nnz(int j) const {
        if (j < n_) return col_ptr_[j + 1] - col_ptr_[j];
        return 1;
    }

    double nonbasic_value(int j) const {
        switch (vstat_[j]) {
            case kAtLower: return lo_[j];
            case kAtUpper: return up_[j];
            case kFreeZero: return 0.0;
            case kBasic: break;
        }
        return 0.0;
    }

    LpOutcome solve_unconstrained(LpOutcome& out) {
        out.point.values.assign(n_, 0.0);
        double obj = obj_constant_;
        for (int j = 0; j < n_; ++j) {
            double v;
            if (cost_[j] > 0.0)
                v = lo_[j];
            else if (cost_[j] < 0.0)
                v = up_[j];
            else
                v = std::isfinite(lo_[j]) ? lo_[j] : (std::isfinite(up_[j]) ? up_[j] : 0.0);
            if (!std::isfinite(v)) {
                out.status = LpStatus::Unbounded;
                return out;
            }
            out.point.values[j] = v;
            obj += cost_[j] * v;
        }
        out.status = LpStatus::Optimal;
        out.objective = obj;
        return out;
    }

    // ---- basis bootstrap ----
    bool start_basis() {
        vstat_.assign(total_cols(), kAtLower);
        for (int j = 0; j < total_cols(); ++j) {
            if (std::isfinite(lo_[j]))
                vstat_[j] = kAtLower;
            else if (std::isfinite(up_[j]))
                vstat_[j] = kAtUpper;
            else
                vstat_[j] = kFreeZero;
        }
        basis_.resize(m_);
        for (int i = 0; i < m_; ++i) {
            basis_[i] = n_ + i;
            vstat_[n_ + i] = kBasic;
        }
        if (!refactorize()) return false;
        recompute_basic_values();
        return true;
    }

    bool needs_phase1() const {
        double tol = p1_tolerance();
        for (int i = 0; i < m_; ++i) {
            int j = basis_[i];
            if (xb_[i] < lo_[j] - tol || xb_[i] > up_[j] + tol) return true;
        }
        return false;
    }

    double p1_tolerance() const { return opts_.feas_tol * (1.0 + max_abs_rhs_); }

    // Out-of-bounds basic slacks become nonbasic at their nearest bound and an
    // auxiliary infeasibility variable takes over the row.
    void install_artificials() {
        for (int i = 0; i < m_; ++i) {
            int j = basis_[i];
            double v = xb_[i];
            if (v >= lo_[j] - p1_tolerance() && v <= up_[j] + p1_tolerance()) continue;
            double clamped = v < lo_[j] ? lo_[j] : up_[j];
            vstat_[j] = (clamped == lo_[j]) ? kAtLower : kAtUpper;
            double resid = v - clamped;  // value the replacement basic var must absorb
            int a = n_ + m_ + i;
            art_sign_[i] = resid >= 0.0 ? 1.0 : -1.0;
            lo_[a] = 0.0;
            up_[a] = kInfinity;
            basis_[i] = a;
            vstat_[a] = kBasic;
        }
        refactorize();
        recompute_basic_values();
    }

    double phase1_objective() const {
        double s = 0.0;
        for (int i = 0; i < m_; ++i)
            if (is_artificial(basis_[i])) s += std::max(0.0, xb_[i]);
        return s;
    }

    double col_cost(int j, bool phase1) const {
        if (phase1) return is_artificial(j) ? 1.0 : 0.0;
        return j < n_ ? cost_[j] : 0.0;
    }

    // ---- LU factorization of the basis ----
    // Left-looking sparse LU.  For each column only the reachable elimination
    // steps are applied (discovered through a min-heap over step indices, the
    // sparse-triangular-solve reachability), and only touched workspace rows
    // are cleared afterwards.
    bool refactorize() {
        etas_.clear();
        const int m = m_;
        Lp_.assign(1, 0);
        Li_.clear();
        Lx_.clear();
        Up_.assign(1, 0);
        Ui_.clear();
        Ux_.clear();
        Ud_.assign(m, 0.0);
        pivot_row_.assign(m, -1);
        row_pos_.assign(m, -1);
        step_of_pos_.assign(m, -1);
        pos_of_step_.assign(m, -1);

        std::vector<int> order(m);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return col_nnz(basis_[a]) < col_nnz(basis_[b]);
        });

        std::vector<double> w(m, 0.0);
        std::vector<int> touched;
        std::vector<unsigned char> in_touched(m, 0);
        std::vector<unsigned char> in_heap(m, 0);
        std::vector<int> heap;
        touched.reserve(256);
        heap.reserve(256);
        auto touch = [&](int r) {
            if (!in_touched[r]) {
                in_touched[r] = 1;
                touched.push_back(r);
            }
        };
        auto heap_push = [&](int s) {
            if (in_heap[s]) return;
            in_heap[s] = 1;
            heap.push_back(s);
            std::push_heap(heap.begin(), heap.end(), std::greater<int>());
        };
        for (int k = 0; k < m; ++k) {
            int pos = order[k];
            int j = basis_[pos];
            touched.clear();
            heap.clear();
            for_col(j, [&](int r, double v) {
                w[r] = v;
                touch(r);
                if (row_pos_[r] >= 0) heap_push(row_pos_[r]);
            });
            // Apply reachable elimination steps in increasing order.
            while (!heap.empty()) {
                std::pop_heap(heap.begin(), heap.end(), std::greater<int>());
                int s = heap.back();
                heap.pop_back();
                in_heap[s] = 0;
                double alpha = w[pivot_row_[s]];
                if (std::abs(alpha) > kDropTol) {
                    Ui_.push_back(s);
                    Ux_.push_back(alpha);
                    for (int t = Lp_[s]; t < Lp_[s + 1]; ++t) {
                        int r = Li_[t];
                        touch(r);
                        w[r] -= alpha * Lx_[t];
                        if (row_pos_[r] > s) heap_push(row_pos_[r]);
                    }
                } else {
                    w[pivot_row_[s]] = 0.0;  // negligible: drop from U
                }
            }
            // U entries were collected in ascending step order by the heap.
            Up_.push_back(static_cast<int>(Ui_.size()));
            // Pivot: largest magnitude among touched unpivoted rows, ties to
            // the lowest row index.
            int prow = -1;
            double pmax = 0.0;
            for (int r : touched) {
                if (row_pos_[r] >= 0) continue;
                double av = std::abs(w[r]);
                if (av > pmax || (av == pmax && prow >= 0 && av > 0.0 && r < prow)) {
                    pmax = av;
                    prow = r;
                }
            }
            if (prow < 0 || pmax <= kSingularTol) {
                for (int r : touched) {
                    w[r] = 0.0;
                    in_touched[r] = 0;
                }
                return false;
            }
            Ud_[k] = w[prow];
            pivot_row_[k] = prow;
            row_pos_[prow] = k;
            step_of_pos_[pos] = k;
            pos_of_step_[k] = pos;
            for (int r : touched) {
                if (row_pos_[r] >= 0 || std::abs(w[r]) <= kDropTol) continue;
                Li_.push_back(r);
                Lx_.push_back(w[r] / Ud_[k]);
            }
            Lp_.push_back(static_cast<int>(Li_.size()));
            for (int r : touched) {
                w[r] = 0.0;
                in_touched[r] = 0;
            }
        }
        return true;
    }

    // Solve B x = b; input indexed by row, output indexed by basis position.
    void ftran(std::vector<double>& work) const {
        const int m = m_;
        for (int s = 0; s < m; ++s) {
            double t = work[pivot_row_[s]];
            if (std::abs(t) <= kDropTol) continue;
            for (int k = Lp_[s]; k < Lp_[s + 1]; ++k) work[Li_[k]] -= t * Lx_[k];
        }
        // Back substitution into step space.
        ft_steps_.assign(m, 0.0);
        for (int k = m - 1; k >= 0; --k) {
            double t = work[pivot_row_[k]] / Ud_[k];
            ft_steps_[k] = t;
            if (std::abs(t) <= kDropTol) continue;
            for (int u = Up_[k]; u < Up_[k + 1]; ++u) work[pivot_row_[Ui_[u]]] -= Ux_[u] * t;
        }
        std::fill(work.begin(), work.end(), 0.0);
        for (int k = 0; k < m; ++k) work[pos_of_step_[k]] = ft_steps_[k];
        // Product-form updates, oldest first.
        for (const Eta& e : etas_) {
            double t = work[e.pos] / e.pivot;
            work[e.pos] = t;
            if (t != 0.0)
                for (std::size_t k = 0; k < e.idx.size(); ++k) work[e.idx[k]] -= e.val[k] * t;
        }
    }

    // Solve B^T y = c; input indexed by basis position, output indexed by row.
    void btran(std::vector<double>& work) const {
        const int m = m_;
        for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
            const Eta& e = *it;
            double acc = work[e.pos];
            for (std::size_t k = 0; k < e.idx.size(); ++k) acc -= e.val[k] * work[e.idx[k]];
            work[e.pos] = acc / e.pivot;
        }
        bt_steps_.assign(m, 0.0);
        for (int k = 0; k < m; ++k) {
            double acc = work[pos_of_step_[k]];
            for (int u = Up_[k]; u < Up_[k + 1]; ++u) acc -= Ux_[u] * bt_steps_[Ui_[u]];
            bt_steps_[k] = acc / Ud_[k];
        }
        for (int k = m - 1; k >= 0; --k) {
            double acc = bt_steps_[k];
            for (int t = Lp_[k]; t < Lp_[k + 1]; ++t) acc -= Lx_[t] * bt_steps_[row_pos_[Li_[t]]];
            bt_steps_[k] = acc;
        }
        std::fill(work.begin(), work.end(), 0.0);
        for (int k = 0; k < m; ++k) work[pivot_row_[k]] = bt_steps_[k];
    }

    void recompute_basic_values() {
        std::vector<double> rhs_eff(rhs_);
        for (int j = 0; j < total_cols(); ++j) {
            if (vstat_[j] == kBasic) continue;
            double v = nonbasic_value(j);
            if (v == 0.0) continue;
            for_col(j, [&](int r, double a) { rhs_eff[r] -= a * v; });
        }
        ftran(rhs_eff);
        xb_ = rhs_eff;
    }

    // ---- main iteration loop ----
    PhaseResult iterate(bool phase1) {
        int degen_run = 0;
        bool bland = false;
        const long bland_threshold = 3L * (m_ + total_cols());

        std::vector<double> y(m_), wcol(m_);
        while (true) {
            if (iterations_ >= opts_.max_iterations) return PhaseResult::IterationLimit;

            // Reduced costs via duals of the current basis.
            std::fill(y.begin(), y.end(), 0.0);
            for (int i = 0; i < m_; ++i) y[i] = col_cost(basis_[i], phase1);
            btran(y);

            int enter = -1;
            double best_score = 0.0;
            int enter_dir = +1;
            for (int j = 0; j < total_cols(); ++j) {
                if (vstat_[j] == kBasic) continue;
                if (lo_[j] == up_[j]) continue;  // fixed, never enters
                if (is_artificial(j)) continue;  // auxiliaries never re-enter
                double d = col_cost(j, phase1);
                for_col(j, [&](int r, double a) { d -= a * y[r]; });
                double score = 0.0;
                int dir = 0;
                if (vstat_[j] == kAtLower && d < -opts_.dual_tol) {
                    score = -d;
                    dir = +1;
                } else if (vstat_[j] == kAtUpper && d > opts_.dual_tol) {
                    score = d;
                    dir = -1;
                } else if (vstat_[j] == kFreeZero && std::abs(d) > opts_.dual_tol) {
                    score = std::abs(d);
                    dir = d < 0.0 ? +1 : -1;
                }
                if (dir == 0) continue;
                if (bland) {
                    enter = j;
                    enter_dir = dir;
                    break;
                }
                if (score > best_score) {
                    best_score = score;
                    enter = j;
                    enter_dir = dir;
                }
            }
            if (enter < 0) return PhaseResult::Optimal;

            std::fill(wcol.begin(), wcol.end(), 0.0);
            for_col(enter, [&](int r, double a) { wcol[r] = a; });
            ftran(wcol);

            // Ratio test.  Basic variable at position i changes by -dir*w_i per
            // unit of entering movement.
            double enter_val = nonbasic_value(enter);
            double limit_own = enter_dir > 0 ? up_[enter] - enter_val : enter_val - lo_[enter];
            double best_step = limit_own;
            int block_pos = -1;   // -1 means bound flip
            double block_w = 0.0;
            int block_to_upper = 0;
            for (int i = 0; i < m_; ++i) {
                double w = wcol[i];
                if (std::abs(w) <= kPivotTol) continue;
                double delta = -static_cast<double>(enter_dir) * w;
                int bj = basis_[i];
                double step;
                int to_upper;
                if (delta > 0.0) {
                    if (!std::isfinite(up_[bj])) continue;
                    step = (up_[bj] - xb_[i]) / delta;
                    to_upper = 1;
                } else {
                    if (!std::isfinite(lo_[bj])) continue;
                    step = (xb_[i] - lo_[bj]) / (-delta);
                    to_upper = 0;
                }
                if (step < 0.0) step = 0.0;
                bool take;
                if (step < best_step - kRatioTol) {
                    take = true;  // strictly tighter block
                } else if (step <= best_step + kRatioTol && block_pos >= 0) {
                    // Tie between blocking rows: Bland takes the lowest leaving
                    // variable id, otherwise prefer the larger pivot magnitude.
                    if (bland)
                        take = basis_[i] < basis_[block_pos];
                    else
                        take = std::abs(w) > std::abs(block_w) ||
                               (std::abs(w) == std::abs(block_w) && basis_[i] < basis_[block_pos]);
                } else {
                    take = false;
                }
                if (take) {
                    best_step = std::min(step, best_step);
                    block_pos = i;
                    block_w = w;
                    block_to_upper = to_upper;
                }
            }

            if (!std::isfinite(best_step)) {
                if (phase1) throw std::runtime_error("unbounded phase-1 subproblem");
                return PhaseResult::Unbounded;
            }

            ++iterations_;
            double step = std::max(0.0, best_step);
            if (block_pos < 0) {
                // Bound flip: no basis change.
                for (int i = 0; i < m_; ++i) {
                    double w = wcol[i];
                    if (std::abs(w) <= kPivotTol) continue;
                    xb_[i] += -static_cast<double>(enter_dir) * w * step;
                }
                vstat_[enter] = enter_dir > 0 ? kAtUpper : kAtLower;
                if (step <= kDegenTol) ++degen_run; else degen_run = 0;
            } else {
                int leave = basis_[block_pos];
                for (int i = 0; i < m_; ++i) {
                    double w = wcol[i];
                    if (std::abs(w) <= kPivotTol) continue;
                    xb_[i] += -static_cast<double>(enter_dir) * w * step;
                }
                double enter_new = enter_val + enter_dir * step;
                vstat_[leave] = block_to_upper ? kAtUpper : kAtLower;
                basis_[block_pos] = enter;
                vstat_[enter] = kBasic;
                xb_[block_pos] = enter_new;

                Eta e;
                e.pos = block_pos;
                e.pivot = wcol[block_pos];
                for (int i = 0; i < m_; ++i) {
                    if (i == block_pos) continue;
                    if (std::abs(wcol[i]) > kDropTol) {
                        e.idx.push_back(i);
                        e.val.push_back(wcol[i]);
                    }
                }
                etas_.push_back(std::move(e));
                if (static_cast<int>(etas_.size()) >= refactor_every_) {
                    if (!refactorize()) throw NumericalFailure{};
                    recompute_basic_values();
                }
                if (step <= kDegenTol) ++degen_run; else degen_run = 0;
            }

            if (!bland && degen_run > bland_threshold) bland = true;
            if (bland && degen_run == 0) bland = false;
        }
    }

    static constexpr double kDropTol = 1e-12;
    static constexpr double kPivotTol = 1e-9;
    static constexpr double kRatioTol = 1e-9;
    static constexpr double kDegenTol = 1e-10;
    static constexpr double kSingularTol = 1e-10;
    static constexpr int kRefactorNormal = 64;
    static constexpr int kRefactorStrict = 12;
    int refactor_every_ = kRefactorNormal;

    struct Eta {
        int pos = 0;
        double pivot = 1.0;
        std::vector<int> idx;
        std::vector<double> val;
    };

    LpOptions opts_;
    int n_ = 0;
    int m_ = 0;
    double obj_constant_ = 0.0;
    double max_abs_rhs_ = 0.0;

    std::vector<double> base_lo_, base_up_, cost_;
    std::vector<int> col_ptr_, col_row_;
    std::vector<double> col_val_;
    std::vector<Sense> sense_;
    std::vector<double> rhs_, row_scale_, slack_lo_, slack_up_;

    // per-solve state
    std::vector<double> lo_, up_;
    std::vector<double> art_sign_;
    std::vector<int> basis_;
    std::vector<unsigned char> vstat_;
    std::vector<double> xb_;
    long iterations_ = 0;

    // factorization
    std::vector<int> Lp_, Li_, Up_, Ui_;
    std::vector<double> Lx_, Ux_, Ud_;
    std::vector<int> pivot_row_, row_pos_, step_of_pos_, pos_of_step_;
    std::vector<Eta> etas_;
    mutable std::vector<double> ft_steps_, bt_steps_;
};

inline LpOutcome solve_lp(const MilpModel& model, LpOptions opts = {}) {
    SimplexSolver solver(model, opts);
    return solver.solve();
}

}  // namespace oranjopt
