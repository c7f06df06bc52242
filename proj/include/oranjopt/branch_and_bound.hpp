// SPDX-License-Identifier: Apache-2.0
//
// Deterministic branch-and-bound over LP relaxations for pure-binary MILPs.
// Each popped node is solved from scratch by the bounded-variable primal
// simplex.  Fathoming on bound dominance, infeasibility, or integrality;
// branching on the most fractional binary (ties to the lowest VarId);
// exploration is best-bound-first with FIFO tie breaks.  Wall time is
// reported but never steers the search except for the time-limit cutoff,
// which is checked at node boundaries only.

#pragma once

#include <chrono>
#include <cstdint>
#include <queue>
#include <vector>

#include "oranjopt/milp_model.hpp"
#include "oranjopt/simplex.hpp"

namespace oranjopt {

enum class MilpStatus { Optimal, GapReached, TimeLimit, Infeasible };

inline const char* to_string(MilpStatus s) {
    switch (s) {
        case MilpStatus::Optimal: return "optimal";
        case MilpStatus::GapReached: return "gap_reached";
        case MilpStatus::TimeLimit: return "time_limit";
        case MilpStatus::Infeasible: return "infeasible";
    }
    return "?";
}

struct SolverConfig {
    double rel_gap = 0.10;
    double time_limit_s = 60.0;
    double feas_tol = 1e-6;
    double int_tol = 1e-5;
    enum class BranchRule { MostFractional } branch_rule = BranchRule::MostFractional;
    // BestBoundPlunge pops best-bound nodes but finishes each branching by
    // descending into the LP-rounded child until the subtree is fathomed,
    // which finds incumbents that pure best-bound search postpones forever.
    enum class NodeOrder {
        BestBoundFirst,
        DepthFirst,
        BestBoundPlunge
    } node_order = NodeOrder::BestBoundFirst;
    long max_nodes = -1;       // < 0: unlimited; reaching the cap reports time_limit
    std::uint64_t seed = 0;    // reserved for randomized rules; unused by the defaults
    LpOptions lp;
};

struct MilpOutcome {
    MilpStatus status = MilpStatus::Infeasible;
    bool has_incumbent = false;
    Point incumbent;
    double objective = 0.0;
    double dual_bound = -kInfinity;
    double rel_gap_achieved = kInfinity;
    long nodes = 0;
    double wall_seconds = 0.0;
    long lp_iterations = 0;
    // Monotone traces for property tests: bounds never decrease, incumbents
    // never increase.
    std::vector<double> bound_history;
    std::vector<double> incumbent_history;
};

namespace detail {

struct BnbNode {
    double bound = -kInfinity;
    long seq = 0;
    int depth = 0;
    std::vector<std::pair<VarId, unsigned char>> fixings;
};

struct NodeOrderCmp {
    bool best_bound = true;
    // std::priority_queue pops the "largest"; invert so the best node pops.
    bool operator()(const BnbNode& a, const BnbNode& b) const {
        if (best_bound) {
            if (a.bound != b.bound) return a.bound > b.bound;
            return a.seq > b.seq;  // FIFO on ties
        }
        return a.seq < b.seq;  // depth-first: most recently created pops first
    }
};

}  // namespace detail

class BranchAndBound {
public:
    BranchAndBound(const MilpModel& model, SolverConfig cfg)
        : model_(model), cfg_(cfg), simplex_(model, cfg.lp) {
        base_lo_.reserve(model.num_variables());
        base_up_.reserve(model.num_variables());
        for (const auto& v : model.variables()) {
            base_lo_.push_back(v.lower);
            base_up_.push_back(v.upper);
        }
        for (std::size_t j = 0; j < model.num_variables(); ++j)
            if (model.variables()[j].kind == VarKind::Binary)
                binaries_.push_back(static_cast<VarId>(j));
    }

    MilpOutcome solve(const Point* warm_start = nullptr) {
        auto t0 = std::chrono::steady_clock::now();
        MilpOutcome out;
        detail::NodeOrderCmp cmp{cfg_.node_order != SolverConfig::NodeOrder::DepthFirst};
        std::priority_queue<detail::BnbNode, std::vector<detail::BnbNode>, detail::NodeOrderCmp>
            open(cmp);
        const bool plunge = cfg_.node_order == SolverConfig::NodeOrder::BestBoundPlunge;

        if (warm_start) {
            EvalReport rep = evaluate(model_, *warm_start, cfg_.feas_tol);
            if (rep.violations.empty()) {
                out.has_incumbent = true;
                out.objective = rep.objective;
                out.incumbent = *warm_start;
                out.incumbent_history.push_back(rep.objective);
            }
        }

        long seq = 0;
        detail::BnbNode root;
        root.seq = seq++;
        open.push(root);
        bool hit_limit = false;
        bool gap_stop = false;
        bool have_current = false;
        detail::BnbNode current;

        while (have_current || !open.empty()) {
            if (time_up(t0) || (cfg_.max_nodes >= 0 && out.nodes >= cfg_.max_nodes)) {
                hit_limit = true;
                break;
            }
            if (!have_current) {
                current = open.top();
                open.pop();
            }
            have_current = false;

            double frontier =
                open.empty() ? current.bound : std::min(current.bound, open.top().bound);
            note_bound(out, frontier);
            if (gap_ok(out)) {
                open.push(current);  // keep the frontier for honest dual-bound reporting
                gap_stop = true;
                break;
            }

            ++out.nodes;
            apply_fixings(current);
            LpOutcome lp = simplex_.solve(lo_, up_);
            out.lp_iterations += lp.iterations;
            if (lp.status == LpStatus::Infeasible) continue;
            if (lp.status == LpStatus::Unbounded)
                throw std::runtime_error("unbounded LP relaxation (model must be box-bounded)");

            double bound = std::max(current.bound, lp.objective);
            if (out.has_incumbent && bound >= out.objective - improve_eps(out)) continue;

            VarId frac = most_fractional(lp.point);
            if (frac < 0) {
                try_incumbent(out, lp.point, lo_, up_);
                continue;
            }

            double xfrac = lp.point.values[static_cast<std::size_t>(frac)];
            int near_side = xfrac >= 0.5 ? 1 : 0;
            for (int side = 0; side < 2; ++side) {
                detail::BnbNode child;
                child.bound = bound;
                child.depth = current.depth + 1;
                child.fixings = current.fixings;
                child.fixings.emplace_back(frac, static_cast<unsigned char>(side));
                child.seq = seq++;
                if (plunge && side == near_side) {
                    current = std::move(child);
                    have_current = true;
                } else {
                    open.push(std::move(child));
                }
            }
        }

        if (out.has_incumbent && open.empty() && !hit_limit) {
            note_bound(out, out.objective);  // search exhausted: bound closes
        }
        if (out.has_incumbent) {
            double denom = std::max(std::abs(out.objective), 1e-9);
            out.rel_gap_achieved = std::max(0.0, (out.objective - out.dual_bound) / denom);
        }
        if (hit_limit) {
            out.status = (out.has_incumbent && out.rel_gap_achieved <= cfg_.rel_gap)
                             ? MilpStatus::GapReached
                             : MilpStatus::TimeLimit;
        } else if (gap_stop) {
            out.status =
                out.rel_gap_achieved <= 1e-12 ? MilpStatus::Optimal : MilpStatus::GapReached;
        } else {
            out.status = out.has_incumbent ? MilpStatus::Optimal : MilpStatus::Infeasible;
        }
        out.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return out;
    }

private:
    bool time_up(std::chrono::steady_clock::time_point t0) const {
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return s >= cfg_.time_limit_s;
    }

    double improve_eps(const MilpOutcome& out) const {
        return 1e-9 * std::max(1.0, std::abs(out.objective));
    }

    void note_bound(MilpOutcome& out, double bound) const {
        if (bound > out.dual_bound) {
            out.dual_bound = bound;
            if (std::isfinite(bound) &&
                (out.bound_history.empty() || out.bound_history.back() < bound))
                out.bound_history.push_back(bound);
        }
    }

    bool gap_ok(const MilpOutcome& out) const {
        if (!out.has_incumbent) return false;
        double denom = std::max(std::abs(out.objective), 1e-9);
        double gap = std::max(0.0, (out.objective - out.dual_bound) / denom);
        return gap <= cfg_.rel_gap;
    }

    void apply_fixings(const detail::BnbNode& node) {
        lo_ = base_lo_;
        up_ = base_up_;
        for (const auto& [v, val] : node.fixings) {
            lo_[static_cast<std::size_t>(v)] = static_cast<double>(val);
            up_[static_cast<std::size_t>(v)] = static_cast<double>(val);
        }
    }

    // Most fractional = fractional part closest to 1/2; ties to lowest VarId.
    VarId most_fractional(const Point& p) const {
        VarId best = -1;
        double best_score = cfg_.int_tol;
        for (VarId v : binaries_) {
            double x = p.values[static_cast<std::size_t>(v)];
            double f = x - std::floor(x);
            double score = std::min(f, 1.0 - f);
            if (score > best_score + 1e-12) {
                best_score = score;
                best = v;
            }
        }
        return best;
    }

    // A node whose LP came out integral within tolerance: snap binaries to
    // exact 0/1, re-solve the continuous part, and accept the point only if it
    // passes exact evaluation and improves the incumbent.
    void try_incumbent(MilpOutcome& out, const Point& lp_point, const std::vector<double>& nlo,
                       const std::vector<double>& nup) {
        std::vector<double> flo(nlo), fup(nup);
        for (VarId v : binaries_) {
            double r = std::round(lp_point.values[static_cast<std::size_t>(v)]);
            flo[static_cast<std::size_t>(v)] = r;
            fup[static_cast<std::size_t>(v)] = r;
        }
        LpOutcome polished = simplex_.solve(flo, fup);
        out.lp_iterations += polished.iterations;
        const Point& candidate = polished.status == LpStatus::Optimal ? polished.point : lp_point;
        EvalReport rep = evaluate(model_, candidate, cfg_.feas_tol);
        if (!rep.violations.empty()) return;
        if (!out.has_incumbent || rep.objective < out.objective - improve_eps(out)) {
            out.has_incumbent = true;
            out.objective = rep.objective;
            out.incumbent = candidate;
            out.incumbent_history.push_back(rep.objective);
        }
    }

    const MilpModel& model_;
    SolverConfig cfg_;
    SimplexSolver simplex_;
    std::vector<double> base_lo_, base_up_, lo_, up_;
    std::vector<VarId> binaries_;
};

inline MilpOutcome solve_milp(const MilpModel& model, const SolverConfig& cfg = {}) {
    BranchAndBound bnb(model, cfg);
    return bnb.solve();
}

// Warm-started variant: the point seeds the incumbent when it passes exact
// evaluation at feas_tol; an invalid start is silently ignored.
inline MilpOutcome solve_milp(const MilpModel& model, const SolverConfig& cfg,
                              const Point& start) {
    BranchAndBound bnb(model, cfg);
    return bnb.solve(&start);
}

}  // namespace oranjopt
