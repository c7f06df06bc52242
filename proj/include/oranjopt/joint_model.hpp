// SPDX-License-Identifier: Apache-2.0
//
// Builds the joint energy-minimization MILP from a Scenario and decodes
// solver points back into domain allocations.
//
// Decision variables: a (RB rt' of RU j serves demand (i,t)), b (RU j bound
// to DU l at t'), c (DU l active at t), u (demand indicator, pinned by
// bounds), y (RU j serves demand (i,t) at t'), plus continuous auxiliaries:
// per-demand scheduling-makespan m, gated RB-count envelopes for the dynamic
// energy term and for the per-demand propagation term.
//
// RB variables exist only inside the demand's service window
// [t, t + floor(budget/TTI)] clipped to the horizon; slots beyond the class
// delay budget can never be used by a feasible solution, so the pruning is
// lossless.  Optional strengthening rows (on by default) are implied at
// every integer-feasible point and only tighten the LP relaxation: they never
// change the MILP optimum.

#pragma once

#include <string>
#include <vector>

#include "oranjopt/allocation.hpp"
#include "oranjopt/milp_model.hpp"
#include "oranjopt/scenario.hpp"

namespace oranjopt {

struct BuildOptions {
    // "One serving RU per demand per service TTI", the stated network rule.
    // Off reverts to the weaker per-RB form only.
    bool ru_unique_per_tti = true;
    // Redundant-at-integer strengthening rows for the LP relaxation.
    bool tighten = true;
    // Count propagation once per DU binding instead of once per allocated RB.
    bool prop_per_du = false;
    // Extra service-window slots beyond the class budget (window studies).
    int window_slack = 0;
};

struct DemandRef {
    int ue = 0;
    int tti = 0;
    int klass = 0;
    std::int64_t bits = 0;
    int t_lo = 0;
    int t_hi = 0;  // inclusive service window
    int width() const { return t_hi - t_lo + 1; }
};

struct VarMap {
    int I = 0, J = 0, L = 0, T = 0, R = 0, K = 0;
    std::vector<DemandRef> demands;
    std::vector<int> demand_at;  // [i][t] -> demand index or -1

    std::vector<VarId> c_ids;  // [l][t]
    std::vector<VarId> b_ids;  // [j][l][t]
    std::vector<VarId> u_ids;  // [i][t][k]
    std::vector<VarId> m_ids;  // [demand]
    std::vector<std::vector<VarId>> a_ids;  // [demand][(j*R + r)*W + off]
    std::vector<std::vector<VarId>> y_ids;  // [demand][j*W + off]

    struct GatedSum {
        VarId var = -1;
        VarId gate = -1;
        std::vector<VarId> parts;
    };
    struct WeightedMax {
        VarId var = -1;
        std::vector<std::pair<VarId, double>> cands;
    };
    struct Product {
        VarId var = -1;
        VarId x = -1, y = -1;
    };
    std::vector<GatedSum> gated_sums;     // objective and delay envelopes
    std::vector<WeightedMax> maxes;       // per-demand makespan
    std::vector<Product> products;        // prop_per_du mode only

    VarId c_id(int l, int t) const { return c_ids[static_cast<std::size_t>(l) * T + t]; }
    VarId b_id(int j, int l, int t) const {
        return b_ids[(static_cast<std::size_t>(j) * L + l) * T + t];
    }
    VarId u_id(int i, int t, int k) const {
        return u_ids[(static_cast<std::size_t>(i) * T + t) * K + k];
    }
    int demand_index(int i, int t) const { return demand_at[static_cast<std::size_t>(i) * T + t]; }
    VarId a_id(int d, int j, int r, int tp) const {
        const DemandRef& dr = demands[static_cast<std::size_t>(d)];
        int off = tp - dr.t_lo;
        return a_ids[static_cast<std::size_t>(d)]
                    [(static_cast<std::size_t>(j) * R + r) * dr.width() + off];
    }
    VarId y_id(int d, int j, int tp) const {
        const DemandRef& dr = demands[static_cast<std::size_t>(d)];
        return y_ids[static_cast<std::size_t>(d)][static_cast<std::size_t>(j) * dr.width() +
                                                  (tp - dr.t_lo)];
    }
};

namespace detail_joint {

inline int window_hi(const Scenario& s, int t, int k, int slack) {
    double budget = s.classes[static_cast<std::size_t>(k)].delay_budget_ms;
    int span = static_cast<int>(std::floor(budget / s.tti_ms + 1e-9)) + slack;
    return std::min(s.num_tti - 1, t + span);
}

}  // namespace detail_joint

inline std::pair<MilpModel, VarMap> build_joint(const Scenario& s, const BuildOptions& opts = {}) {
    {
        auto errs = validate(s);
        if (!errs.empty())
            throw std::invalid_argument("invalid scenario: " + errs.front());
    }
    MilpModel model;
    VarMap vm;
    vm.I = s.num_ue;
    vm.J = s.num_ru;
    vm.L = s.num_du;
    vm.T = s.num_tti;
    vm.R = s.rbs_per_tti;
    vm.K = s.num_classes();
    const int I = vm.I, J = vm.J, L = vm.L, T = vm.T, R = vm.R, K = vm.K;
    const double M = s.big_m;
    const double TTI = s.tti_ms;

    auto nm = [](const char* stem, std::initializer_list<int> idx) {
        std::string out(stem);
        for (int v : idx) {
            out += '_';
            out += std::to_string(v);
        }
        return out;
    };

    // DU activity and RU->DU binding variables exist for the whole horizon.
    vm.c_ids.resize(static_cast<std::size_t>(L) * T);
    for (int l = 0; l < L; ++l)
        for (int t = 0; t < T; ++t)
            vm.c_ids[static_cast<std::size_t>(l) * T + t] =
                model.add_variable({nm("c", {l, t}), VarKind::Binary, 0.0, 1.0});
    vm.b_ids.resize(static_cast<std::size_t>(J) * L * T);
    for (int j = 0; j < J; ++j)
        for (int l = 0; l < L; ++l)
            for (int t = 0; t < T; ++t)
                vm.b_ids[(static_cast<std::size_t>(j) * L + l) * T + t] =
                    model.add_variable({nm("b", {j, l, t}), VarKind::Binary, 0.0, 1.0});

    // Demand indicators are data in disguise: pinned to 1 where bits arrived.
    vm.u_ids.resize(static_cast<std::size_t>(I) * T * K);
    for (int i = 0; i < I; ++i)
        for (int t = 0; t < T; ++t)
            for (int k = 0; k < K; ++k) {
                double pin = s.demand(i, t, k) > 0 ? 1.0 : 0.0;
                vm.u_ids[(static_cast<std::size_t>(i) * T + t) * K + k] =
                    model.add_variable({nm("u", {i, t, k}), VarKind::Binary, pin, pin});
            }

    // Demands and their windowed service variables.
    vm.demand_at.assign(static_cast<std::size_t>(I) * T, -1);
    for (int i = 0; i < I; ++i)
        for (int t = 0; t < T; ++t) {
            int k = s.demanded_class(i, t);
            if (k < 0) continue;
            DemandRef d;
            d.ue = i;
            d.tti = t;
            d.klass = k;
            d.bits = s.demand(i, t, k);
            d.t_lo = t;
            d.t_hi = detail_joint::window_hi(s, t, k, opts.window_slack);
            vm.demand_at[static_cast<std::size_t>(i) * T + t] =
                static_cast<int>(vm.demands.size());
            vm.demands.push_back(d);
        }
    const int D = static_cast<int>(vm.demands.size());

    vm.a_ids.resize(D);
    vm.y_ids.resize(D);
    vm.m_ids.resize(D, -1);
    for (int d = 0; d < D; ++d) {
        const DemandRef& dr = vm.demands[static_cast<std::size_t>(d)];
        const int W = dr.width();
        vm.a_ids[static_cast<std::size_t>(d)].resize(static_cast<std::size_t>(J) * R * W);
        vm.y_ids[static_cast<std::size_t>(d)].resize(static_cast<std::size_t>(J) * W);
        for (int j = 0; j < J; ++j) {
            for (int r = 0; r < R; ++r)
                for (int tp = dr.t_lo; tp <= dr.t_hi; ++tp)
                    vm.a_ids[static_cast<std::size_t>(d)]
                            [(static_cast<std::size_t>(j) * R + r) * W + (tp - dr.t_lo)] =
                        model.add_variable(
                            {nm("a", {dr.ue, dr.tti, j, r, tp}), VarKind::Binary, 0.0, 1.0});
            for (int tp = dr.t_lo; tp <= dr.t_hi; ++tp)
                vm.y_ids[static_cast<std::size_t>(d)][static_cast<std::size_t>(j) * W +
                                                      (tp - dr.t_lo)] =
                    model.add_variable(
                        {nm("y", {dr.ue, dr.tti, j, tp}), VarKind::Binary, 0.0, 1.0});
        }
        // Scheduling makespan: max over served slots of t'.
        std::vector<std::pair<VarId, double>> cands;
        for (int j = 0; j < J; ++j)
            for (int tp = dr.t_lo; tp <= dr.t_hi; ++tp)
                cands.emplace_back(vm.y_id(d, j, tp), static_cast<double>(tp));
        vm.m_ids[static_cast<std::size_t>(d)] =
            linearize_max(model, cands, nm("m", {dr.ue, dr.tti}));
        vm.maxes.push_back({vm.m_ids[static_cast<std::size_t>(d)], std::move(cands)});
    }

    // Demands whose window covers slot t', per RU irrelevant (same for all).
    std::vector<std::vector<int>> demands_at_slot(static_cast<std::size_t>(T));
    for (int d = 0; d < D; ++d)
        for (int tp = vm.demands[static_cast<std::size_t>(d)].t_lo;
             tp <= vm.demands[static_cast<std::size_t>(d)].t_hi; ++tp)
            demands_at_slot[static_cast<std::size_t>(tp)].push_back(d);

    // Objective: static DU energy plus gated dynamic energy per (j,l,t').
    LinExpr objective;
    for (int t = 0; t < T; ++t)
        for (int l = 0; l < L; ++l)
            objective.add(s.e_static_wh[static_cast<std::size_t>(l)], vm.c_id(l, t));
    const double obj_cap = static_cast<double>(I) * R * T;
    for (int j = 0; j < J; ++j)
        for (int l = 0; l < L; ++l) {
            if (s.e_dynamic_wh[static_cast<std::size_t>(l)] == 0.0) continue;
            for (int tp = 0; tp < T; ++tp) {
                std::vector<VarId> parts;
                for (int d : demands_at_slot[static_cast<std::size_t>(tp)])
                    for (int r = 0; r < R; ++r) parts.push_back(vm.a_id(d, j, r, tp));
                if (parts.empty()) continue;
                VarId h = linearize_conditional_sum(model, parts, vm.b_id(j, l, tp), obj_cap,
                                                    nm("h", {j, l, tp}));
                vm.gated_sums.push_back({h, vm.b_id(j, l, tp), std::move(parts)});
                objective.add(s.e_dynamic_wh[static_cast<std::size_t>(l)], h);
            }
        }
    model.set_objective(objective);

    // Per-demand delay constraint: scheduling makespan plus propagation within
    // the class budget.  The big-M term keeps the row inert for the class
    // without demand (the indicator is pinned).
    for (int d = 0; d < D; ++d) {
        const DemandRef& dr = vm.demands[static_cast<std::size_t>(d)];
        Constraint row;
        row.expr.add(TTI, vm.m_ids[static_cast<std::size_t>(d)]);
        for (int j = 0; j < J; ++j)
            for (int l = 0; l < L; ++l) {
                double dprop = s.prop(j, l);
                if (dprop == 0.0) continue;  // zero-delay links never contribute
                for (int tp = dr.t_lo; tp <= dr.t_hi; ++tp) {
                    if (opts.prop_per_du) {
                        VarId z = linearize_product(model, vm.y_id(d, j, tp), vm.b_id(j, l, tp),
                                                    nm("z", {dr.ue, dr.tti, j, l, tp}));
                        vm.products.push_back({z, vm.y_id(d, j, tp), vm.b_id(j, l, tp)});
                        row.expr.add(dprop, z);
                    } else {
                        std::vector<VarId> parts;
                        for (int r = 0; r < R; ++r) parts.push_back(vm.a_id(d, j, r, tp));
                        VarId hp = linearize_conditional_sum(
                            model, parts, vm.b_id(j, l, tp), static_cast<double>(R),
                            nm("hp", {dr.ue, dr.tti, j, l, tp}));
                        vm.gated_sums.push_back({hp, vm.b_id(j, l, tp), std::move(parts)});
                        row.expr.add(dprop, hp);
                    }
                }
            }
        double budget = s.classes[static_cast<std::size_t>(dr.klass)].delay_budget_ms;
        row.expr.add(M - budget, vm.u_id(dr.ue, dr.tti, dr.klass));
        row.sense = Sense::Le;
        row.rhs = M + TTI * dr.tti;
        row.name = nm("eq2", {dr.ue, dr.tti, dr.klass});
        model.add_constraint(std::move(row));
    }

    // QoS: allocated rate covers the demanded bits.
    for (int d = 0; d < D; ++d) {
        const DemandRef& dr = vm.demands[static_cast<std::size_t>(d)];
        Constraint row;
        for (int tp = dr.t_lo; tp <= dr.t_hi; ++tp)
            for (int j = 0; j < J; ++j)
                for (int r = 0; r < R; ++r)
                    row.expr.add(static_cast<double>(s.rate(j, dr.ue, r, tp)),
                                 vm.a_id(d, j, r, tp));
        row.expr.add(-static_cast<double>(dr.bits), vm.u_id(dr.ue, dr.tti, dr.klass));
        row.sense = Sense::Ge;
        row.rhs = 0.0;
        row.name = nm("eq3", {dr.ue, dr.tti});
        model.add_constraint(std::move(row));
    }

    // Demand indicator coupling (the indicator is also pinned by bounds).
    for (int i = 0; i < I; ++i)
        for (int t = 0; t < T; ++t)
            for (int k = 0; k < K; ++k) {
                Constraint ge;
                ge.expr.add(M, vm.u_id(i, t, k));
                ge.sense = Sense::Ge;
                ge.rhs = static_cast<double>(s.demand(i, t, k));
                ge.name = nm("eq4", {i, t, k});
                model.add_constraint(std::move(ge));
                Constraint le;
                le.expr.add(1.0, vm.u_id(i, t, k));
                le.sense = Sense::Le;
                le.rhs = s.demand(i, t, k) > 0 ? 1.0 : 0.0;
                le.name = nm("eq4b", {i, t, k});
                model.add_constraint(std::move(le));
            }

    // Each RB serves at most one demand.
    for (int j = 0; j < J; ++j)
        for (int r = 0; r < R; ++r)
            for (int tp = 0; tp < T; ++tp) {
                const auto& ds = demands_at_slot[static_cast<std::size_t>(tp)];
                if (ds.empty()) continue;
                Constraint row;
                for (int d : ds) row.expr.add(1.0, vm.a_id(d, j, r, tp));
                row.sense = Sense::Le;
                row.rhs = 1.0;
                row.name = nm("eq5", {j, r, tp});
                model.add_constraint(std::move(row));
            }

    // UE-RU mapping, per RB as printed; optionally per TTI as stated in prose.
    for (int d = 0; d < D; ++d) {
        const DemandRef& dr = vm.demands[static_cast<std::size_t>(d)];
        for (int r = 0; r < R; ++r)
            for (int tp = dr.t_lo; tp <= dr.t_hi; ++tp) {
                Constraint row;
                for (int j = 0; j < J; ++j) row.expr.add(1.0, vm.a_id(d, j, r, tp));
                row.sense = Sense::Le;
                row.rhs = 1.0;
                row.name = nm("eq6", {dr.ue, dr.tti, r, tp});
                model.add_constraint(std::move(row));
            }
        if (opts.ru_unique_per_tti)
            for (int tp = dr.t_lo; tp <= dr.t_hi; ++tp) {
                Constraint row;
                for (int j = 0; j < J; ++j) row.expr.add(1.0, vm.y_id(d, j, tp));
                row.sense = Sense::Le;
                row.rhs = 1.0;
                row.name = nm("eq6b", {dr.ue, dr.tti, tp});
                model.add_constraint(std::move(row));
            }
    }

    // One DU per RU per TTI.
    for (int j = 0; j < J; ++j)
        for (int tp = 0; tp < T; ++tp) {
            Constraint row;
            for (int l = 0; l < L; ++l) row.expr.add(1.0, vm.b_id(j, l, tp));
            row.sense = Sense::Le;
            row.rhs = 1.0;
            row.name = nm("eq7", {j, tp});
            model.add_constraint(std::move(row));
        }

    // Serving RUs must be bound to a DU.
    for (int j = 0; j < J; ++j)
        for (int tp = 0; tp < T; ++tp) {
            const auto& ds = demands_at_slot[static_cast<std::size_t>(tp)];
            if (ds.empty()) continue;
            Constraint row;
            for (int l = 0; l < L; ++l) row.expr.add(M, vm.b_id(j, l, tp));
            for (int d : ds) row.expr.add(-1.0, vm.y_id(d, j, tp));
            row.sense = Sense::Ge;
            row.rhs = 0.0;
            row.name = nm("eq8", {j, tp});
            model.add_constraint(std::move(row));
        }

    // y aggregates the RB selection.
    for (int d = 0; d < D; ++d) {
        const DemandRef& dr = vm.demands[static_cast<std::size_t>(d)];
        for (int j = 0; j < J; ++j)
            for (int tp = dr.t_lo; tp <= dr.t_hi; ++tp) {
                Constraint row;
                row.expr.add(M, vm.y_id(d, j, tp));
                for (int r = 0; r < R; ++r) row.expr.add(-1.0, vm.a_id(d, j, r, tp));
                row.sense = Sense::Ge;
                row.rhs = 0.0;
                row.name = nm("eq9", {dr.ue, dr.tti, j, tp});
                model.add_constraint(std::move(row));
            }
    }

    // DU activation.
    for (int l = 0; l < L; ++l)
        for (int t = 0; t < T; ++t) {
            Constraint row;
            row.expr.add(M, vm.c_id(l, t));
            for (int j = 0; j < J; ++j) row.expr.add(-1.0, vm.b_id(j, l, t));
            row.sense = Sense::Ge;
            row.rhs = 0.0;
            row.name = nm("eq10", {l, t});
            model.add_constraint(std::move(row));
        }

    // One traffic type per UE per TTI.
    for (int i = 0; i < I; ++i)
        for (int t = 0; t < T; ++t) {
            Constraint row;
            for (int k = 0; k < K; ++k) row.expr.add(1.0, vm.u_id(i, t, k));
            row.sense = Sense::Le;
            row.rhs = 1.0;
            row.name = nm("eq11", {i, t});
            model.add_constraint(std::move(row));
        }

    if (opts.tighten) {
        // b <= c
        for (int j = 0; j < J; ++j)
            for (int l = 0; l < L; ++l)
                for (int t = 0; t < T; ++t) {
                    Constraint row;
                    row.expr.add(1.0, vm.b_id(j, l, t));
                    row.expr.add(-1.0, vm.c_id(l, t));
                    row.sense = Sense::Le;
                    row.rhs = 0.0;
                    row.name = nm("txbc", {j, l, t});
                    model.add_constraint(std::move(row));
                }
        for (int d = 0; d < D; ++d) {
            const DemandRef& dr = vm.demands[static_cast<std::size_t>(d)];
            // y <= sum_l b and sum_r a <= R*y
            for (int j = 0; j < J; ++j)
                for (int tp = dr.t_lo; tp <= dr.t_hi; ++tp) {
                    Constraint yb;
                    yb.expr.add(1.0, vm.y_id(d, j, tp));
                    for (int l = 0; l < L; ++l) yb.expr.add(-1.0, vm.b_id(j, l, tp));
                    yb.sense = Sense::Le;
                    yb.rhs = 0.0;
                    yb.name = nm("txyb", {dr.ue, dr.tti, j, tp});
                    model.add_constraint(std::move(yb));
                    Constraint ay;
                    for (int r = 0; r < R; ++r) ay.expr.add(1.0, vm.a_id(d, j, r, tp));
                    ay.expr.add(-static_cast<double>(R), vm.y_id(d, j, tp));
                    ay.sense = Sense::Le;
                    ay.rhs = 0.0;
                    ay.name = nm("txay", {dr.ue, dr.tti, j, tp});
                    model.add_constraint(std::move(ay));
                }
            // every demand is served somewhere in its window
            Constraint cover;
            for (int j = 0; j < J; ++j)
                for (int tp = dr.t_lo; tp <= dr.t_hi; ++tp)
                    cover.expr.add(1.0, vm.y_id(d, j, tp));
            cover.sense = Sense::Ge;
            cover.rhs = 1.0;
            cover.name = nm("txcover", {dr.ue, dr.tti});
            model.add_constraint(std::move(cover));
            // integer RB count: at least ceil(bits / best rate) blocks
            std::int64_t best_rate = 0;
            for (int j = 0; j < J; ++j)
                for (int r = 0; r < R; ++r)
                    for (int tp = dr.t_lo; tp <= dr.t_hi; ++tp)
                        best_rate = std::max(best_rate, s.rate(j, dr.ue, r, tp));
            if (best_rate > 0) {
                Constraint need;
                for (int j = 0; j < J; ++j)
                    for (int r = 0; r < R; ++r)
                        for (int tp = dr.t_lo; tp <= dr.t_hi; ++tp)
                            need.expr.add(1.0, vm.a_id(d, j, r, tp));
                need.sense = Sense::Ge;
                need.rhs = static_cast<double>((dr.bits + best_rate - 1) / best_rate);
                need.name = nm("txneed", {dr.ue, dr.tti});
                model.add_constraint(std::move(need));
            }
        }
        // slot service requires a DU binding with capacity
        for (int j = 0; j < J; ++j)
            for (int tp = 0; tp < T; ++tp) {
                const auto& ds = demands_at_slot[static_cast<std::size_t>(tp)];
                if (ds.empty()) continue;
                Constraint row;
                for (int d : ds)
                    for (int r = 0; r < R; ++r) row.expr.add(1.0, vm.a_id(d, j, r, tp));
                for (int l = 0; l < L; ++l) row.expr.add(-static_cast<double>(R), vm.b_id(j, l, tp));
                row.sense = Sense::Le;
                row.rhs = 0.0;
                row.name = nm("txcap", {j, tp});
                model.add_constraint(std::move(row));
            }
        // some DU is active within every distinct demand window
        std::vector<std::pair<int, int>> windows;
        for (int d = 0; d < D; ++d)
            windows.emplace_back(vm.demands[static_cast<std::size_t>(d)].t_lo,
                                 vm.demands[static_cast<std::size_t>(d)].t_hi);
        std::sort(windows.begin(), windows.end());
        windows.erase(std::unique(windows.begin(), windows.end()), windows.end());
        for (const auto& [lo, hi] : windows) {
            Constraint row;
            for (int tp = lo; tp <= hi; ++tp)
                for (int l = 0; l < L; ++l) row.expr.add(1.0, vm.c_id(l, tp));
            row.sense = Sense::Ge;
            row.rhs = 1.0;
            row.name = nm("txwin", {lo, hi});
            model.add_constraint(std::move(row));
        }
    }

    return {std::move(model), std::move(vm)};
}

// Threshold a solved point back into domain terms.  Serve flags are
// recomputed canonically from the RB assignment rather than read from y, so
// spurious y=1 entries never survive decoding.
inline Allocation decode(const Scenario& s, const VarMap& vm, const Point& p,
                         double int_tol = 1e-5) {
    (void)s;
    auto as_bit = [&](VarId v) {
        double x = p.values.at(static_cast<std::size_t>(v));
        if (std::abs(x - std::round(x)) > int_tol)
            throw std::invalid_argument("non-integral binary in point: index " +
                                        std::to_string(v));
        return x >= 0.5;
    };
    Allocation alloc;
    for (int l = 0; l < vm.L; ++l)
        for (int t = 0; t < vm.T; ++t)
            if (as_bit(vm.c_id(l, t))) alloc.du_active.push_back({l, t});
    for (int j = 0; j < vm.J; ++j)
        for (int l = 0; l < vm.L; ++l)
            for (int t = 0; t < vm.T; ++t)
                if (as_bit(vm.b_id(j, l, t))) alloc.du_assign.push_back({j, l, t});
    for (int i = 0; i < vm.I; ++i)
        for (int t = 0; t < vm.T; ++t)
            for (int k = 0; k < vm.K; ++k)
                if (as_bit(vm.u_id(i, t, k))) alloc.demand_flags.push_back({i, t, k});
    for (std::size_t d = 0; d < vm.demands.size(); ++d) {
        const DemandRef& dr = vm.demands[d];
        for (int j = 0; j < vm.J; ++j)
            for (int r = 0; r < vm.R; ++r)
                for (int tp = dr.t_lo; tp <= dr.t_hi; ++tp)
                    if (as_bit(vm.a_id(static_cast<int>(d), j, r, tp)))
                        alloc.rb_assign.push_back({dr.ue, dr.tti, j, r, tp});
    }
    alloc.serve_flags = canonical_serve_flags(alloc.rb_assign);
    alloc.normalize();
    return alloc;
}

// Point with the allocation's binaries and every auxiliary at its minimal
// feasible value.  Used by agreement tests and the model-side oracle path.
inline Point allocation_to_point(const Scenario& s, const VarMap& vm, const Allocation& alloc) {
    (void)s;
    Point p;
    // Model variable count = max id + 1 over the map's contents; derive from
    // the stored ids (the last auxiliary has the largest id).
    VarId maxid = -1;
    auto upd = [&maxid](VarId v) { maxid = std::max(maxid, v); };
    for (VarId v : vm.c_ids) upd(v);
    for (VarId v : vm.b_ids) upd(v);
    for (VarId v : vm.u_ids) upd(v);
    for (const auto& a : vm.a_ids)
        for (VarId v : a) upd(v);
    for (const auto& y : vm.y_ids)
        for (VarId v : y) upd(v);
    for (VarId v : vm.m_ids) upd(v);
    for (const auto& g : vm.gated_sums) upd(g.var);
    for (const auto& m : vm.maxes) upd(m.var);
    for (const auto& z : vm.products) upd(z.var);
    p.values.assign(static_cast<std::size_t>(maxid + 1), 0.0);

    for (const auto& [l, t] : alloc.du_active) p.values[static_cast<std::size_t>(vm.c_id(l, t))] = 1.0;
    for (const auto& [j, l, t] : alloc.du_assign)
        p.values[static_cast<std::size_t>(vm.b_id(j, l, t))] = 1.0;
    for (const auto& [i, t, k] : alloc.demand_flags)
        p.values[static_cast<std::size_t>(vm.u_id(i, t, k))] = 1.0;
    for (const auto& [i, t, j, r, tp] : alloc.rb_assign) {
        int d = vm.demand_index(i, t);
        if (d < 0) throw std::invalid_argument("allocation serves a slot with no demand");
        const DemandRef& dr = vm.demands[static_cast<std::size_t>(d)];
        if (tp < dr.t_lo || tp > dr.t_hi)
            throw std::invalid_argument("allocation serves outside the demand window");
        p.values[static_cast<std::size_t>(vm.a_id(d, j, r, tp))] = 1.0;
    }
    for (const auto& [i, t, j, tp] : alloc.serve_flags) {
        int d = vm.demand_index(i, t);
        if (d < 0) throw std::invalid_argument("serve flag with no demand");
        p.values[static_cast<std::size_t>(vm.y_id(d, j, tp))] = 1.0;
    }
    for (const auto& mx : vm.maxes) {
        double v = 0.0;
        for (const auto& [var, w] : mx.cands)
            v = std::max(v, w * p.values[static_cast<std::size_t>(var)]);
        p.values[static_cast<std::size_t>(mx.var)] = v;
    }
    for (const auto& g : vm.gated_sums) {
        double sum = 0.0;
        for (VarId part : g.parts) sum += p.values[static_cast<std::size_t>(part)];
        p.values[static_cast<std::size_t>(g.var)] =
            p.values[static_cast<std::size_t>(g.gate)] * sum;
    }
    for (const auto& z : vm.products)
        p.values[static_cast<std::size_t>(z.var)] =
            p.values[static_cast<std::size_t>(z.x)] * p.values[static_cast<std::size_t>(z.y)];
    return p;
}

}  // namespace oranjopt
