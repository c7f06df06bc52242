// SPDX-License-Identifier: Apache-2.0
//
// Brute-force reference optimizers, used by tests and the CLI verify
// --oracle path.  enumerate_domain works purely in domain terms (service
// patterns and DU bindings, feasibility via the independent verifier);
// enumerate_model enumerates binary assignments of an arbitrary model whose
// continuous auxiliaries all have lower-envelope form.  Neither shares
// constraint code with the model builder or the solver.

#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "oranjopt/allocation.hpp"
#include "oranjopt/milp_model.hpp"
#include "oranjopt/scenario.hpp"
#include "oranjopt/verify.hpp"

namespace oranjopt {

struct DomainCaps {
    int max_demands = 6;
    int max_slots_per_demand = 14;         // J * R * window
    long max_patterns_per_demand = 1200;
    long max_leaf_evals = 4000000;
};

struct DomainOptimum {
    bool feasible = false;
    Allocation alloc;
    double energy = 0.0;
};

namespace detail_oracle {

struct Pattern {
    std::vector<std::array<int, 3>> slots;  // (j, r, t') sorted
};

inline bool pattern_less(const Pattern& a, const Pattern& b) { return a.slots < b.slots; }

}  // namespace detail_oracle

// Exhaustive search over minimal satisfying service patterns per demand and
// all DU bindings of the used (RU, TTI) pairs.  Minimality is lossless: any
// feasible allocation contains a minimal satisfying sub-allocation that is
// feasible and no more expensive.  Ties break to the lexicographically
// smallest rb_assign, then du_assign.
inline DomainOptimum enumerate_domain(const Scenario& s, const DomainCaps& caps = {},
                                      const VerifyOptions& vopts = {}) {
    using detail_oracle::Pattern;

    struct Demand {
        int ue, tti, klass;
        std::int64_t bits;
    };
    std::vector<Demand> demands;
    for (int i = 0; i < s.num_ue; ++i)
        for (int t = 0; t < s.num_tti; ++t) {
            int k = s.demanded_class(i, t);
            if (k >= 0) demands.push_back({i, t, k, s.demand(i, t, k)});
        }
    if (static_cast<int>(demands.size()) > caps.max_demands)
        throw std::invalid_argument("oracle caps exceeded: " + std::to_string(demands.size()) +
                                    " demands");

    DomainOptimum best;
    if (demands.empty()) {
        best.feasible = true;
        best.energy = 0.0;
        return best;
    }

    // Minimal satisfying patterns per demand, honoring the one-RU-per-TTI rule
    // when enabled.
    std::vector<std::vector<Pattern>> patterns(demands.size());
    for (std::size_t d = 0; d < demands.size(); ++d) {
        const Demand& dm = demands[d];
        double budget = s.classes[static_cast<std::size_t>(dm.klass)].delay_budget_ms;
        int span = static_cast<int>(std::floor(budget / s.tti_ms + 1e-9));
        int t_hi = std::min(s.num_tti - 1, dm.tti + span);
        std::vector<std::array<int, 3>> slots;
        for (int j = 0; j < s.num_ru; ++j)
            for (int r = 0; r < s.rbs_per_tti; ++r)
                for (int tp = dm.tti; tp <= t_hi; ++tp) slots.push_back({j, r, tp});
        std::sort(slots.begin(), slots.end());
        if (static_cast<int>(slots.size()) > caps.max_slots_per_demand)
            throw std::invalid_argument("oracle caps exceeded: " + std::to_string(slots.size()) +
                                        " candidate slots for one demand");

        const int n = static_cast<int>(slots.size());
        for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
            Pattern p;
            double rate_sum = 0.0;
            for (int b = 0; b < n; ++b)
                if (mask & (1u << b)) {
                    const auto& [j, r, tp] = slots[static_cast<std::size_t>(b)];
                    p.slots.push_back(slots[static_cast<std::size_t>(b)]);
                    rate_sum += static_cast<double>(s.rate(j, dm.ue, r, tp));
                }
            if (rate_sum < static_cast<double>(dm.bits)) continue;
            // Minimality: dropping any slot must break coverage.
            bool minimal = true;
            for (const auto& [j, r, tp] : p.slots)
                if (rate_sum - static_cast<double>(s.rate(j, dm.ue, r, tp)) >=
                    static_cast<double>(dm.bits)) {
                    minimal = false;
                    break;
                }
            if (!minimal) continue;
            if (vopts.ru_unique_per_tti) {
                std::map<int, int> ru_at;
                bool ok = true;
                for (const auto& [j, r, tp] : p.slots) {
                    (void)r;
                    auto it = ru_at.find(tp);
                    if (it == ru_at.end())
                        ru_at[tp] = j;
                    else if (it->second != j)
                        ok = false;
                }
                if (!ok) continue;
            }
            patterns[d].push_back(std::move(p));
            if (static_cast<long>(patterns[d].size()) > caps.max_patterns_per_demand)
                throw std::invalid_argument("oracle caps exceeded: too many service patterns");
        }
        if (patterns[d].empty()) return best;  // demand cannot be covered: infeasible
        std::sort(patterns[d].begin(), patterns[d].end(), detail_oracle::pattern_less);
    }

    long leaf_budget = caps.max_leaf_evals;
    std::vector<int> choice(demands.size(), -1);
    std::map<std::array<int, 3>, int> rb_used;  // (j,r,t') occupancy

    auto evaluate_leaf = [&](DomainOptimum& acc) {
        // Used (j,t') pairs in deterministic order.
        std::vector<std::pair<int, int>> used;
        for (std::size_t d = 0; d < demands.size(); ++d)
            for (const auto& [j, r, tp] : patterns[d][static_cast<std::size_t>(choice[d])].slots) {
                (void)r;
                used.emplace_back(j, tp);
            }
        std::sort(used.begin(), used.end());
        used.erase(std::unique(used.begin(), used.end()), used.end());

        std::vector<int> du_choice(used.size(), 0);
        while (true) {
            if (--leaf_budget < 0)
                throw std::invalid_argument("oracle caps exceeded: leaf evaluation budget");
            Allocation alloc;
            for (std::size_t d = 0; d < demands.size(); ++d)
                for (const auto& [j, r, tp] :
                     patterns[d][static_cast<std::size_t>(choice[d])].slots)
                    alloc.rb_assign.push_back({demands[d].ue, demands[d].tti, j, r, tp});
            for (std::size_t uidx = 0; uidx < used.size(); ++uidx)
                alloc.du_assign.push_back({used[uidx].first, du_choice[uidx], used[uidx].second});
            for (const auto& [j, l, tp] : alloc.du_assign) {
                (void)j;
                alloc.du_active.push_back({l, tp});
            }
            for (const auto& dm : demands) alloc.demand_flags.push_back({dm.ue, dm.tti, dm.klass});
            alloc.serve_flags = canonical_serve_flags(alloc.rb_assign);
            alloc.normalize();

            ConstraintReport rep = verify(s, alloc, vopts);
            if (rep.feasible()) {
                double e = rep.energy_total_wh;
                bool better = !acc.feasible || e < acc.energy - 1e-12;
                bool tie = acc.feasible && std::abs(e - acc.energy) <= 1e-12;
                if (tie) {
                    better = alloc.rb_assign < acc.alloc.rb_assign ||
                             (alloc.rb_assign == acc.alloc.rb_assign &&
                              alloc.du_assign < acc.alloc.du_assign);
                }
                if (better) {
                    acc.feasible = true;
                    acc.energy = e;
                    acc.alloc = std::move(alloc);
                }
            }
            // Next DU combination (odometer).
            std::size_t pos = 0;
            while (pos < du_choice.size()) {
                if (++du_choice[pos] < s.num_du) break;
                du_choice[pos] = 0;
                ++pos;
            }
            if (pos == du_choice.size()) break;
        }
    };

    // Backtracking over demands with RB-exclusivity pruning.
    auto rec = [&](auto&& self, std::size_t d) -> void {
        if (d == demands.size()) {
            evaluate_leaf(best);
            return;
        }
        for (std::size_t pi = 0; pi < patterns[d].size(); ++pi) {
            const Pattern& p = patterns[d][pi];
            bool clash = false;
            for (const auto& slot : p.slots)
                if (rb_used.count(slot)) {
                    clash = true;
                    break;
                }
            if (clash) continue;
            for (const auto& slot : p.slots) rb_used[slot] = 1;
            choice[d] = static_cast<int>(pi);
            self(self, d + 1);
            for (const auto& slot : p.slots) rb_used.erase(slot);
            choice[d] = -1;
        }
    };
    rec(rec, 0);
    return best;
}

struct ModelOptimum {
    bool feasible = false;
    Point point;
    double objective = 0.0;
};

// Exhaustive enumeration of the free binaries of an arbitrary model.  Every
// continuous variable is set to its minimal feasible value, derived from the
// constraints in which it is the only continuous term ("lower-envelope
// form"); rows mixing several continuous variables are then pure checks.
// Rejects models where a larger continuous value could help feasibility or
// the (minimized) objective, since minimal values would then be wrong.
inline ModelOptimum enumerate_model(const MilpModel& model, int max_free_binaries = 25) {
    std::vector<VarId> free_bins = model.free_binaries();
    if (static_cast<int>(free_bins.size()) > max_free_binaries)
        throw std::invalid_argument("enumerate_model cap exceeded: " +
                                    std::to_string(free_bins.size()) + " free binaries");

    const std::size_t n = model.num_variables();
    std::vector<bool> is_continuous(n, false);
    for (std::size_t j = 0; j < n; ++j)
        is_continuous[j] = model.variables()[j].kind == VarKind::Continuous;

    // Classify rows: defining rows touch exactly one continuous variable.
    struct RowRef {
        const Constraint* c;
        int cont_count;
        VarId cont_var;
        double cont_coef;
    };
    std::vector<RowRef> rows;
    rows.reserve(model.num_constraints());
    for (const auto& c : model.constraints()) {
        RowRef rr{&c, 0, -1, 0.0};
        for (const auto& t : c.expr.terms)
            if (is_continuous[static_cast<std::size_t>(t.var)]) {
                ++rr.cont_count;
                rr.cont_var = t.var;
                rr.cont_coef = t.coef;
            }
        rows.push_back(rr);
    }
    // Envelope-form validation.
    for (const auto& t : model.objective().terms)
        if (is_continuous[static_cast<std::size_t>(t.var)] && t.coef < 0.0)
            throw std::invalid_argument(
                "enumerate_model: continuous variable with negative objective coefficient "
                "lacks lower-envelope form");
    for (const auto& rr : rows) {
        if (rr.cont_count < 2) continue;
        for (const auto& t : rr.c->expr.terms) {
            if (!is_continuous[static_cast<std::size_t>(t.var)]) continue;
            bool raising_helps = (rr.c->sense == Sense::Ge && t.coef > 0.0) ||
                                 (rr.c->sense == Sense::Le && t.coef < 0.0) ||
                                 rr.c->sense == Sense::Eq;
            if (raising_helps)
                throw std::invalid_argument(
                    "enumerate_model: auxiliary without lower-envelope form in row " +
                    rr.c->name);
        }
    }

    // Precompute per-row fixed contributions and free-binary term lists so the
    // mask loop touches only what changes.
    std::vector<bool> is_free_bin(n, false);
    for (VarId v : free_bins) is_free_bin[static_cast<std::size_t>(v)] = true;
    const std::size_t nrows = rows.size();
    std::vector<double> row_fixed(nrows, 0.0);
    std::vector<std::vector<std::pair<VarId, double>>> row_bin_terms(nrows);
    std::vector<std::vector<std::pair<VarId, double>>> row_cont_terms(nrows);
    for (std::size_t r = 0; r < nrows; ++r) {
        const Constraint& c = *rows[r].c;
        row_fixed[r] = c.expr.constant;
        for (const auto& t : c.expr.terms) {
            std::size_t j = static_cast<std::size_t>(t.var);
            if (is_continuous[j])
                row_cont_terms[r].emplace_back(t.var, t.coef);
            else if (is_free_bin[j])
                row_bin_terms[r].emplace_back(t.var, t.coef);
            else
                row_fixed[r] += t.coef * model.variables()[j].lower;  // pinned binary
        }
    }
    std::vector<std::vector<std::size_t>> defining(n);
    std::vector<std::size_t> check_rows;
    for (std::size_t r = 0; r < nrows; ++r) {
        if (rows[r].cont_count == 1)
            defining[static_cast<std::size_t>(rows[r].cont_var)].push_back(r);
        else
            check_rows.push_back(r);
    }
    std::vector<VarId> cont_vars;
    for (std::size_t j = 0; j < n; ++j)
        if (is_continuous[j]) cont_vars.push_back(static_cast<VarId>(j));

    double obj_fixed = model.objective().constant;
    std::vector<std::pair<VarId, double>> obj_bin_terms, obj_cont_terms;
    for (const auto& t : model.objective().terms) {
        std::size_t j = static_cast<std::size_t>(t.var);
        if (is_continuous[j])
            obj_cont_terms.emplace_back(t.var, t.coef);
        else if (is_free_bin[j])
            obj_bin_terms.emplace_back(t.var, t.coef);
        else
            obj_fixed += t.coef * model.variables()[j].lower;
    }

    std::vector<double> x(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) x[j] = model.variables()[j].lower;

    std::vector<double> row_val(nrows, 0.0);
    ModelOptimum best;
    const std::uint64_t combos = 1ull << free_bins.size();
    for (std::uint64_t mask = 0; mask < combos; ++mask) {
        for (std::size_t b = 0; b < free_bins.size(); ++b)
            x[static_cast<std::size_t>(free_bins[b])] = static_cast<double>((mask >> b) & 1ull);
        for (std::size_t r = 0; r < nrows; ++r) {
            double v = row_fixed[r];
            for (const auto& [var, coef] : row_bin_terms[r])
                v += coef * x[static_cast<std::size_t>(var)];
            row_val[r] = v;  // everything except continuous terms
        }
        bool feasible = true;
        for (VarId jv : cont_vars) {
            std::size_t j = static_cast<std::size_t>(jv);
            double lo = model.variables()[j].lower;
            double hi = model.variables()[j].upper;
            for (std::size_t r : defining[j]) {
                double bound = (rows[r].c->rhs - row_val[r]) / rows[r].cont_coef;
                bool lower_bound = (rows[r].c->sense == Sense::Ge && rows[r].cont_coef > 0.0) ||
                                   (rows[r].c->sense == Sense::Le && rows[r].cont_coef < 0.0);
                if (rows[r].c->sense == Sense::Eq) {
                    lo = std::max(lo, bound);
                    hi = std::min(hi, bound);
                } else if (lower_bound) {
                    lo = std::max(lo, bound);
                } else {
                    hi = std::min(hi, bound);
                }
            }
            if (lo > hi + 1e-9) {
                feasible = false;
                break;
            }
            x[j] = lo;
        }
        if (!feasible) continue;
        for (std::size_t r : check_rows) {
            double lhs = row_val[r];
            for (const auto& [var, coef] : row_cont_terms[r])
                lhs += coef * x[static_cast<std::size_t>(var)];
            const Constraint& c = *rows[r].c;
            double resid = c.sense == Sense::Le   ? lhs - c.rhs
                           : c.sense == Sense::Ge ? c.rhs - lhs
                                                  : std::abs(lhs - c.rhs);
            if (resid > 1e-9) {
                feasible = false;
                break;
            }
        }
        if (!feasible) continue;
        double obj = obj_fixed;
        for (const auto& [var, coef] : obj_bin_terms) obj += coef * x[static_cast<std::size_t>(var)];
        for (const auto& [var, coef] : obj_cont_terms)
            obj += coef * x[static_cast<std::size_t>(var)];
        if (!best.feasible || obj < best.objective - 1e-12) {
            best.feasible = true;
            best.objective = obj;
            best.point.values = x;
        }
    }
    return best;
}

}  // namespace oranjopt
