// SPDX-License-Identifier: Apache-2.0
//
// Independent feasibility checker for allocations.  Re-implements every
// constraint in its original nonlinear form — the true max over served slots
// for the scheduling delay, the literal product sum for propagation — with
// plain loops over the allocation sets.  Shares no constraint code with the
// MILP layer; that separation is what makes it a meaningful check on the
// model builder and solver.

#pragma once

#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oranjopt/allocation.hpp"
#include "oranjopt/scenario.hpp"

namespace oranjopt {

struct VerifyOptions {
    bool ru_unique_per_tti = true;  // the stated one-RU-per-demand-per-TTI rule
    double tol = 1e-9;
};

struct Violation {
    std::string equation;  // "eq2".."eq11", or "domain" for structural issues
    std::string detail;
    double residual = 0.0;
};

struct ConstraintReport {
    std::vector<Violation> violations;
    double energy_total_wh = 0.0;
    std::vector<double> energy_per_du_wh;
    bool feasible() const { return violations.empty(); }

    std::string summary() const {
        std::ostringstream out;
        if (feasible())
            out << "feasible, energy " << numfmt::to_decimal(energy_total_wh) << " Wh";
        else {
            out << violations.size() << " violation(s):";
            for (const auto& v : violations) out << "\n  [" << v.equation << "] " << v.detail;
        }
        return out.str();
    }
};

// Total and per-DU energy: static energy for every active (DU,TTI) pair plus
// dynamic energy per allocated RB, charged to the DU its RU is bound to at
// the service slot.  Throws when an RB has no (or an ambiguous) DU binding.
inline std::pair<double, std::vector<double>> energy_of(const Scenario& s,
                                                        const Allocation& alloc) {
    std::vector<double> per_du(static_cast<std::size_t>(s.num_du), 0.0);
    for (const auto& [l, t] : alloc.du_active) {
        (void)t;
        per_du[static_cast<std::size_t>(l)] += s.e_static_wh[static_cast<std::size_t>(l)];
    }
    std::map<std::pair<int, int>, std::vector<int>> bound;  // (j,t') -> DUs
    for (const auto& [j, l, tp] : alloc.du_assign) bound[{j, tp}].push_back(l);
    for (const auto& [i, t, j, r, tp] : alloc.rb_assign) {
        (void)i;
        (void)t;
        (void)r;
        auto it = bound.find({j, tp});
        if (it == bound.end() || it->second.empty())
            throw std::runtime_error("energy accounting: RB at (ru " + std::to_string(j) +
                                     ", t' " + std::to_string(tp) + ") has no DU binding");
        if (it->second.size() > 1)
            throw std::runtime_error("energy accounting: RB at (ru " + std::to_string(j) +
                                     ", t' " + std::to_string(tp) + ") has multiple DU bindings");
        int l = it->second.front();
        per_du[static_cast<std::size_t>(l)] += s.e_dynamic_wh[static_cast<std::size_t>(l)];
    }
    double total = 0.0;
    for (double e : per_du) total += e;
    return {total, per_du};
}

inline ConstraintReport verify(const Scenario& s, const Allocation& alloc,
                               const VerifyOptions& opts = {}) {
    ConstraintReport rep;
    auto flag = [&](const std::string& eq, const std::string& detail, double residual = 0.0) {
        rep.violations.push_back({eq, detail, residual});
    };
    auto spot = [](std::initializer_list<int> idx) {
        std::string out;
        for (int v : idx) {
            out += out.empty() ? "(" : ",";
            out += std::to_string(v);
        }
        return out + ")";
    };

    // Index-range and no-service-without-demand checks.
    for (const auto& [i, t, j, r, tp] : alloc.rb_assign) {
        if (i < 0 || i >= s.num_ue || t < 0 || t >= s.num_tti || j < 0 || j >= s.num_ru || r < 0 ||
            r >= s.rbs_per_tti || tp < 0 || tp >= s.num_tti) {
            flag("domain", "rb_assign index out of range at " + spot({i, t, j, r, tp}));
            return rep;
        }
        if (tp < t)
            flag("domain", "rb_assign serves before the demand arrives at " + spot({i, t, j, r, tp}));
        if (s.demanded_class(i, t) < 0)
            flag("domain", "rb_assign serves a slot with no demand at " + spot({i, t, j, r, tp}));
    }
    for (const auto& [j, l, tp] : alloc.du_assign)
        if (j < 0 || j >= s.num_ru || l < 0 || l >= s.num_du || tp < 0 || tp >= s.num_tti) {
            flag("domain", "du_assign index out of range at " + spot({j, l, tp}));
            return rep;
        }
    for (const auto& [l, t] : alloc.du_active)
        if (l < 0 || l >= s.num_du || t < 0 || t >= s.num_tti) {
            flag("domain", "du_active index out of range at " + spot({l, t}));
            return rep;
        }
    for (const auto& [i, t, k] : alloc.demand_flags)
        if (i < 0 || i >= s.num_ue || t < 0 || t >= s.num_tti || k < 0 || k >= s.num_classes()) {
            flag("domain", "demand_flags index out of range at " + spot({i, t, k}));
            return rep;
        }

    // Canonical serve flags: y is defined by the RB assignment.
    {
        auto canon = canonical_serve_flags(alloc.rb_assign);
        std::vector<std::array<int, 4>> given = alloc.serve_flags;
        std::sort(given.begin(), given.end());
        if (given != canon)
            flag("eq9", "serve_flags differ from the canonical image of rb_assign");
    }

    // Demand indicator flags must equal the demand data (the indicator is
    // forced to one exactly where bits arrived).
    {
        std::set<std::array<int, 3>> flags(alloc.demand_flags.begin(), alloc.demand_flags.end());
        for (int i = 0; i < s.num_ue; ++i)
            for (int t = 0; t < s.num_tti; ++t)
                for (int k = 0; k < s.num_classes(); ++k) {
                    bool want = s.demand(i, t, k) > 0;
                    bool have = flags.count({i, t, k}) > 0;
                    if (want && !have)
                        flag("eq4", "demand indicator missing at " + spot({i, t, k}));
                    if (!want && have)
                        flag("eq4", "demand indicator set without demand at " + spot({i, t, k}));
                }
        // One traffic type per (i,t).
        std::map<std::pair<int, int>, int> per_slot;
        for (const auto& [i, t, k] : alloc.demand_flags) {
            (void)k;
            ++per_slot[{i, t}];
        }
        for (const auto& [it, n] : per_slot)
            if (n > 1)
                flag("eq11", "more than one traffic type flagged at " + spot({it.first, it.second}),
                     static_cast<double>(n - 1));
    }

    std::map<std::pair<int, int>, std::vector<int>> bound;  // (j,t') -> DUs
    for (const auto& [j, l, tp] : alloc.du_assign) bound[{j, tp}].push_back(l);
    std::set<std::array<int, 2>> active(alloc.du_active.begin(), alloc.du_active.end());

    // One DU per RU per TTI; bindings imply activation.
    for (const auto& [jt, dus] : bound) {
        if (dus.size() > 1)
            flag("eq7", "RU bound to multiple DUs at " + spot({jt.first, jt.second}),
                 static_cast<double>(dus.size() - 1));
        for (int l : dus)
            if (!active.count({l, jt.second}))
                flag("eq10", "RU " + std::to_string(jt.first) + " bound to inactive DU " +
                                 std::to_string(l) + " at t' " + std::to_string(jt.second));
    }

    // RB exclusivity across demands.
    {
        std::map<std::array<int, 3>, int> rb_use;  // (j,r,t')
        for (const auto& [i, t, j, r, tp] : alloc.rb_assign) {
            (void)i;
            (void)t;
            ++rb_use[{j, r, tp}];
        }
        for (const auto& [key, n] : rb_use)
            if (n > 1)
                flag("eq5", "RB assigned to multiple demands at " + spot({key[0], key[1], key[2]}),
                     static_cast<double>(n - 1));
    }

    // Per-demand checks.
    for (int i = 0; i < s.num_ue; ++i) {
        for (int t = 0; t < s.num_tti; ++t) {
            int k = s.demanded_class(i, t);
            if (k < 0) continue;
            std::int64_t need = s.demand(i, t, k);

            std::vector<std::array<int, 3>> rbs;  // (j,r,t') for this demand
            for (const auto& [ii, tt, j, r, tp] : alloc.rb_assign)
                if (ii == i && tt == t) rbs.push_back({j, r, tp});

            // Served rate covers the demand.
            double rate_sum = 0.0;
            for (const auto& [j, r, tp] : rbs)
                if (tp >= t) rate_sum += static_cast<double>(s.rate(j, i, r, tp));
            if (rate_sum + opts.tol < static_cast<double>(need))
                flag("eq3",
                     "demand at " + spot({i, t}) + " served " + numfmt::to_decimal(rate_sum) +
                         " of " + std::to_string(need) + " bits",
                     static_cast<double>(need) - rate_sum);

            // Per-RB RU uniqueness, and optionally per-TTI.
            std::map<std::pair<int, int>, std::set<int>> rus_at;  // (r,t') -> RUs
            std::map<int, std::set<int>> rus_at_tti;
            for (const auto& [j, r, tp] : rbs) {
                rus_at[{r, tp}].insert(j);
                rus_at_tti[tp].insert(j);
            }
            for (const auto& [key, rus] : rus_at)
                if (rus.size() > 1)
                    flag("eq6", "demand at " + spot({i, t}) + " uses multiple RUs for RB " +
                                    spot({key.first, key.second}),
                         static_cast<double>(rus.size() - 1));
            if (opts.ru_unique_per_tti)
                for (const auto& [tp, rus] : rus_at_tti)
                    if (rus.size() > 1)
                        flag("eq6", "demand at " + spot({i, t}) + " served by multiple RUs in t' " +
                                        std::to_string(tp),
                             static_cast<double>(rus.size() - 1));

            // Serving RUs need a DU binding.
            for (const auto& [tp, rus] : rus_at_tti)
                for (int j : rus)
                    if (!bound.count({j, tp}))
                        flag("eq8", "serving RU " + std::to_string(j) + " unbound at t' " +
                                        std::to_string(tp));

            // End-to-end delay: scheduling makespan plus per-RB propagation
            // through the bound DU, against the class budget.
            int last = t;
            for (const auto& [j, r, tp] : rbs) {
                (void)j;
                (void)r;
                last = std::max(last, tp);
            }
            double sched_ms = rbs.empty() ? 0.0 : (last - t) * s.tti_ms;
            double prop_ms = 0.0;
            for (const auto& [j, r, tp] : rbs) {
                (void)r;
                auto it = bound.find({j, tp});
                if (it == bound.end()) continue;  // flagged as eq8 above
                for (int l : it->second) prop_ms += s.prop(j, l);
            }
            double budget = s.classes[static_cast<std::size_t>(k)].delay_budget_ms;
            double total = sched_ms + prop_ms;
            if (total > budget + opts.tol)
                flag("eq2",
                     "demand at " + spot({i, t, k}) + " delay " + numfmt::to_decimal(total) +
                         " ms exceeds budget " + numfmt::to_decimal(budget) + " ms",
                     total - budget);
        }
    }

    // Energy accounting (only meaningful when the binding structure is sound).
    try {
        auto [total, per_du] = energy_of(s, alloc);
        rep.energy_total_wh = total;
        rep.energy_per_du_wh = std::move(per_du);
    } catch (const std::runtime_error&) {
        rep.energy_per_du_wh.assign(static_cast<std::size_t>(s.num_du), 0.0);
    }
    return rep;
}

}  // namespace oranjopt
