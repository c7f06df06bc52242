// SPDX-License-Identifier: Apache-2.0
//
// Greedy construction heuristic for the joint problem, used to seed the
// branch-and-bound with a feasible incumbent.  Tries one plan per candidate
// DU (every RU bound to that DU) plus the all-nearest plan (every RU bound to
// its lowest-delay DU), packs demands earliest-deadline-first into as few
// active slots as possible, and returns the cheapest plan that passes the
// independent verifier.  Purely advisory: solver correctness never depends
// on it.

#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "oranjopt/allocation.hpp"
#include "oranjopt/scenario.hpp"
#include "oranjopt/verify.hpp"

namespace oranjopt {

namespace detail_heur {

// Pack all demands given a fixed RU->DU map.  Demands go earliest deadline
// first.  Each demand tries increasing makespans t_cut; within a trial the
// propagation allowance is budget - (t_cut - t)*TTI, already-active slots are
// reused first, and new activations go to the latest slot of the trial
// window.  A demand uses one RU per slot; RB indices are handed out
// consecutively per (RU, slot).
inline std::optional<Allocation> pack_with_du_map(const Scenario& s,
                                                  const std::vector<int>& du_of_ru) {
    struct Dm {
        int ue, tti, klass, t_hi;
        std::int64_t bits;
    };
    std::vector<Dm> demands;
    for (int i = 0; i < s.num_ue; ++i)
        for (int t = 0; t < s.num_tti; ++t) {
            int k = s.demanded_class(i, t);
            if (k < 0) continue;
            double budget = s.classes[static_cast<std::size_t>(k)].delay_budget_ms;
            int span = static_cast<int>(std::floor(budget / s.tti_ms + 1e-9));
            demands.push_back({i, t, k, std::min(s.num_tti - 1, t + span), s.demand(i, t, k)});
        }
    std::sort(demands.begin(), demands.end(), [](const Dm& a, const Dm& b) {
        if (a.t_hi != b.t_hi) return a.t_hi < b.t_hi;
        if (a.tti != b.tti) return a.tti < b.tti;
        return a.ue < b.ue;
    });

    const int T = s.num_tti;
    std::vector<char> slot_active(static_cast<std::size_t>(T), 0);
    std::vector<int> used_rbs(static_cast<std::size_t>(s.num_ru) * T, 0);
    Allocation alloc;

    for (const Dm& d : demands) {
        double budget = s.classes[static_cast<std::size_t>(d.klass)].delay_budget_ms;
        bool placed = false;
        // Larger makespans first: they maximize reuse of already-active slots
        // (fewest new activations); tighter makespans restore propagation
        // allowance for far-bound RUs when the wide trial fails.
        for (int t_cut = d.t_hi; t_cut >= d.tti && !placed; --t_cut) {
            double allowance = budget - (t_cut - d.tti) * s.tti_ms;
            if (allowance < -1e-12) continue;
            std::vector<int> trial_used(used_rbs);
            std::vector<char> trial_active(slot_active);
            std::vector<std::array<int, 3>> taken;  // (j, r, t')
            std::int64_t remaining = d.bits;
            double prop_spent = 0.0;

            auto try_slot = [&](int tp, bool may_activate) {
                if (remaining <= 0) return;
                if (!trial_active[static_cast<std::size_t>(tp)] && !may_activate) return;
                int best_j = -1, best_take = 0;
                double best_d = 0.0;
                for (int j = 0; j < s.num_ru; ++j) {
                    int fr = s.rbs_per_tti - trial_used[static_cast<std::size_t>(j) * T + tp];
                    if (fr <= 0) continue;
                    std::int64_t rate1 = s.rate(j, d.ue, 0, tp);
                    if (rate1 <= 0) continue;
                    int want = static_cast<int>(
                        std::min<std::int64_t>(fr, (remaining + rate1 - 1) / rate1));
                    double dj = s.prop(j, du_of_ru[static_cast<std::size_t>(j)]);
                    if (dj > 0.0) {
                        int cap = static_cast<int>(
                            std::floor((allowance - prop_spent) / dj + 1e-12));
                        want = std::min(want, cap);
                    }
                    if (want <= 0) continue;
                    bool better = best_j < 0;
                    if (!better && (dj == 0.0) != (best_d == 0.0)) better = dj == 0.0;
                    else if (!better && want != best_take) better = want > best_take;
                    if (better) {
                        best_j = j;
                        best_take = want;
                        best_d = dj;
                    }
                }
                if (best_j < 0) return;
                int base = trial_used[static_cast<std::size_t>(best_j) * T + tp];
                for (int k = 0; k < best_take && remaining > 0; ++k) {
                    taken.push_back({best_j, base + k, tp});
                    remaining -= s.rate(best_j, d.ue, base + k, tp);
                    prop_spent += best_d;
                    ++trial_used[static_cast<std::size_t>(best_j) * T + tp];
                }
                trial_active[static_cast<std::size_t>(tp)] = 1;
            };

            for (int tp = d.tti; tp <= t_cut && remaining > 0; ++tp)
                if (trial_active[static_cast<std::size_t>(tp)]) try_slot(tp, false);
            for (int tp = t_cut; tp >= d.tti && remaining > 0; --tp)
                if (!trial_active[static_cast<std::size_t>(tp)]) try_slot(tp, true);

            if (remaining <= 0) {
                used_rbs = std::move(trial_used);
                slot_active = std::move(trial_active);
                for (const auto& [j, r, tp] : taken)
                    alloc.rb_assign.push_back({d.ue, d.tti, j, r, tp});
                placed = true;
            }
        }
        if (!placed) return std::nullopt;
    }

    // Bindings and activations only where service happened.
    std::vector<std::array<int, 2>> used;
    for (const auto& [i, t, j, r, tp] : alloc.rb_assign) {
        (void)i;
        (void)t;
        (void)r;
        used.push_back({j, tp});
    }
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    for (const auto& [j, tp] : used) {
        int l = du_of_ru[static_cast<std::size_t>(j)];
        alloc.du_assign.push_back({j, l, tp});
        alloc.du_active.push_back({l, tp});
    }
    for (int i = 0; i < s.num_ue; ++i)
        for (int t = 0; t < s.num_tti; ++t) {
            int k = s.demanded_class(i, t);
            if (k >= 0) alloc.demand_flags.push_back({i, t, k});
        }
    alloc.serve_flags = canonical_serve_flags(alloc.rb_assign);
    alloc.normalize();
    return alloc;
}

}  // namespace detail_heur

// Best greedy allocation over the candidate DU maps, or nullopt when none of
// the plans verifies feasible.
inline std::optional<Allocation> greedy_joint_allocation(const Scenario& s,
                                                         const VerifyOptions& vopts = {}) {
    std::optional<Allocation> best;
    double best_energy = 0.0;
    auto consider = [&](const std::vector<int>& du_map) {
        auto alloc = detail_heur::pack_with_du_map(s, du_map);
        if (!alloc) return;
        ConstraintReport rep = verify(s, *alloc, vopts);
        if (!rep.feasible()) return;
        if (!best || rep.energy_total_wh < best_energy - 1e-12) {
            best = std::move(alloc);
            best_energy = rep.energy_total_wh;
        }
    };
    for (int l = 0; l < s.num_du; ++l)
        consider(std::vector<int>(static_cast<std::size_t>(s.num_ru), l));
    std::vector<int> nearest(static_cast<std::size_t>(s.num_ru), 0);
    for (int j = 0; j < s.num_ru; ++j) {
        int bl = 0;
        for (int l = 1; l < s.num_du; ++l)
            if (s.prop(j, l) < s.prop(j, bl)) bl = l;
        nearest[static_cast<std::size_t>(j)] = bl;
    }
    consider(nearest);
    return best;
}

}  // namespace oranjopt
