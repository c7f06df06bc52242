// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "oranjopt/branch_and_bound.hpp"
#include "oranjopt/joint_model.hpp"
#include "oranjopt/oracle.hpp"
#include "oranjopt/verify.hpp"
#include "domain_fixtures.hpp"

using namespace oranjopt;
using namespace oranjopt::testutil;

namespace {

SolverConfig exact_cfg() {
    SolverConfig cfg;
    cfg.rel_gap = 0.0;
    cfg.time_limit_s = 120.0;
    return cfg;
}

TEST(JointModel, SectionThreePresetCounts) {
    ScenarioConfig cfg;  // defaults are the full-size setup
    Scenario s = generate(cfg, 1);
    auto [model, vm] = build_joint(s);
    EXPECT_EQ(vm.c_ids.size(), 30u);   // L * T
    EXPECT_EQ(vm.b_ids.size(), 180u);  // J * L * T
    EXPECT_EQ(vm.u_ids.size(), 240u);  // I * T * K
    EXPECT_GT(model.num_constraints(), 0u);
}

TEST(JointModel, ZeroDemandOptimizesToZero) {
    Scenario s = zero_demand_default();
    auto [model, vm] = build_joint(s);
    MilpOutcome out = solve_milp(model, exact_cfg());
    ASSERT_EQ(out.status, MilpStatus::Optimal);
    EXPECT_NEAR(out.objective, 0.0, 1e-9);
    Allocation alloc = decode(s, vm, out.incumbent);
    EXPECT_TRUE(alloc.du_active.empty());
    EXPECT_TRUE(alloc.rb_assign.empty());
}

TEST(JointModel, TinyInstanceOptimumIsSixViaFarCheapDu) {
    Scenario s = tiny6();
    auto [model, vm] = build_joint(s);
    MilpOutcome out = solve_milp(model, exact_cfg());
    ASSERT_EQ(out.status, MilpStatus::Optimal);
    EXPECT_NEAR(out.objective, 6.0, 1e-6);

    Allocation alloc = decode(s, vm, out.incumbent);
    std::vector<std::array<int, 5>> want_rb = {{0, 0, 0, 0, 0}};
    std::vector<std::array<int, 3>> want_du = {{0, 1, 0}};
    std::vector<std::array<int, 2>> want_active = {{1, 0}};
    EXPECT_EQ(alloc.rb_assign, want_rb);
    EXPECT_EQ(alloc.du_assign, want_du);
    EXPECT_EQ(alloc.du_active, want_active);

    ConstraintReport rep = verify(s, alloc);
    EXPECT_TRUE(rep.feasible()) << rep.summary();
    EXPECT_NEAR(rep.energy_total_wh, 6.0, 1e-9);
    auto [total, per_du] = energy_of(s, alloc);
    EXPECT_NEAR(total, 6.0, 1e-9);
    ASSERT_EQ(per_du.size(), 2u);
    EXPECT_NEAR(per_du[0], 0.0, 1e-12);
    EXPECT_NEAR(per_du[1], 6.0, 1e-12);
}

TEST(JointModel, TinyInfeasibleVariant) {
    Scenario s = tiny_infeasible();
    auto [model, vm] = build_joint(s);
    (void)vm;
    MilpOutcome out = solve_milp(model, exact_cfg());
    EXPECT_EQ(out.status, MilpStatus::Infeasible);
}

TEST(JointModel, DecodeAllZeroPointIsEmpty) {
    Scenario s = tiny6();
    auto [model, vm] = build_joint(s);
    Point zeros;
    zeros.values.assign(model.num_variables(), 0.0);
    Allocation alloc = decode(s, vm, zeros);
    EXPECT_TRUE(alloc.rb_assign.empty());
    EXPECT_TRUE(alloc.du_assign.empty());
    EXPECT_TRUE(alloc.du_active.empty());
    EXPECT_TRUE(alloc.demand_flags.empty());
    EXPECT_TRUE(alloc.serve_flags.empty());
}

TEST(JointModel, DecodeRecomputesServeFlagsCanonically) {
    Scenario s = tiny6();
    auto [model, vm] = build_joint(s);
    Point p;
    p.values.assign(model.num_variables(), 0.0);
    p.values[static_cast<std::size_t>(vm.a_id(0, 0, 0, 0))] = 1.0;  // a set, y left at zero
    Allocation alloc = decode(s, vm, p);
    std::vector<std::array<int, 4>> want = {{0, 0, 0, 0}};
    EXPECT_EQ(alloc.serve_flags, want);
}

TEST(JointModel, DecodeRejectsFractionalBinaries) {
    Scenario s = tiny6();
    auto [model, vm] = build_joint(s);
    Point p;
    p.values.assign(model.num_variables(), 0.0);
    p.values[static_cast<std::size_t>(vm.a_id(0, 0, 0, 0))] = 0.4;
    EXPECT_THROW(decode(s, vm, p), std::invalid_argument);
}

TEST(JointModel, BuildRejectsInvalidScenario) {
    Scenario s = tiny6();
    s.classes[0].delay_budget_ms = -1.0;
    EXPECT_THROW(build_joint(s), std::invalid_argument);
}

TEST(Verify, EmptiedDuActiveTriggersEq10) {
    Scenario s = tiny6();
    auto [model, vm] = build_joint(s);
    MilpOutcome out = solve_milp(model, exact_cfg());
    ASSERT_TRUE(out.has_incumbent);
    Allocation alloc = decode(s, vm, out.incumbent);
    alloc.du_active.clear();
    ConstraintReport rep = verify(s, alloc);
    ASSERT_FALSE(rep.feasible());
    bool saw_eq10 = false;
    for (const auto& v : rep.violations) saw_eq10 |= v.equation == "eq10";
    EXPECT_TRUE(saw_eq10);
}

TEST(Verify, LateServiceTriggersEq2WithMillisecondResidual) {
    // 5 TTIs so the allocation can (illegally) serve at t' = t + 3.
    Scenario s = tiny6();
    s.num_tti = 5;
    s.demand_bits.assign(static_cast<std::size_t>(s.num_tti), 0);
    s.demand(0, 0, 0) = 50;
    s.rate_bits.assign(static_cast<std::size_t>(s.num_tti) * s.rbs_per_tti, 350);
    Allocation alloc;
    alloc.rb_assign = {{0, 0, 0, 0, 3}};
    alloc.du_assign = {{0, 0, 3}};
    alloc.du_active = {{0, 3}};
    alloc.demand_flags = {{0, 0, 0}};
    alloc.serve_flags = canonical_serve_flags(alloc.rb_assign);
    ConstraintReport rep = verify(s, alloc);
    ASSERT_FALSE(rep.feasible());
    bool found = false;
    for (const auto& v : rep.violations)
        if (v.equation == "eq2") {
            EXPECT_NEAR(v.residual, 1.0, 1e-9);  // 3 ms scheduling vs 2 ms budget
            found = true;
        }
    EXPECT_TRUE(found) << rep.summary();
}

TEST(Verify, EnergyExamples) {
    Scenario s = tiny6();
    Allocation empty;
    auto [t0, p0] = energy_of(s, empty);
    EXPECT_DOUBLE_EQ(t0, 0.0);
    EXPECT_EQ(p0, (std::vector<double>{0.0, 0.0}));

    // Two active TTIs on DU0 at 10 kWh static, no RBs.
    ScenarioConfig cfg;
    Scenario big = generate(cfg, 1);
    Allocation idle;
    idle.du_active = {{0, 0}, {0, 1}};
    auto [t1, p1] = energy_of(big, idle);
    EXPECT_DOUBLE_EQ(t1, 20000.0);
    EXPECT_DOUBLE_EQ(p1[0], 20000.0);
    EXPECT_DOUBLE_EQ(p1[1], 0.0);
    EXPECT_DOUBLE_EQ(p1[2], 0.0);

    // An RB whose (j,t') has no binding is an accounting error.
    Allocation broken;
    broken.rb_assign = {{0, 0, 0, 0, 0}};
    broken.demand_flags = {{0, 0, 0}};
    broken.serve_flags = canonical_serve_flags(broken.rb_assign);
    EXPECT_THROW(energy_of(tiny6(), broken), std::runtime_error);
}

// For any in-window allocation, the independent verifier and the MILP point
// evaluation must agree on feasibility, and on energy when feasible.
TEST(JointModel, ModelVerifierAgreement) {
    Rng rng(2025);
    int checked = 0;
    int feasible_count = 0;
    while (checked < 220) {
        Scenario s = random_tiny_scenario(rng);
        auto [model, vm] = build_joint(s);
        for (int rep = 0; rep < 6 && checked < 220; ++rep, ++checked) {
            Allocation alloc = random_allocation(s, vm, rng);
            Point p = allocation_to_point(s, vm, alloc);
            EvalReport model_rep = evaluate(model, p, 1e-6);
            ConstraintReport dom_rep = verify(s, alloc);
            EXPECT_EQ(model_rep.feasible(), dom_rep.feasible())
                << "model: " << (model_rep.violations.empty() ? "feasible"
                                                              : model_rep.violations[0].name)
                << " | domain: " << dom_rep.summary();
            if (dom_rep.feasible() && model_rep.feasible()) {
                ++feasible_count;
                EXPECT_NEAR(model_rep.objective, dom_rep.energy_total_wh, 1e-9);
            }
        }
    }
    EXPECT_GT(feasible_count, 10);
}

TEST(JointModel, WindowEnlargementNeverImprovesOptimum) {
    Rng rng(31337);
    int compared = 0;
    for (int trial = 0; trial < 12; ++trial) {
        Scenario s = random_tiny_scenario(rng);
        BuildOptions base, wide;
        wide.window_slack = 2;
        auto [m0, vm0] = build_joint(s, base);
        auto [m1, vm1] = build_joint(s, wide);
        (void)vm0;
        (void)vm1;
        MilpOutcome a = solve_milp(m0, exact_cfg());
        MilpOutcome b = solve_milp(m1, exact_cfg());
        ASSERT_EQ(a.status == MilpStatus::Infeasible, b.status == MilpStatus::Infeasible);
        if (a.has_incumbent && b.has_incumbent) {
            EXPECT_NEAR(a.objective, b.objective, 1e-6);
            ++compared;
        }
    }
    EXPECT_GT(compared, 3);
}

TEST(JointModel, TighteningPreservesOptimum) {
    Rng rng(404);
    for (int trial = 0; trial < 10; ++trial) {
        Scenario s = random_tiny_scenario(rng);
        BuildOptions tight, loose;
        loose.tighten = false;
        auto [mt, vt] = build_joint(s, tight);
        auto [ml, vl] = build_joint(s, loose);
        (void)vt;
        (void)vl;
        MilpOutcome a = solve_milp(mt, exact_cfg());
        MilpOutcome b = solve_milp(ml, exact_cfg());
        ASSERT_EQ(a.has_incumbent, b.has_incumbent);
        if (a.has_incumbent) EXPECT_NEAR(a.objective, b.objective, 1e-6);
    }
}

TEST(JointModel, PropPerDuFlagRelaxesMultiRbFarService) {
    // Two RBs through a far DU cost 2*D as printed but only D per DU binding
    // in the per-DU counting mode.
    Scenario s = tiny6();
    s.classes[0].packet_size_bits = 700;  // needs two RBs
    s.demand(0, 0, 0) = 700;
    s.rbs_per_tti = 2;
    s.rate_bits.assign(static_cast<std::size_t>(s.num_ru) * s.num_ue * 2 * s.num_tti, 350);
    s.classes[0].delay_budget_ms = 2.0;

    auto [as_printed, vm0] = build_joint(s);
    (void)vm0;
    MilpOutcome printed = solve_milp(as_printed, exact_cfg());
    ASSERT_TRUE(printed.has_incumbent);
    // 2 RBs * 2 ms = 4 ms through the far DU exceeds the 2 ms budget, so the
    // near-but-expensive DU wins: 10 + 2.
    EXPECT_NEAR(printed.objective, 12.0, 1e-6);

    BuildOptions perdu;
    perdu.prop_per_du = true;
    auto [relaxed, vm1] = build_joint(s, perdu);
    (void)vm1;
    MilpOutcome out = solve_milp(relaxed, exact_cfg());
    ASSERT_TRUE(out.has_incumbent);
    // One far traversal: 2 ms fits, so the cheap DU wins: 5 + 2.
    EXPECT_NEAR(out.objective, 7.0, 1e-6);
}

}  // namespace
