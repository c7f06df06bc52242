// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "oranjopt/milp_model.hpp"
#include "test_util.hpp"

using namespace oranjopt;
using testutil::aux_interval;

namespace {

Variable bin(const std::string& name) { return {name, VarKind::Binary, 0.0, 1.0}; }

TEST(MilpModel, DenseIdsInInsertionOrder) {
    MilpModel m;
    EXPECT_EQ(m.add_variable(bin("c_l0_t0")), 0);
    EXPECT_EQ(m.add_variable(bin("b_j0_l0_t0")), 1);
    EXPECT_EQ(m.add_variable(bin("a_i0")), 2);
    EXPECT_EQ(m.num_variables(), 3u);
}

TEST(MilpModel, DuplicateNameRejected) {
    MilpModel m;
    m.add_variable(bin("x"));
    EXPECT_THROW(m.add_variable(bin("x")), std::invalid_argument);
}

TEST(MilpModel, InvalidBoundsRejected) {
    MilpModel m;
    EXPECT_THROW(m.add_variable({"y", VarKind::Continuous, 2.0, 1.0}), std::invalid_argument);
    EXPECT_THROW(m.add_variable({"z", VarKind::Binary, -0.5, 1.0}), std::invalid_argument);
}

TEST(MilpModel, EvaluateSimple) {
    MilpModel m;
    VarId x = m.add_variable({"x", VarKind::Continuous, 0.0, 10.0});
    LinExpr obj;
    obj.add(1.0, x);
    m.set_objective(obj);
    Constraint c;
    c.expr.add(1.0, x);
    c.sense = Sense::Ge;
    c.rhs = 1.0;
    c.name = "c0";
    m.add_constraint(c);

    EvalReport ok = evaluate(m, Point{{1.0}}, 1e-9);
    EXPECT_TRUE(ok.feasible());
    EXPECT_DOUBLE_EQ(ok.objective, 1.0);

    EvalReport bad = evaluate(m, Point{{0.0}}, 1e-9);
    ASSERT_EQ(bad.violations.size(), 1u);
    EXPECT_EQ(bad.violations[0].name, "c0");
    EXPECT_NEAR(bad.violations[0].residual, 1.0, 1e-12);
}

TEST(MilpModel, NormalizeMergesDuplicates) {
    MilpModel m;
    VarId x = m.add_variable(bin("x"));
    LinExpr e;
    e.add(1.0, x);
    e.add(2.0, x);
    e.normalize();
    ASSERT_EQ(e.terms.size(), 1u);
    EXPECT_DOUBLE_EQ(e.terms[0].coef, 3.0);
}

// Exhaustive truth table: minimal feasible z equals x*y in all 4 corners.
TEST(Linearize, ProductTruthTable) {
    for (int xv = 0; xv <= 1; ++xv) {
        for (int yv = 0; yv <= 1; ++yv) {
            MilpModel m;
            VarId x = m.add_variable(bin("x"));
            VarId y = m.add_variable(bin("y"));
            VarId z = linearize_product(m, x, y, "z");
            std::vector<double> vals(m.num_variables(), 0.0);
            vals[static_cast<std::size_t>(x)] = xv;
            vals[static_cast<std::size_t>(y)] = yv;
            auto [lo, hi] = aux_interval(m, z, vals);
            EXPECT_LE(lo, hi + 1e-12);
            EXPECT_NEAR(lo, static_cast<double>(xv * yv), 1e-12)
                << "x=" << xv << " y=" << yv;
        }
    }
}

TEST(Linearize, ProductRequiresBinaryInputs) {
    MilpModel m;
    VarId x = m.add_variable(bin("x"));
    VarId c = m.add_variable({"c", VarKind::Continuous, 0.0, 1.0});
    EXPECT_THROW(linearize_product(m, x, c, "z"), std::invalid_argument);
}

// Exhaustive 2^7 check at 6 parts: minimal feasible h equals gate * sum(parts).
TEST(Linearize, ConditionalSumTruthTable) {
    constexpr int kParts = 6;
    for (int mask = 0; mask < (1 << (kParts + 1)); ++mask) {
        MilpModel m;
        std::vector<VarId> parts;
        for (int i = 0; i < kParts; ++i) parts.push_back(m.add_variable(bin("p" + std::to_string(i))));
        VarId gate = m.add_variable(bin("g"));
        VarId h = linearize_conditional_sum(m, parts, gate, static_cast<double>(kParts), "h");

        std::vector<double> vals(m.num_variables(), 0.0);
        int sum = 0;
        for (int i = 0; i < kParts; ++i) {
            int bit = (mask >> i) & 1;
            vals[static_cast<std::size_t>(parts[i])] = bit;
            sum += bit;
        }
        int gv = (mask >> kParts) & 1;
        vals[static_cast<std::size_t>(gate)] = gv;

        auto [lo, hi] = aux_interval(m, h, vals);
        EXPECT_LE(lo, hi + 1e-12);
        EXPECT_NEAR(lo, static_cast<double>(gv * sum), 1e-12) << "mask=" << mask;
    }
}

TEST(Linearize, ConditionalSumCapTooSmall) {
    MilpModel m;
    std::vector<VarId> parts;
    for (int i = 0; i < 4; ++i) parts.push_back(m.add_variable(bin("p" + std::to_string(i))));
    VarId gate = m.add_variable(bin("g"));
    EXPECT_THROW(linearize_conditional_sum(m, parts, gate, 3.0, "h"), std::invalid_argument);
}

// Exhaustive 2^5 check: minimal feasible m equals max(weight * value).
TEST(Linearize, MaxTruthTable) {
    const std::vector<double> weights = {0.0, 1.5, 2.0, 0.5, 3.0};
    for (int mask = 0; mask < 32; ++mask) {
        MilpModel m;
        std::vector<std::pair<VarId, double>> cands;
        for (std::size_t i = 0; i < weights.size(); ++i)
            cands.emplace_back(m.add_variable(bin("v" + std::to_string(i))), weights[i]);
        VarId mv = linearize_max(m, cands, "m");

        std::vector<double> vals(m.num_variables(), 0.0);
        double expect = 0.0;
        for (std::size_t i = 0; i < weights.size(); ++i) {
            int bit = (mask >> i) & 1;
            vals[static_cast<std::size_t>(cands[i].first)] = bit;
            expect = std::max(expect, weights[i] * bit);
        }
        auto [lo, hi] = aux_interval(m, mv, vals);
        EXPECT_LE(lo, hi + 1e-12);
        EXPECT_NEAR(lo, expect, 1e-12) << "mask=" << mask;
    }
}

TEST(Linearize, MaxRejectsNegativeWeight) {
    MilpModel m;
    std::vector<std::pair<VarId, double>> cands = {{m.add_variable(bin("v")), -1.0}};
    EXPECT_THROW(linearize_max(m, cands, "m"), std::invalid_argument);
}

TEST(Linearize, MaxExamples) {
    MilpModel m;
    std::vector<std::pair<VarId, double>> cands;
    const double w[3] = {2.0, 5.0, 3.0};
    for (int i = 0; i < 3; ++i)
        cands.emplace_back(m.add_variable(bin("v" + std::to_string(i))), w[i]);
    VarId mv = linearize_max(m, cands, "m");
    std::vector<double> vals(m.num_variables(), 0.0);
    vals[0] = 1.0;
    vals[1] = 0.0;
    vals[2] = 1.0;
    auto [lo, hi] = aux_interval(m, mv, vals);
    EXPECT_LE(lo, hi);
    EXPECT_NEAR(lo, 3.0, 1e-12);

    std::vector<double> zeros(m.num_variables(), 0.0);
    auto [lo0, hi0] = aux_interval(m, mv, zeros);
    EXPECT_LE(lo0, hi0);
    EXPECT_NEAR(lo0, 0.0, 1e-12);
}

}  // namespace
