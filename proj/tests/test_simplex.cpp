// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <optional>

#include "oranjopt/simplex.hpp"
#include "test_util.hpp"

using namespace oranjopt;

namespace {

// Vertex-enumeration oracle for box-bounded LPs: every vertex is the solution
// of n active constraints drawn from rows (as equalities) and variable bounds.
// Independent of the simplex implementation.
struct DenseLp {
    int n = 0;
    std::vector<std::vector<double>> rows;  // coefficients
    std::vector<Sense> senses;
    std::vector<double> rhs;
    std::vector<double> lo, up, cost;
};

std::optional<std::vector<double>> solve_square(std::vector<std::vector<double>> a,
                                                std::vector<double> b) {
    const int n = static_cast<int>(b.size());
    for (int k = 0; k < n; ++k) {
        int piv = -1;
        double best = 1e-9;
        for (int r = k; r < n; ++r)
            if (std::abs(a[r][k]) > best) {
                best = std::abs(a[r][k]);
                piv = r;
            }
        if (piv < 0) return std::nullopt;
        std::swap(a[k], a[piv]);
        std::swap(b[k], b[piv]);
        for (int r = 0; r < n; ++r) {
            if (r == k) continue;
            double f = a[r][k] / a[k][k];
            if (f == 0.0) continue;
            for (int c = k; c < n; ++c) a[r][c] -= f * a[k][c];
            b[r] -= f * b[k];
        }
    }
    std::vector<double> x(n);
    for (int k = 0; k < n; ++k) x[k] = b[k] / a[k][k];
    return x;
}

std::optional<double> vertex_oracle(const DenseLp& lp) {
    const int n = lp.n;
    const int m = static_cast<int>(lp.rows.size());
    const int ncand = m + 2 * n;
    std::vector<int> pick(n);
    std::optional<double> best;

    auto candidate_row = [&](int c, std::vector<double>& coef, double& b) {
        if (c < m) {
            coef = lp.rows[static_cast<std::size_t>(c)];
            b = lp.rhs[static_cast<std::size_t>(c)];
        } else {
            coef.assign(n, 0.0);
            int j = (c - m) / 2;
            bool upper = (c - m) % 2;
            coef[j] = 1.0;
            b = upper ? lp.up[static_cast<std::size_t>(j)] : lp.lo[static_cast<std::size_t>(j)];
        }
    };

    auto feasible = [&](const std::vector<double>& x) {
        for (int j = 0; j < n; ++j)
            if (x[j] < lp.lo[static_cast<std::size_t>(j)] - 1e-8 ||
                x[j] > lp.up[static_cast<std::size_t>(j)] + 1e-8)
                return false;
        for (int r = 0; r < m; ++r) {
            double lhs = 0.0;
            for (int j = 0; j < n; ++j) lhs += lp.rows[static_cast<std::size_t>(r)][j] * x[j];
            double rv = lp.rhs[static_cast<std::size_t>(r)];
            if (lp.senses[static_cast<std::size_t>(r)] == Sense::Le && lhs > rv + 1e-8) return false;
            if (lp.senses[static_cast<std::size_t>(r)] == Sense::Ge && lhs < rv - 1e-8) return false;
            if (lp.senses[static_cast<std::size_t>(r)] == Sense::Eq && std::abs(lhs - rv) > 1e-8)
                return false;
        }
        return true;
    };

    // Enumerate all n-subsets of candidate constraints.
    std::vector<int> idx(n);
    for (int j = 0; j < n; ++j) idx[j] = j;
    while (true) {
        std::vector<std::vector<double>> a(n);
        std::vector<double> b(n);
        for (int j = 0; j < n; ++j) candidate_row(idx[j], a[j], b[j]);
        if (auto x = solve_square(a, b)) {
            if (feasible(*x)) {
                double obj = 0.0;
                for (int j = 0; j < n; ++j) obj += lp.cost[static_cast<std::size_t>(j)] * (*x)[j];
                if (!best || obj < *best) best = obj;
            }
        }
        int k = n - 1;
        while (k >= 0 && idx[k] == ncand - n + k) --k;
        if (k < 0) break;
        ++idx[k];
        for (int j = k + 1; j < n; ++j) idx[j] = idx[j - 1] + 1;
    }
    return best;
}

MilpModel to_model(const DenseLp& lp) {
    MilpModel m;
    for (int j = 0; j < lp.n; ++j)
        m.add_variable({"x" + std::to_string(j), VarKind::Continuous,
                        lp.lo[static_cast<std::size_t>(j)], lp.up[static_cast<std::size_t>(j)]});
    LinExpr obj;
    for (int j = 0; j < lp.n; ++j) obj.add(lp.cost[static_cast<std::size_t>(j)], j);
    m.set_objective(obj);
    for (std::size_t r = 0; r < lp.rows.size(); ++r) {
        Constraint c;
        for (int j = 0; j < lp.n; ++j)
            if (lp.rows[r][static_cast<std::size_t>(j)] != 0.0)
                c.expr.add(lp.rows[r][static_cast<std::size_t>(j)], j);
        c.sense = lp.senses[r];
        c.rhs = lp.rhs[r];
        c.name = "r" + std::to_string(r);
        m.add_constraint(c);
    }
    return m;
}

TEST(Simplex, TrivialBoundedMax) {
    MilpModel m;
    VarId x = m.add_variable({"x", VarKind::Continuous, 0.0, 10.0});
    LinExpr obj;
    obj.add(-1.0, x);
    m.set_objective(obj);
    Constraint c;
    c.expr.add(1.0, x);
    c.sense = Sense::Le;
    c.rhs = 3.0;
    c.name = "cap";
    m.add_constraint(c);
    LpOutcome out = solve_lp(m);
    ASSERT_EQ(out.status, LpStatus::Optimal);
    EXPECT_NEAR(out.objective, -3.0, 1e-9);
    EXPECT_NEAR(out.point.values[0], 3.0, 1e-9);
}

TEST(Simplex, InfeasibleBox) {
    MilpModel m;
    VarId x = m.add_variable({"x", VarKind::Continuous, 0.0, 10.0});
    m.set_objective({});
    Constraint c1;
    c1.expr.add(1.0, x);
    c1.sense = Sense::Ge;
    c1.rhs = 2.0;
    c1.name = "ge2";
    m.add_constraint(c1);
    Constraint c2;
    c2.expr.add(1.0, x);
    c2.sense = Sense::Le;
    c2.rhs = 1.0;
    c2.name = "le1";
    m.add_constraint(c2);
    EXPECT_EQ(solve_lp(m).status, LpStatus::Infeasible);
}

TEST(Simplex, EqualityRow) {
    MilpModel m;
    VarId x = m.add_variable({"x", VarKind::Continuous, 0.0, 5.0});
    VarId y = m.add_variable({"y", VarKind::Continuous, 0.0, 5.0});
    LinExpr obj;
    obj.add(1.0, x);
    obj.add(2.0, y);
    m.set_objective(obj);
    Constraint c;
    c.expr.add(1.0, x);
    c.expr.add(1.0, y);
    c.sense = Sense::Eq;
    c.rhs = 2.0;
    c.name = "eq";
    m.add_constraint(c);
    LpOutcome out = solve_lp(m);
    ASSERT_EQ(out.status, LpStatus::Optimal);
    EXPECT_NEAR(out.objective, 2.0, 1e-9);  // all mass on x
}

TEST(Simplex, UnboundedDetected) {
    MilpModel m;
    VarId x = m.add_variable({"x", VarKind::Continuous, 0.0, kInfinity});
    VarId y = m.add_variable({"y", VarKind::Continuous, 0.0, 1.0});
    LinExpr obj;
    obj.add(-1.0, x);
    m.set_objective(obj);
    Constraint c;
    c.expr.add(1.0, y);
    c.sense = Sense::Le;
    c.rhs = 1.0;
    c.name = "row";
    m.add_constraint(c);
    EXPECT_EQ(solve_lp(m).status, LpStatus::Unbounded);
}

TEST(Simplex, DegenerateRowsTerminate) {
    // Heavily degenerate: many duplicate rows through the origin.
    MilpModel m;
    VarId x = m.add_variable({"x", VarKind::Continuous, 0.0, 1.0});
    VarId y = m.add_variable({"y", VarKind::Continuous, 0.0, 1.0});
    VarId z = m.add_variable({"z", VarKind::Continuous, 0.0, 1.0});
    LinExpr obj;
    obj.add(-1.0, x);
    obj.add(-1.0, y);
    obj.add(2.0, z);
    m.set_objective(obj);
    for (int i = 0; i < 6; ++i) {
        Constraint c;
        c.expr.add(1.0, x);
        c.expr.add(1.0, y);
        c.expr.add(-1.0, z);
        c.sense = Sense::Le;
        c.rhs = 0.0;
        c.name = "d" + std::to_string(i);
        m.add_constraint(c);
    }
    LpOutcome out = solve_lp(m);
    ASSERT_EQ(out.status, LpStatus::Optimal);
    EXPECT_NEAR(out.objective, 0.0, 1e-9);
}

// Randomized agreement with the vertex-enumeration oracle (acceptance
// criterion rerun at larger count in the acceptance suite).
TEST(Simplex, RandomLpsMatchVertexOracle) {
    testutil::Rng rng(20240817);
    int feasible_seen = 0;
    int infeasible_seen = 0;
    for (int trial = 0; trial < 120; ++trial) {
        DenseLp lp;
        lp.n = rng.range(2, 6);
        int m = rng.range(1, 6);
        lp.lo.resize(lp.n);
        lp.up.resize(lp.n);
        lp.cost.resize(lp.n);
        for (int j = 0; j < lp.n; ++j) {
            lp.lo[j] = rng.coef(-3, 0);
            lp.up[j] = lp.lo[j] + rng.range(1, 5);
            lp.cost[j] = rng.coef(-4, 4);
        }
        for (int r = 0; r < m; ++r) {
            std::vector<double> row(lp.n);
            bool nonzero = false;
            for (int j = 0; j < lp.n; ++j) {
                row[static_cast<std::size_t>(j)] = rng.coef(-4, 4);
                nonzero |= row[static_cast<std::size_t>(j)] != 0.0;
            }
            if (!nonzero) row[0] = 1.0;
            lp.rows.push_back(row);
            lp.senses.push_back(rng.range(0, 1) ? Sense::Le : Sense::Ge);
            lp.rhs.push_back(rng.coef(-6, 6));
        }
        MilpModel model = to_model(lp);
        LpOutcome out = solve_lp(model);
        auto oracle = vertex_oracle(lp);
        if (oracle) {
            ++feasible_seen;
            ASSERT_EQ(out.status, LpStatus::Optimal) << "trial " << trial;
            EXPECT_NEAR(out.objective, *oracle, 1e-7) << "trial " << trial;
        } else {
            ++infeasible_seen;
            EXPECT_EQ(out.status, LpStatus::Infeasible) << "trial " << trial;
        }
    }
    EXPECT_GT(feasible_seen, 20);
    EXPECT_GT(infeasible_seen, 5);
}

TEST(Simplex, EmptyModel) {
    MilpModel m;
    m.set_objective({});
    LpOutcome out = solve_lp(m);
    EXPECT_EQ(out.status, LpStatus::Optimal);
    EXPECT_DOUBLE_EQ(out.objective, 0.0);
}

}  // namespace
