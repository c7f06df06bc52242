// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "oranjopt/milp_model.hpp"

namespace oranjopt::testutil {

// Feasible interval for a continuous auxiliary given values for all other
// variables, derived purely from the model's constraint list.  Used to check
// that linearizations admit exactly the intended envelope.
inline std::pair<double, double> aux_interval(const MilpModel& m, VarId aux,
                                              const std::vector<double>& others) {
    double lo = m.var(aux).lower;
    double hi = m.var(aux).upper;
    for (const auto& c : m.constraints()) {
        double coef = 0.0;
        double rest = c.expr.constant;
        bool has = false;
        for (const auto& t : c.expr.terms) {
            if (t.var == aux) {
                coef += t.coef;
                has = true;
            } else {
                rest += t.coef * others[static_cast<std::size_t>(t.var)];
            }
        }
        if (!has || coef == 0.0) continue;
        double bound = (c.rhs - rest) / coef;
        switch (c.sense) {
            case Sense::Le:
                if (coef > 0.0)
                    hi = std::min(hi, bound);
                else
                    lo = std::max(lo, bound);
                break;
            case Sense::Ge:
                if (coef > 0.0)
                    lo = std::max(lo, bound);
                else
                    hi = std::min(hi, bound);
                break;
            case Sense::Eq:
                lo = std::max(lo, bound);
                hi = std::min(hi, bound);
                break;
        }
    }
    return {lo, hi};
}

// Order-insensitive model equivalence by names: variable kinds/bounds,
// constraint senses/rhs/coefficients, objective coefficients and constant.
inline bool models_equivalent(const MilpModel& a, const MilpModel& b, double tol = 0.0) {
    if (a.num_variables() != b.num_variables()) return false;
    if (a.num_constraints() != b.num_constraints()) return false;
    auto close = [tol](double x, double y) {
        if (std::isinf(x) || std::isinf(y)) return x == y;
        return std::abs(x - y) <= tol;
    };
    std::vector<VarId> map_ab(a.num_variables());
    for (std::size_t i = 0; i < a.num_variables(); ++i) {
        const Variable& va = a.variables()[i];
        VarId j = b.find_variable(va.name);
        if (j < 0) return false;
        const Variable& vb = b.var(j);
        if (va.kind != vb.kind || !close(va.lower, vb.lower) || !close(va.upper, vb.upper))
            return false;
        map_ab[i] = j;
    }
    auto expr_map = [&](const LinExpr& e, const std::vector<VarId>* remap) {
        std::vector<double> dense(a.num_variables() + b.num_variables(), 0.0);
        for (const auto& t : e.terms) {
            VarId v = remap ? (*remap)[static_cast<std::size_t>(t.var)] : t.var;
            dense[static_cast<std::size_t>(v)] += t.coef;
        }
        return dense;
    };
    auto exprs_equal = [&](const LinExpr& ea, const LinExpr& eb) {
        auto da = expr_map(ea, &map_ab);
        auto db = expr_map(eb, nullptr);
        for (std::size_t k = 0; k < da.size(); ++k)
            if (!close(da[k], db[k])) return false;
        return close(ea.constant, eb.constant);
    };
    for (const auto& ca : a.constraints()) {
        const Constraint* cb = nullptr;
        for (const auto& c : b.constraints())
            if (c.name == ca.name) {
                cb = &c;
                break;
            }
        if (!cb || cb->sense != ca.sense || !close(cb->rhs, ca.rhs)) return false;
        if (!exprs_equal(ca.expr, cb->expr)) return false;
    }
    return exprs_equal(a.objective(), b.objective());
}

struct Rng {
    std::mt19937_64 eng;
    explicit Rng(std::uint64_t seed) : eng(seed) {}
    double uniform() { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }
    int range(int lo, int hi) {  // inclusive
        return lo + static_cast<int>(eng() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    double coef(int lo, int hi) { return static_cast<double>(range(lo, hi)); }
};

}  // namespace oranjopt::testutil
