// SPDX-License-Identifier: Apache-2.0
//
// Solver-agnostic MILP intermediate representation: typed variables, linear
// constraints, a minimization objective, point evaluation, and the
// linearization helpers used to express products of binaries, gated sums and
// weighted maxima as linear constraints over continuous auxiliaries.

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace oranjopt {

using VarId = std::int32_t;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class VarKind { Binary, Continuous };

struct Variable {
    std::string name;
    VarKind kind = VarKind::Continuous;
    double lower = 0.0;
    double upper = kInfinity;
};

struct LinTerm {
    double coef = 0.0;
    VarId var = -1;
};

// Sparse linear expression.  Terms may repeat a variable while building; call
// normalize() to merge duplicates (first-appearance order is kept so models
// stay deterministic).
struct LinExpr {
    std::vector<LinTerm> terms;
    double constant = 0.0;

    void add(double coef, VarId var) { terms.push_back({coef, var}); }

    LinExpr& normalize() {
        std::unordered_map<VarId, double> merged;
        merged.reserve(terms.size());
        std::vector<VarId> order;
        order.reserve(terms.size());
        for (const auto& t : terms) {
            auto [it, inserted] = merged.try_emplace(t.var, 0.0);
            if (inserted) order.push_back(t.var);
            it->second += t.coef;
        }
        terms.clear();
        for (VarId v : order) {
            double c = merged[v];
            if (c != 0.0) terms.push_back({c, v});
        }
        return *this;
    }

    double value(std::span<const double> x) const {
        double s = constant;
        for (const auto& t : terms) s += t.coef * x[static_cast<std::size_t>(t.var)];
        return s;
    }
};

enum class Sense { Le, Eq, Ge };

inline const char* to_string(Sense s) {
    switch (s) {
        case Sense::Le: return "<=";
        case Sense::Eq: return "=";
        case Sense::Ge: return ">=";
    }
    return "?";
}

struct Constraint {
    LinExpr expr;
    Sense sense = Sense::Le;
    double rhs = 0.0;
    std::string name;
};

struct Point {
    std::vector<double> values;
};

struct EvalViolation {
    std::string name;
    double residual = 0.0;
};

struct EvalReport {
    std::vector<EvalViolation> violations;
    double objective = 0.0;
    bool feasible() const { return violations.empty(); }
};

// Minimization model.  VarIds are dense and assigned in insertion order;
// variable and constraint names are unique (separate namespaces).
class MilpModel {
public:
    VarId add_variable(Variable v) {
        if (v.name.empty()) throw std::invalid_argument("variable name must not be empty");
        if (var_index_.count(v.name))
            throw std::invalid_argument("duplicate variable name: " + v.name);
        if (!(v.lower <= v.upper))
            throw std::invalid_argument("invalid bounds for variable " + v.name);
        if (v.kind == VarKind::Binary && (v.lower < 0.0 || v.upper > 1.0))
            throw std::invalid_argument("binary variable bounds outside [0,1]: " + v.name);
        VarId id = static_cast<VarId>(variables_.size());
        var_index_.emplace(v.name, id);
        variables_.push_back(std::move(v));
        return id;
    }

    void add_constraint(Constraint c) {
        if (c.name.empty()) throw std::invalid_argument("constraint name must not be empty");
        if (!row_names_.insert(c.name).second)
            throw std::invalid_argument("duplicate constraint name: " + c.name);
        c.expr.normalize();
        check_expr(c.expr, c.name);
        if (!std::isfinite(c.rhs))
            throw std::invalid_argument("non-finite rhs in constraint " + c.name);
        constraints_.push_back(std::move(c));
    }

    void set_objective(LinExpr e) {
        e.normalize();
        check_expr(e, "objective");
        objective_ = std::move(e);
    }

    const std::vector<Variable>& variables() const { return variables_; }
    const std::vector<Constraint>& constraints() const { return constraints_; }
    const LinExpr& objective() const { return objective_; }

    const Variable& var(VarId id) const { return variables_.at(static_cast<std::size_t>(id)); }
    std::size_t num_variables() const { return variables_.size(); }
    std::size_t num_constraints() const { return constraints_.size(); }

    VarId find_variable(const std::string& name) const {
        auto it = var_index_.find(name);
        return it == var_index_.end() ? VarId{-1} : it->second;
    }

    std::size_t num_binaries() const {
        std::size_t n = 0;
        for (const auto& v : variables_)
            if (v.kind == VarKind::Binary) ++n;
        return n;
    }

    // Binaries whose bounds do not already pin them to a single value.
    std::vector<VarId> free_binaries() const {
        std::vector<VarId> ids;
        for (std::size_t i = 0; i < variables_.size(); ++i)
            if (variables_[i].kind == VarKind::Binary && variables_[i].lower < variables_[i].upper)
                ids.push_back(static_cast<VarId>(i));
        return ids;
    }

private:
    void check_expr(const LinExpr& e, const std::string& where) const {
        for (const auto& t : e.terms) {
            if (t.var < 0 || static_cast<std::size_t>(t.var) >= variables_.size())
                throw std::invalid_argument("unknown VarId in " + where);
            if (!std::isfinite(t.coef))
                throw std::invalid_argument("non-finite coefficient in " + where);
        }
        if (!std::isfinite(e.constant))
            throw std::invalid_argument("non-finite constant in " + where);
    }

    std::vector<Variable> variables_;
    std::vector<Constraint> constraints_;
    LinExpr objective_;
    std::unordered_map<std::string, VarId> var_index_;
    std::unordered_set<std::string> row_names_;
};

// Feasibility report for a full assignment.  A constraint is violated iff its
// residual exceeds tol; variable bound violations are reported the same way
// under the name "bound(<var>)".
inline EvalReport evaluate(const MilpModel& model, const Point& p, double tol) {
    if (p.values.size() != model.num_variables())
        throw std::invalid_argument("point length does not match variable count");
    EvalReport rep;
    std::span<const double> x(p.values);
    for (std::size_t i = 0; i < model.num_variables(); ++i) {
        const Variable& v = model.variables()[i];
        double xi = p.values[i];
        double resid = std::max(v.lower - xi, xi - v.upper);
        if (resid > tol) rep.violations.push_back({"bound(" + v.name + ")", resid});
    }
    for (const auto& c : model.constraints()) {
        double lhs = c.expr.value(x);
        double resid = 0.0;
        switch (c.sense) {
            case Sense::Le: resid = lhs - c.rhs; break;
            case Sense::Ge: resid = c.rhs - lhs; break;
            case Sense::Eq: resid = std::abs(lhs - c.rhs); break;
        }
        if (resid > tol) rep.violations.push_back({c.name, resid});
    }
    rep.objective = model.objective().value(x);
    return rep;
}

// z = x*y for binary x, y via the McCormick envelope: z <= x, z <= y,
// z >= x + y - 1 with z continuous in [0,1].  At binary corners the tightest
// feasible z equals the product.
inline VarId linearize_product(MilpModel& model, VarId x, VarId y, const std::string& name) {
    if (model.var(x).kind != VarKind::Binary || model.var(y).kind != VarKind::Binary)
        throw std::invalid_argument("linearize_product requires binary inputs");
    VarId z = model.add_variable({name, VarKind::Continuous, 0.0, 1.0});
    Constraint le_x;
    le_x.expr.add(1.0, z);
    le_x.expr.add(-1.0, x);
    le_x.sense = Sense::Le;
    le_x.rhs = 0.0;
    le_x.name = name + "_le_x";
    model.add_constraint(std::move(le_x));
    Constraint le_y;
    le_y.expr.add(1.0, z);
    le_y.expr.add(-1.0, y);
    le_y.sense = Sense::Le;
    le_y.rhs = 0.0;
    le_y.name = name + "_le_y";
    model.add_constraint(std::move(le_y));
    Constraint ge_sum;
    ge_sum.expr.add(1.0, z);
    ge_sum.expr.add(-1.0, x);
    ge_sum.expr.add(-1.0, y);
    ge_sum.sense = Sense::Ge;
    ge_sum.rhs = -1.0;
    ge_sum.name = name + "_ge_sum";
    model.add_constraint(std::move(ge_sum));
    return z;
}

// h = gate * sum(parts) as a lower envelope: h in [0, cap] with
// h >= sum(parts) - cap*(1 - gate).  Valid whenever h appears with
// nonnegative coefficient in <=-constraints or a minimized objective.
inline VarId linearize_conditional_sum(MilpModel& model, std::span<const VarId> parts, VarId gate,
                                       double cap, const std::string& name) {
    if (model.var(gate).kind != VarKind::Binary)
        throw std::invalid_argument("linearize_conditional_sum requires a binary gate");
    for (VarId p : parts)
        if (model.var(p).kind != VarKind::Binary)
            throw std::invalid_argument("linearize_conditional_sum requires binary parts");
    if (cap < static_cast<double>(parts.size()))
        throw std::invalid_argument("linearize_conditional_sum cap " + std::to_string(cap) +
                                    " smaller than part count (would cut feasible points)");
    VarId h = model.add_variable({name, VarKind::Continuous, 0.0, cap});
    Constraint env;
    env.expr.add(1.0, h);
    for (VarId p : parts) env.expr.add(-1.0, p);
    env.expr.add(-cap, gate);
    env.sense = Sense::Ge;
    env.rhs = -cap;
    env.name = name + "_env";
    model.add_constraint(std::move(env));
    return h;
}

// m = max over candidates of weight*var (0 if all zero): m >= w_n * v_n for
// every candidate, m >= 0.  Zero-weight candidates are implied by m >= 0 and
// produce no row.
inline VarId linearize_max(MilpModel& model, std::span<const std::pair<VarId, double>> candidates,
                           const std::string& name) {
    double top = 0.0;
    for (const auto& [v, w] : candidates) {
        (void)v;
        if (w < 0.0) throw std::invalid_argument("linearize_max requires nonnegative weights");
        top = std::max(top, w);
    }
    VarId m = model.add_variable({name, VarKind::Continuous, 0.0, top});
    int idx = 0;
    for (const auto& [v, w] : candidates) {
        if (w > 0.0) {
            Constraint c;
            c.expr.add(1.0, m);
            c.expr.add(-w, v);
            c.sense = Sense::Ge;
            c.rhs = 0.0;
            c.name = name + "_ge" + std::to_string(idx);
            model.add_constraint(std::move(c));
        }
        ++idx;
    }
    return m;
}

}  // namespace oranjopt
