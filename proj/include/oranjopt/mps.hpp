// SPDX-License-Identifier: Apache-2.0
//
// Free-format MPS writer and parser for MilpModel.  Sections NAME, ROWS,
// COLUMNS, RHS, BOUNDS, ENDATA; LF line endings; whitespace-separated fields;
// names at most 64 characters; no RANGES section.  Binaries are emitted as BV
// bound lines; the objective is always a minimization and its constant term
// is carried as a negated RHS entry on the objective row.

#pragma once

#include <charconv>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "oranjopt/milp_model.hpp"
#include "oranjopt/num_format.hpp"

namespace oranjopt {

class MpsError : public std::runtime_error {
public:
    explicit MpsError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline std::string fmt_double(double v) { return numfmt::to_decimal(v); }

inline void check_mps_name(const std::string& n) {
    if (n.empty() || n.size() > 64) throw MpsError("invalid MPS name: '" + n + "'");
    for (char c : n)
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r')
            throw MpsError("whitespace in MPS name: '" + n + "'");
}

inline std::vector<std::string_view> tokens(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

inline double parse_num(std::string_view sv, int lineno) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), v);
    if (ec != std::errc{} || ptr != sv.data() + sv.size())
        throw MpsError("bad number '" + std::string(sv) + "' at line " + std::to_string(lineno));
    return v;
}

}  // namespace detail

inline std::string export_mps(const MilpModel& model, const std::string& model_name = "ORANJOPT") {
    constexpr const char* kObjRow = "OBJ";
    for (const auto& v : model.variables()) detail::check_mps_name(v.name);
    for (const auto& c : model.constraints()) {
        detail::check_mps_name(c.name);
        if (c.name == kObjRow) throw MpsError("constraint name collides with objective row OBJ");
    }

    std::string out;
    out += "NAME " + model_name + "\n";
    out += "ROWS\n";
    out += " N ";
    out += kObjRow;
    out += "\n";
    for (const auto& c : model.constraints()) {
        char t = c.sense == Sense::Le ? 'L' : (c.sense == Sense::Ge ? 'G' : 'E');
        out += " ";
        out += t;
        out += " " + c.name + "\n";
    }

    // Column-major nonzeros, rows in model order, objective first.
    std::vector<std::vector<std::pair<std::string, double>>> cols(model.num_variables());
    for (const auto& t : model.objective().terms)
        cols[static_cast<std::size_t>(t.var)].emplace_back(kObjRow, t.coef);
    for (const auto& c : model.constraints())
        for (const auto& t : c.expr.terms)
            cols[static_cast<std::size_t>(t.var)].emplace_back(c.name, t.coef);

    out += "COLUMNS\n";
    for (std::size_t j = 0; j < cols.size(); ++j) {
        const std::string& vn = model.variables()[j].name;
        const auto& entries = cols[j];
        for (std::size_t k = 0; k < entries.size(); k += 2) {
            out += "    " + vn + " " + entries[k].first + " " + detail::fmt_double(entries[k].second);
            if (k + 1 < entries.size())
                out += " " + entries[k + 1].first + " " + detail::fmt_double(entries[k + 1].second);
            out += "\n";
        }
    }

    out += "RHS\n";
    for (const auto& c : model.constraints()) {
        if (c.rhs != 0.0 || c.expr.constant != 0.0) {
            // Fold the expression constant into the right-hand side.
            double rhs = c.rhs - c.expr.constant;
            out += "    RHS " + c.name + " " + detail::fmt_double(rhs) + "\n";
        }
    }
    if (model.objective().constant != 0.0)
        out += "    RHS OBJ " + detail::fmt_double(-model.objective().constant) + "\n";

    out += "BOUNDS\n";
    for (const auto& v : model.variables()) {
        if (v.kind == VarKind::Binary) {
            if (v.lower == 0.0 && v.upper == 1.0) {
                out += " BV BND " + v.name + "\n";
            } else {
                // A binary pinned by its bounds round-trips as BV + FX.
                out += " BV BND " + v.name + "\n";
                out += " FX BND " + v.name + " " + detail::fmt_double(v.lower) + "\n";
            }
            continue;
        }
        if (v.lower == v.upper) {
            out += " FX BND " + v.name + " " + detail::fmt_double(v.lower) + "\n";
            continue;
        }
        if (v.lower == -kInfinity && v.upper == kInfinity) {
            out += " FR BND " + v.name + "\n";
            continue;
        }
        if (v.lower == -kInfinity)
            out += " MI BND " + v.name + "\n";
        else if (v.lower != 0.0)
            out += " LO BND " + v.name + " " + detail::fmt_double(v.lower) + "\n";
        if (v.upper != kInfinity)
            out += " UP BND " + v.name + " " + detail::fmt_double(v.upper) + "\n";
    }
    out += "ENDATA\n";
    return out;
}

inline MilpModel parse_mps(const std::string& text) {
    enum class Section { None, Rows, Columns, Rhs, Bounds, Ranges, Done };

    struct ColData {
        std::string name;
        bool integer = false;
        bool bv = false;
        bool fx = false;
        double lower = 0.0;
        double upper = kInfinity;
        bool lower_set = false, upper_set = false;
        double fx_value = 0.0;
        double obj_coef = 0.0;
        std::vector<std::pair<int, double>> entries;  // (row index, coef)
    };

    std::vector<std::string> row_names;
    std::vector<Sense> row_senses;
    std::vector<double> row_rhs;
    std::map<std::string, int, std::less<>> row_index;
    std::string obj_name;
    bool have_obj = false;
    double obj_constant = 0.0;

    std::vector<ColData> cols;
    std::map<std::string, int, std::less<>> col_index;

    auto col_of = [&](std::string_view name) -> ColData& {
        auto it = col_index.find(name);
        if (it == col_index.end()) {
            it = col_index.emplace(std::string(name), static_cast<int>(cols.size())).first;
            cols.emplace_back();
            cols.back().name = std::string(name);
        }
        return cols[static_cast<std::size_t>(it->second)];
    };

    Section section = Section::None;
    bool in_integer_block = false;
    int lineno = 0;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (line[0] == '*') continue;  // comment
        auto toks = detail::tokens(line);
        if (toks.empty()) continue;

        bool header = line[0] != ' ' && line[0] != '\t';
        if (header) {
            std::string_view kw = toks[0];
            if (kw == "NAME") {
                continue;
            } else if (kw == "ROWS") {
                section = Section::Rows;
                continue;
            } else if (kw == "COLUMNS") {
                section = Section::Columns;
                continue;
            } else if (kw == "RHS") {
                section = Section::Rhs;
                continue;
            } else if (kw == "BOUNDS") {
                section = Section::Bounds;
                continue;
            } else if (kw == "RANGES") {
                throw MpsError("RANGES section is not supported");
            } else if (kw == "OBJSENSE" || kw == "OBJSENSE:") {
                // Tolerated only as "MIN"/"MINIMIZE" on the following token or line.
                section = Section::None;
                continue;
            } else if (kw == "ENDATA") {
                section = Section::Done;
                break;
            } else {
                throw MpsError("unknown section '" + std::string(kw) + "' at line " +
                               std::to_string(lineno));
            }
        }

        switch (section) {
            case Section::None: {
                std::string_view t0 = toks[0];
                if (t0 == "MIN" || t0 == "MINIMIZE") continue;
                throw MpsError("unexpected data at line " + std::to_string(lineno));
            }
            case Section::Rows: {
                if (toks.size() != 2)
                    throw MpsError("malformed ROWS line " + std::to_string(lineno));
                std::string_view type = toks[0];
                std::string name(toks[1]);
                detail::check_mps_name(name);
                if (type == "N") {
                    if (have_obj)
                        throw MpsError("multiple N rows (second at line " + std::to_string(lineno) +
                                       ")");
                    obj_name = name;
                    have_obj = true;
                } else {
                    Sense s;
                    if (type == "L")
                        s = Sense::Le;
                    else if (type == "G")
                        s = Sense::Ge;
                    else if (type == "E")
                        s = Sense::Eq;
                    else
                        throw MpsError("bad row type '" + std::string(type) + "' at line " +
                                       std::to_string(lineno));
                    if (row_index.count(name)) throw MpsError("duplicate row name " + name);
                    row_index.emplace(name, static_cast<int>(row_names.size()));
                    row_names.push_back(name);
                    row_senses.push_back(s);
                    row_rhs.push_back(0.0);
                }
                break;
            }
            case Section::Columns: {
                if (toks.size() >= 3 && toks[1] == "'MARKER'") {
                    if (toks[2] == "'INTORG'")
                        in_integer_block = true;
                    else if (toks[2] == "'INTEND'")
                        in_integer_block = false;
                    else
                        throw MpsError("bad marker at line " + std::to_string(lineno));
                    break;
                }
                if (toks.size() < 3 || toks.size() % 2 == 0)
                    throw MpsError("malformed COLUMNS line " + std::to_string(lineno));
                ColData& col = col_of(toks[0]);
                col.integer = col.integer || in_integer_block;
                for (std::size_t k = 1; k + 1 < toks.size(); k += 2) {
                    std::string_view rname = toks[k];
                    double val = detail::parse_num(toks[k + 1], lineno);
                    if (have_obj && rname == obj_name) {
                        col.obj_coef += val;
                    } else {
                        auto it = row_index.find(rname);
                        if (it == row_index.end())
                            throw MpsError("unknown row '" + std::string(rname) + "' at line " +
                                           std::to_string(lineno));
                        col.entries.emplace_back(it->second, val);
                    }
                }
                break;
            }
            case Section::Rhs: {
                if (toks.size() < 3 || toks.size() % 2 == 0)
                    throw MpsError("malformed RHS line " + std::to_string(lineno));
                for (std::size_t k = 1; k + 1 < toks.size(); k += 2) {
                    std::string_view rname = toks[k];
                    double val = detail::parse_num(toks[k + 1], lineno);
                    if (have_obj && rname == obj_name) {
                        obj_constant = -val;
                    } else {
                        auto it = row_index.find(rname);
                        if (it == row_index.end())
                            throw MpsError("unknown row '" + std::string(rname) + "' at line " +
                                           std::to_string(lineno));
                        row_rhs[static_cast<std::size_t>(it->second)] = val;
                    }
                }
                break;
            }
            case Section::Bounds: {
                std::string_view type = toks[0];
                bool has_value = type == "UP" || type == "LO" || type == "FX";
                std::size_t need = has_value ? 4u : 3u;
                if (toks.size() != need)
                    throw MpsError("malformed BOUNDS line " + std::to_string(lineno));
                auto it = col_index.find(toks[2]);
                if (it == col_index.end())
                    throw MpsError("unknown column '" + std::string(toks[2]) + "' at line " +
                                   std::to_string(lineno));
                ColData& col = cols[static_cast<std::size_t>(it->second)];
                if (type == "BV") {
                    col.bv = true;
                } else if (type == "UP") {
                    col.upper = detail::parse_num(toks[3], lineno);
                    col.upper_set = true;
                } else if (type == "LO") {
                    col.lower = detail::parse_num(toks[3], lineno);
                    col.lower_set = true;
                } else if (type == "FX") {
                    col.fx = true;
                    col.fx_value = detail::parse_num(toks[3], lineno);
                } else if (type == "FR") {
                    col.lower = -kInfinity;
                    col.upper = kInfinity;
                    col.lower_set = col.upper_set = true;
                } else if (type == "MI") {
                    col.lower = -kInfinity;
                    col.lower_set = true;
                } else if (type == "PL") {
                    col.upper = kInfinity;
                    col.upper_set = true;
                } else {
                    throw MpsError("bad bound type '" + std::string(type) + "' at line " +
                                   std::to_string(lineno));
                }
                break;
            }
            case Section::Ranges:
            case Section::Done:
                break;
        }
    }
    if (section != Section::Done) throw MpsError("missing ENDATA");
    if (!have_obj) throw MpsError("missing objective (N) row");

    MilpModel model;
    for (auto& col : cols) {
        Variable v;
        v.name = col.name;
        if (col.bv || col.integer) {
            v.kind = VarKind::Binary;
            v.lower = 0.0;
            v.upper = 1.0;
            if (col.fx) {
                v.lower = v.upper = col.fx_value;
            } else {
                if (col.lower_set) v.lower = col.lower;
                if (col.upper_set) v.upper = col.upper;
            }
            if (v.lower < 0.0 || v.upper > 1.0)
                throw MpsError("integer column '" + col.name + "' is not binary");
        } else {
            v.kind = VarKind::Continuous;
            if (col.fx) {
                v.lower = v.upper = col.fx_value;
            } else {
                v.lower = col.lower_set ? col.lower : 0.0;
                v.upper = col.upper_set ? col.upper : kInfinity;
            }
        }
        model.add_variable(std::move(v));
    }

    std::vector<LinExpr> row_exprs(row_names.size());
    LinExpr obj;
    obj.constant = obj_constant;
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].obj_coef != 0.0) obj.add(cols[j].obj_coef, static_cast<VarId>(j));
        for (const auto& [r, val] : cols[j].entries)
            row_exprs[static_cast<std::size_t>(r)].add(val, static_cast<VarId>(j));
    }
    model.set_objective(std::move(obj));
    for (std::size_t r = 0; r < row_names.size(); ++r) {
        Constraint c;
        c.expr = std::move(row_exprs[r]);
        c.sense = row_senses[r];
        c.rhs = row_rhs[r];
        c.name = row_names[r];
        model.add_constraint(std::move(c));
    }
    return model;
}

}  // namespace oranjopt
