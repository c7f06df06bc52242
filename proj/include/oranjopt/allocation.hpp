// SPDX-License-Identifier: Apache-2.0
//
// Decoded decision bundle in domain terms: which RBs serve which demand and
// when, which DU each RU binds per TTI, which DUs are active, and the demand
// indicator flags.  Serve flags are canonical: (i,t,j,t') is flagged iff some
// RB of RU j at slot t' is assigned to demand (i,t).

#pragma once

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "oranjopt/scenario.hpp"

namespace oranjopt {

struct Allocation {
    std::vector<std::array<int, 5>> rb_assign;     // (i, t, j, r, t')
    std::vector<std::array<int, 3>> du_assign;     // (j, l, t')
    std::vector<std::array<int, 2>> du_active;     // (l, t)
    std::vector<std::array<int, 3>> demand_flags;  // (i, t, k)
    std::vector<std::array<int, 4>> serve_flags;   // (i, t, j, t')

    void normalize() {
        auto fix = [](auto& v) {
            std::sort(v.begin(), v.end());
            v.erase(std::unique(v.begin(), v.end()), v.end());
        };
        fix(rb_assign);
        fix(du_assign);
        fix(du_active);
        fix(demand_flags);
        fix(serve_flags);
    }

    bool empty() const {
        return rb_assign.empty() && du_assign.empty() && du_active.empty() &&
               demand_flags.empty() && serve_flags.empty();
    }

    bool operator==(const Allocation&) const = default;
};

inline std::vector<std::array<int, 4>> canonical_serve_flags(
    const std::vector<std::array<int, 5>>& rb_assign) {
    std::vector<std::array<int, 4>> out;
    out.reserve(rb_assign.size());
    for (const auto& [i, t, j, r, tp] : rb_assign) {
        (void)r;
        out.push_back({i, t, j, tp});
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline std::string to_json_string(const Allocation& a) {
    nlohmann::ordered_json j;
    j["format"] = "oran-jopt-allocation";
    j["version"] = 1;
    auto dump = [](const auto& rows) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& row : rows) {
            nlohmann::ordered_json r = nlohmann::ordered_json::array();
            for (int v : row) r.push_back(v);
            arr.push_back(std::move(r));
        }
        return arr;
    };
    j["rb_assign"] = dump(a.rb_assign);
    j["du_assign"] = dump(a.du_assign);
    j["du_active"] = dump(a.du_active);
    j["demand_flags"] = dump(a.demand_flags);
    j["serve_flags"] = dump(a.serve_flags);
    return j.dump(2) + "\n";
}

inline Allocation allocation_from_json_string(const std::string& text) {
    nlohmann::ordered_json j;
    try {
        j = nlohmann::ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(std::string("not valid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("format") ||
        j["format"] != "oran-jopt-allocation")
        throw SchemaError("key format: expected \"oran-jopt-allocation\"");
    Allocation a;
    auto parse_rows = [&](const char* key, auto& rows, std::size_t arity) {
        if (!j.contains(key)) throw SchemaError(std::string("missing key: ") + key);
        const auto& arr = j[key];
        if (!arr.is_array()) throw SchemaError(std::string("key ") + key + ": expected array");
        for (const auto& row : arr) {
            if (!row.is_array() || row.size() != arity)
                throw SchemaError(std::string("key ") + key + ": expected rows of length " +
                                  std::to_string(arity));
            typename std::remove_reference_t<decltype(rows)>::value_type entry{};
            for (std::size_t c = 0; c < arity; ++c) entry[c] = row[c].get<int>();
            rows.push_back(entry);
        }
    };
    parse_rows("rb_assign", a.rb_assign, 5);
    parse_rows("du_assign", a.du_assign, 3);
    parse_rows("du_active", a.du_active, 2);
    parse_rows("demand_flags", a.demand_flags, 3);
    parse_rows("serve_flags", a.serve_flags, 4);
    a.normalize();
    return a;
}

inline void save_allocation(const Allocation& a, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << to_json_string(a);
}

inline Allocation load_allocation(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SchemaError("cannot open: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return allocation_from_json_string(ss.str());
}

// Human-readable listing used by the CLI solve output.
inline std::string allocation_listing(const Scenario& s, const Allocation& a) {
    std::ostringstream out;
    out << "demands:\n";
    for (const auto& [i, t, k] : a.demand_flags)
        out << "  ue " << i << " tti " << t << " class " << k << " (" << s.demand(i, t, k)
            << " bits, budget " << numfmt::to_decimal(s.classes[static_cast<std::size_t>(k)].delay_budget_ms)
            << " ms)\n";
    out << "rb assignments (ue, arrival tti -> ru, rb, service tti):\n";
    for (const auto& [i, t, j, r, tp] : a.rb_assign)
        out << "  ue " << i << " t" << t << " -> ru " << j << " rb " << r << " t'" << tp << "\n";
    out << "ru->du bindings (ru, du, tti):\n";
    for (const auto& [j, l, tp] : a.du_assign)
        out << "  ru " << j << " -> du " << l << " at t'" << tp << "\n";
    out << "active dus (du, tti):\n";
    for (const auto& [l, t] : a.du_active) out << "  du " << l << " at t" << t << "\n";
    return out.str();
}

}  // namespace oranjopt
