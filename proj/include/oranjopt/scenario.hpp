// SPDX-License-Identifier: Apache-2.0
//
// Problem-instance data model for the joint RB allocation / DU selection
// problem: sets and cardinalities, per-(UE,TTI,class) demand sizes, per-RB
// achievable rates, RU->DU fronthaul propagation delays, DU energy
// coefficients and delay budgets; plus a seeded random generator and a
// self-describing JSON persistence format (integers for bit counts, decimal
// strings for rationals).

#pragma once

#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "oranjopt/num_format.hpp"

namespace oranjopt {

class SchemaError : public std::runtime_error {
public:
    explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

struct TrafficClass {
    int id = 0;
    std::int64_t packet_size_bits = 0;
    double delay_budget_ms = 1.0;
    double arrival_weight = 0.0;

    bool operator==(const TrafficClass&) const = default;
};

struct Scenario {
    int num_ue = 0;       // I
    int num_ru = 0;       // J
    int num_du = 0;       // L
    int num_tti = 0;      // T
    int rbs_per_tti = 0;  // R
    double tti_ms = 1.0;
    double big_m = 1e4;
    std::vector<TrafficClass> classes;          // K entries
    std::vector<std::int64_t> demand_bits;      // [i][t][k]
    std::vector<std::int64_t> rate_bits;        // [j][i][r][t]
    std::vector<double> prop_delay_ms;          // [j][l]
    std::vector<double> e_static_wh;            // [l]
    std::vector<double> e_dynamic_wh;           // [l]

    int num_classes() const { return static_cast<int>(classes.size()); }

    std::int64_t demand(int i, int t, int k) const {
        return demand_bits[(static_cast<std::size_t>(i) * num_tti + t) * classes.size() + k];
    }
    std::int64_t& demand(int i, int t, int k) {
        return demand_bits[(static_cast<std::size_t>(i) * num_tti + t) * classes.size() + k];
    }
    std::int64_t rate(int j, int i, int r, int t) const {
        return rate_bits[((static_cast<std::size_t>(j) * num_ue + i) * rbs_per_tti + r) * num_tti +
                         t];
    }
    std::int64_t& rate(int j, int i, int r, int t) {
        return rate_bits[((static_cast<std::size_t>(j) * num_ue + i) * rbs_per_tti + r) * num_tti +
                         t];
    }
    double prop(int j, int l) const {
        return prop_delay_ms[static_cast<std::size_t>(j) * num_du + l];
    }
    double& prop(int j, int l) { return prop_delay_ms[static_cast<std::size_t>(j) * num_du + l]; }

    double max_prop() const {
        double m = 0.0;
        for (double d : prop_delay_ms) m = std::max(m, d);
        return m;
    }

    // Class index demanded at (i,t), or -1.  Well-defined on valid scenarios.
    int demanded_class(int i, int t) const {
        for (int k = 0; k < num_classes(); ++k)
            if (demand(i, t, k) > 0) return k;
        return -1;
    }

    bool operator==(const Scenario&) const = default;
};

struct ScenarioConfig {
    int num_ue = 12;
    int num_ru = 6;
    int num_du = 3;
    int num_tti = 10;
    int rbs_per_tti = 4;
    double tti_ms = 1.0;
    double big_m = 1e4;
    // URLLC then eMBB; eMBB arrivals weighted 3x.
    std::vector<TrafficClass> classes = {{0, 50, 2.0, 1.0}, {1, 500, 10.0, 3.0}};
    double arrival_probability = 0.66;
    int arrival_window_ttis = 6;
    int packet_size_multiplier = 1;
    std::int64_t rate_bits_per_rb = 350;
    // Energy preset: homogeneous value, or a per-DU list that overrides it.
    double e_static_homogeneous_wh = 10000.0;
    std::vector<double> e_static_wh;
    double e_dynamic_homogeneous_wh = 1.0;
    std::vector<double> e_dynamic_wh;
    // Propagation: explicit [j][l] matrix, or the nearest-DU pattern with this
    // delay to every non-nearest DU.  RU j's nearest DU is j mod L.
    std::vector<double> prop_delay_ms;
    double far_prop_delay_ms = 2.0;
};

inline std::vector<std::string> validate_config(const ScenarioConfig& c) {
    std::vector<std::string> v;
    auto bad = [&](const std::string& msg) { v.push_back(msg); };
    if (c.num_ue <= 0) bad("num_ue: must be positive");
    if (c.num_ru <= 0) bad("num_ru: must be positive");
    if (c.num_du <= 0) bad("num_du: must be positive");
    if (c.num_tti <= 0) bad("num_tti: must be positive");
    if (c.rbs_per_tti <= 0) bad("rbs_per_tti: must be positive");
    if (!(c.tti_ms > 0.0)) bad("tti_ms: must be positive");
    if (!(c.big_m > 0.0)) bad("big_m: must be positive");
    if (!(c.arrival_probability >= 0.0 && c.arrival_probability <= 1.0))
        bad("arrival_probability: must lie in [0,1]");
    if (c.arrival_window_ttis < 0 || c.arrival_window_ttis > c.num_tti)
        bad("arrival_window_ttis: must lie in [0, num_tti]");
    if (c.packet_size_multiplier < 0) bad("packet_size_multiplier: must be nonnegative");
    if (c.rate_bits_per_rb < 0) bad("rate_bits_per_rb: must be nonnegative");
    if (c.classes.empty()) bad("classes: must not be empty");
    double total_weight = 0.0;
    for (std::size_t k = 0; k < c.classes.size(); ++k) {
        const TrafficClass& tc = c.classes[k];
        if (tc.packet_size_bits < 0)
            bad("classes[" + std::to_string(k) + "].packet_size_bits: must be nonnegative");
        if (!(tc.delay_budget_ms > 0.0))
            bad("classes[" + std::to_string(k) + "].delay_budget_ms: must be positive");
        if (tc.arrival_weight < 0.0)
            bad("classes[" + std::to_string(k) + "].arrival_weight: must be nonnegative");
        total_weight += tc.arrival_weight;
    }
    if (!c.classes.empty() && total_weight <= 0.0 && c.arrival_probability > 0.0 &&
        c.arrival_window_ttis > 0)
        bad("classes: total arrival_weight must be positive");
    if (!c.e_static_wh.empty() && c.e_static_wh.size() != static_cast<std::size_t>(c.num_du))
        bad("e_static_wh: per-DU list must have num_du entries");
    if (!c.e_dynamic_wh.empty() && c.e_dynamic_wh.size() != static_cast<std::size_t>(c.num_du))
        bad("e_dynamic_wh: per-DU list must have num_du entries");
    if (!c.prop_delay_ms.empty() &&
        c.prop_delay_ms.size() != static_cast<std::size_t>(c.num_ru) * c.num_du)
        bad("prop_delay_ms: explicit matrix must have num_ru*num_du entries");
    if (c.e_static_homogeneous_wh < 0.0) bad("e_static_homogeneous_wh: must be nonnegative");
    if (c.e_dynamic_homogeneous_wh < 0.0) bad("e_dynamic_homogeneous_wh: must be nonnegative");
    if (c.far_prop_delay_ms < 0.0) bad("far_prop_delay_ms: must be nonnegative");
    return v;
}

// Deterministic in (config, seed).  Per UE and TTI inside the arrival window a
// packet arrives with the configured probability; its class is drawn with
// probability proportional to arrival_weight.  Uniform draws use explicit
// 53-bit mantissa mapping so the byte stream is engine-exact everywhere.
inline Scenario generate(const ScenarioConfig& cfg, std::uint64_t seed) {
    {
        auto errs = validate_config(cfg);
        if (!errs.empty()) throw std::invalid_argument("invalid config: " + errs.front());
    }
    Scenario s;
    s.num_ue = cfg.num_ue;
    s.num_ru = cfg.num_ru;
    s.num_du = cfg.num_du;
    s.num_tti = cfg.num_tti;
    s.rbs_per_tti = cfg.rbs_per_tti;
    s.tti_ms = cfg.tti_ms;
    s.big_m = cfg.big_m;
    s.classes = cfg.classes;
    for (auto& tc : s.classes) tc.packet_size_bits *= cfg.packet_size_multiplier;

    const int K = s.num_classes();
    s.demand_bits.assign(static_cast<std::size_t>(s.num_ue) * s.num_tti * K, 0);
    std::mt19937_64 rng(seed);
    auto uniform = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    double total_weight = 0.0;
    for (const auto& tc : cfg.classes) total_weight += tc.arrival_weight;
    for (int i = 0; i < s.num_ue; ++i) {
        for (int t = 0; t < cfg.arrival_window_ttis; ++t) {
            if (uniform() >= cfg.arrival_probability) continue;
            double pickpoint = uniform() * total_weight;
            int k = 0;
            double cum = 0.0;
            for (; k < K; ++k) {
                cum += cfg.classes[static_cast<std::size_t>(k)].arrival_weight;
                if (pickpoint < cum) break;
            }
            if (k == K) k = K - 1;  // guard against roundoff at the top end
            s.demand(i, t, k) = s.classes[static_cast<std::size_t>(k)].packet_size_bits;
        }
    }

    s.rate_bits.assign(
        static_cast<std::size_t>(s.num_ru) * s.num_ue * s.rbs_per_tti * s.num_tti,
        cfg.rate_bits_per_rb);

    if (!cfg.prop_delay_ms.empty()) {
        s.prop_delay_ms = cfg.prop_delay_ms;
    } else {
        s.prop_delay_ms.assign(static_cast<std::size_t>(s.num_ru) * s.num_du,
                               cfg.far_prop_delay_ms);
        for (int j = 0; j < s.num_ru; ++j) s.prop(j, j % s.num_du) = 0.0;
    }

    s.e_static_wh = cfg.e_static_wh.empty()
                        ? std::vector<double>(s.num_du, cfg.e_static_homogeneous_wh)
                        : cfg.e_static_wh;
    s.e_dynamic_wh = cfg.e_dynamic_wh.empty()
                         ? std::vector<double>(s.num_du, cfg.e_dynamic_homogeneous_wh)
                         : cfg.e_dynamic_wh;
    return s;
}

inline std::vector<std::string> validate(const Scenario& s) {
    std::vector<std::string> v;
    auto bad = [&](const std::string& msg) { v.push_back(msg); };
    if (s.num_ue <= 0) bad("num_ue: must be positive");
    if (s.num_ru <= 0) bad("num_ru: must be positive");
    if (s.num_du <= 0) bad("num_du: must be positive");
    if (s.num_tti <= 0) bad("num_tti: must be positive");
    if (s.rbs_per_tti <= 0) bad("rbs_per_tti: must be positive");
    if (!(s.tti_ms > 0.0)) bad("tti_ms: must be positive");
    if (!(s.big_m > 0.0)) bad("big_m: must be positive");
    if (s.classes.empty()) bad("classes: must not be empty");
    if (!v.empty()) return v;  // sizes below assume sane cardinalities

    const std::size_t K = s.classes.size();
    for (std::size_t k = 0; k < K; ++k) {
        const TrafficClass& tc = s.classes[k];
        if (tc.packet_size_bits < 0)
            bad("classes[" + std::to_string(k) + "].packet_size_bits: must be nonnegative");
        if (!(tc.delay_budget_ms > 0.0))
            bad("classes[" + std::to_string(k) + "].delay_budget_ms: must be positive");
        if (tc.arrival_weight < 0.0)
            bad("classes[" + std::to_string(k) + "].arrival_weight: must be nonnegative");
    }
    if (s.demand_bits.size() != static_cast<std::size_t>(s.num_ue) * s.num_tti * K)
        bad("demand_bits: wrong size");
    if (s.rate_bits.size() !=
        static_cast<std::size_t>(s.num_ru) * s.num_ue * s.rbs_per_tti * s.num_tti)
        bad("rate_bits: wrong size");
    if (s.prop_delay_ms.size() != static_cast<std::size_t>(s.num_ru) * s.num_du)
        bad("prop_delay_ms: wrong size");
    if (s.e_static_wh.size() != static_cast<std::size_t>(s.num_du)) bad("e_static_wh: wrong size");
    if (s.e_dynamic_wh.size() != static_cast<std::size_t>(s.num_du))
        bad("e_dynamic_wh: wrong size");
    if (!v.empty()) return v;

    for (std::size_t idx = 0; idx < s.demand_bits.size(); ++idx)
        if (s.demand_bits[idx] < 0) {
            bad("demand_bits: negative entry at flat index " + std::to_string(idx));
            break;
        }
    for (std::size_t idx = 0; idx < s.rate_bits.size(); ++idx)
        if (s.rate_bits[idx] < 0) {
            bad("rate_bits: negative entry at flat index " + std::to_string(idx));
            break;
        }
    for (int j = 0; j < s.num_ru; ++j)
        for (int l = 0; l < s.num_du; ++l)
            if (s.prop(j, l) < 0.0)
                bad("prop_delay_ms[" + std::to_string(j) + "][" + std::to_string(l) +
                    "]: must be nonnegative");
    for (int l = 0; l < s.num_du; ++l) {
        if (s.e_static_wh[static_cast<std::size_t>(l)] < 0.0)
            bad("e_static_wh[" + std::to_string(l) + "]: must be nonnegative");
        if (s.e_dynamic_wh[static_cast<std::size_t>(l)] < 0.0)
            bad("e_dynamic_wh[" + std::to_string(l) + "]: must be nonnegative");
    }

    // One traffic type per (i,t): precondition of the one-class restriction.
    for (int i = 0; i < s.num_ue; ++i)
        for (int t = 0; t < s.num_tti; ++t) {
            int positive = 0;
            for (std::size_t k = 0; k < K; ++k)
                if (s.demand(i, t, static_cast<int>(k)) > 0) ++positive;
            if (positive > 1)
                bad("demand_bits[" + std::to_string(i) + "][" + std::to_string(t) +
                    "]: more than one traffic class demanded in one TTI");
        }

    // Big-M must dominate both the RB count and the demand/rate ratio so no
    // indicator constraint binds at a feasible integer point.
    double need = static_cast<double>(s.num_tti) * s.rbs_per_tti * s.num_ue;
    std::int64_t max_demand = 0;
    for (std::int64_t d : s.demand_bits) max_demand = std::max(max_demand, d);
    std::int64_t min_rate = 0;
    for (std::int64_t r : s.rate_bits)
        if (r > 0 && (min_rate == 0 || r < min_rate)) min_rate = r;
    if (max_demand > 0 && min_rate > 0)
        need = std::max(need, static_cast<double>(max_demand) / static_cast<double>(min_rate));
    if (s.big_m < need)
        bad("big_m: " + numfmt::to_decimal(s.big_m) + " below required " +
            numfmt::to_decimal(need));
    return v;
}

// ---- persistence ----

namespace detail_scenario {

using json = nlohmann::ordered_json;

template <typename T>
const json& require(const json& j, const std::string& key) {
    auto it = j.find(key);
    if (it == j.end()) throw SchemaError("missing key: " + key);
    (void)sizeof(T);
    return *it;
}

inline std::int64_t req_int(const json& j, const std::string& key) {
    const json& v = require<int>(j, key);
    if (!v.is_number_integer()) throw SchemaError("key " + key + ": expected integer");
    return v.get<std::int64_t>();
}

inline double req_decimal(const json& j, const std::string& key) {
    const json& v = require<double>(j, key);
    if (!v.is_string()) throw SchemaError("key " + key + ": expected decimal string");
    try {
        return numfmt::from_decimal(v.get<std::string>());
    } catch (const std::invalid_argument&) {
        throw SchemaError("key " + key + ": malformed decimal string");
    }
}

inline const json& req_array(const json& j, const std::string& key) {
    const json& v = require<json>(j, key);
    if (!v.is_array()) throw SchemaError("key " + key + ": expected array");
    return v;
}

}  // namespace detail_scenario

inline std::string to_json_string(const Scenario& s) {
    using detail_scenario::json;
    json j;
    j["format"] = "oran-jopt-scenario";
    j["version"] = 1;
    j["num_ue"] = s.num_ue;
    j["num_ru"] = s.num_ru;
    j["num_du"] = s.num_du;
    j["num_tti"] = s.num_tti;
    j["rbs_per_tti"] = s.rbs_per_tti;
    j["tti_ms"] = numfmt::to_decimal(s.tti_ms);
    j["big_m"] = numfmt::to_decimal(s.big_m);
    json classes = json::array();
    for (const auto& tc : s.classes) {
        json c;
        c["id"] = tc.id;
        c["packet_size_bits"] = tc.packet_size_bits;
        c["delay_budget_ms"] = numfmt::to_decimal(tc.delay_budget_ms);
        c["arrival_weight"] = numfmt::to_decimal(tc.arrival_weight);
        classes.push_back(std::move(c));
    }
    j["classes"] = std::move(classes);

    json demand = json::array();
    for (int i = 0; i < s.num_ue; ++i) {
        json per_t = json::array();
        for (int t = 0; t < s.num_tti; ++t) {
            json per_k = json::array();
            for (int k = 0; k < s.num_classes(); ++k) per_k.push_back(s.demand(i, t, k));
            per_t.push_back(std::move(per_k));
        }
        demand.push_back(std::move(per_t));
    }
    j["demand_bits"] = std::move(demand);

    json rate = json::array();
    for (int jj = 0; jj < s.num_ru; ++jj) {
        json per_i = json::array();
        for (int i = 0; i < s.num_ue; ++i) {
            json per_r = json::array();
            for (int r = 0; r < s.rbs_per_tti; ++r) {
                json per_t = json::array();
                for (int t = 0; t < s.num_tti; ++t) per_t.push_back(s.rate(jj, i, r, t));
                per_r.push_back(std::move(per_t));
            }
            per_i.push_back(std::move(per_r));
        }
        rate.push_back(std::move(per_i));
    }
    j["rate_bits"] = std::move(rate);

    json prop = json::array();
    for (int jj = 0; jj < s.num_ru; ++jj) {
        json per_l = json::array();
        for (int l = 0; l < s.num_du; ++l) per_l.push_back(numfmt::to_decimal(s.prop(jj, l)));
        prop.push_back(std::move(per_l));
    }
    j["prop_delay_ms"] = std::move(prop);

    json es = json::array();
    for (double e : s.e_static_wh) es.push_back(numfmt::to_decimal(e));
    j["e_static_wh"] = std::move(es);
    json ed = json::array();
    for (double e : s.e_dynamic_wh) ed.push_back(numfmt::to_decimal(e));
    j["e_dynamic_wh"] = std::move(ed);

    return j.dump(2) + "\n";
}

inline Scenario from_json_string(const std::string& text) {
    using namespace detail_scenario;
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string("not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw SchemaError("top level: expected object");
    if (require<json>(j, "format").get<std::string>() != "oran-jopt-scenario")
        throw SchemaError("key format: expected \"oran-jopt-scenario\"");
    if (req_int(j, "version") != 1) throw SchemaError("key version: unsupported version");

    Scenario s;
    s.num_ue = static_cast<int>(req_int(j, "num_ue"));
    s.num_ru = static_cast<int>(req_int(j, "num_ru"));
    s.num_du = static_cast<int>(req_int(j, "num_du"));
    s.num_tti = static_cast<int>(req_int(j, "num_tti"));
    s.rbs_per_tti = static_cast<int>(req_int(j, "rbs_per_tti"));
    s.tti_ms = req_decimal(j, "tti_ms");
    s.big_m = req_decimal(j, "big_m");

    const json& classes = req_array(j, "classes");
    for (const auto& c : classes) {
        TrafficClass tc;
        tc.id = static_cast<int>(req_int(c, "id"));
        tc.packet_size_bits = req_int(c, "packet_size_bits");
        tc.delay_budget_ms = req_decimal(c, "delay_budget_ms");
        tc.arrival_weight = req_decimal(c, "arrival_weight");
        s.classes.push_back(tc);
    }
    const int K = s.num_classes();
    if (K == 0) throw SchemaError("key classes: must not be empty");
    if (s.num_ue <= 0 || s.num_ru <= 0 || s.num_du <= 0 || s.num_tti <= 0 || s.rbs_per_tti <= 0)
        throw SchemaError("key num_ue/num_ru/num_du/num_tti/rbs_per_tti: must be positive");

    auto dims = [](const json& arr, std::size_t want, const std::string& key) {
        if (!arr.is_array() || arr.size() != want)
            throw SchemaError("key " + key + ": expected array of length " + std::to_string(want));
    };

    const json& demand = req_array(j, "demand_bits");
    dims(demand, static_cast<std::size_t>(s.num_ue), "demand_bits");
    s.demand_bits.assign(static_cast<std::size_t>(s.num_ue) * s.num_tti * K, 0);
    for (int i = 0; i < s.num_ue; ++i) {
        dims(demand[i], static_cast<std::size_t>(s.num_tti), "demand_bits");
        for (int t = 0; t < s.num_tti; ++t) {
            dims(demand[i][t], static_cast<std::size_t>(K), "demand_bits");
            for (int k = 0; k < K; ++k) {
                if (!demand[i][t][k].is_number_integer())
                    throw SchemaError("key demand_bits: expected integer entries");
                s.demand(i, t, k) = demand[i][t][k].get<std::int64_t>();
            }
        }
    }

    const json& rate = req_array(j, "rate_bits");
    dims(rate, static_cast<std::size_t>(s.num_ru), "rate_bits");
    s.rate_bits.assign(static_cast<std::size_t>(s.num_ru) * s.num_ue * s.rbs_per_tti * s.num_tti,
                       0);
    for (int jj = 0; jj < s.num_ru; ++jj) {
        dims(rate[jj], static_cast<std::size_t>(s.num_ue), "rate_bits");
        for (int i = 0; i < s.num_ue; ++i) {
            dims(rate[jj][i], static_cast<std::size_t>(s.rbs_per_tti), "rate_bits");
            for (int r = 0; r < s.rbs_per_tti; ++r) {
                dims(rate[jj][i][r], static_cast<std::size_t>(s.num_tti), "rate_bits");
                for (int t = 0; t < s.num_tti; ++t) {
                    if (!rate[jj][i][r][t].is_number_integer())
                        throw SchemaError("key rate_bits: expected integer entries");
                    s.rate(jj, i, r, t) = rate[jj][i][r][t].get<std::int64_t>();
                }
            }
        }
    }

    const json& prop = req_array(j, "prop_delay_ms");
    dims(prop, static_cast<std::size_t>(s.num_ru), "prop_delay_ms");
    s.prop_delay_ms.assign(static_cast<std::size_t>(s.num_ru) * s.num_du, 0.0);
    for (int jj = 0; jj < s.num_ru; ++jj) {
        dims(prop[jj], static_cast<std::size_t>(s.num_du), "prop_delay_ms");
        for (int l = 0; l < s.num_du; ++l) {
            if (!prop[jj][l].is_string())
                throw SchemaError("key prop_delay_ms: expected decimal string entries");
            s.prop(jj, l) = numfmt::from_decimal(prop[jj][l].get<std::string>());
        }
    }

    auto load_energy = [&](const std::string& key) {
        const json& arr = req_array(j, key);
        dims(arr, static_cast<std::size_t>(s.num_du), key);
        std::vector<double> out;
        for (const auto& e : arr) {
            if (!e.is_string()) throw SchemaError("key " + key + ": expected decimal strings");
            out.push_back(numfmt::from_decimal(e.get<std::string>()));
        }
        return out;
    };
    s.e_static_wh = load_energy("e_static_wh");
    s.e_dynamic_wh = load_energy("e_dynamic_wh");
    return s;
}

inline void save(const Scenario& s, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << to_json_string(s);
    if (!out) throw std::runtime_error("write failed: " + path);
}

inline Scenario load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SchemaError("cannot open: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_json_string(ss.str());
}

}  // namespace oranjopt
