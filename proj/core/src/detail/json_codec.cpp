#include "detail/json_codec.hpp"

#include <cstdio>
#include <stdexcept>

namespace dynes::detail {

namespace {

std::vector<double> numbers(const auto& arr, const char* what) {
    if (!arr.is_array()) throw std::invalid_argument(std::string(what) + ": expected an array");
    std::vector<double> out;
    for (const auto& x : arr) {
        if (!x.is_number()) throw std::invalid_argument(std::string(what) + ": expected numbers");
        out.push_back(x.template get<double>());
    }
    return out;
}

template <class J>
Value decode_literal(const J& j) {
    if (j.is_boolean()) return Value(j.template get<bool>());
    if (j.is_number()) return Value(j.template get<double>());
    if (j.is_string()) return Value(j.template get<std::string>());
    if (!j.is_object() || j.size() != 1) throw std::invalid_argument("not a value literal: " + j.dump());
    const auto& [key, body] = *j.items().begin();
    if (key == "inexact") {
        auto v = numbers(body, "inexact");
        if (v.size() != 2 || v[1] < 0) throw std::invalid_argument("inexact: expected [center, half_width >= 0]");
        return Value(Inexact{v[0], v[1]});
    }
    if (key == "range") {
        auto v = numbers(body, "range");
        if (v.size() != 2 || v[0] > v[1]) throw std::invalid_argument("range: expected [lo, hi] with lo <= hi");
        return Value(Range{v[0], v[1]});
    }
    if (key == "set") {
        auto v = numbers(body, "set");
        if (v.empty()) throw std::invalid_argument("set: must not be empty");
        return Value::finite_set(std::move(v));
    }
    if (key == "mf") {
        if (!body.is_array()) throw std::invalid_argument("mf: expected an array of [x, mu] pairs");
        std::vector<Breakpoint> pts;
        for (const auto& p : body) {
            auto xy = numbers(p, "mf");
            if (xy.size() != 2) throw std::invalid_argument("mf: expected [x, mu] pairs");
            pts.push_back({xy[0], xy[1]});
        }
        return Value(MembershipFunction(std::move(pts)));
    }
    throw std::invalid_argument("unknown value literal '" + key + "'");
}

template <class J>
Value decode_any(const J& j) {
    if (j.is_object() && j.contains("value")) {
        if (j.size() != 2 || !j.contains("cf") || !j["cf"].is_number())
            throw std::invalid_argument("expected {\"value\": literal, \"cf\": number}");
        return decode_literal(j["value"]).with_certainty(j["cf"].template get<double>());
    }
    return decode_literal(j);
}

}  // namespace

ojson encode_value(const Value& v) {
    ojson lit = std::visit(
        [](const auto& p) -> ojson {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, double> || std::is_same_v<T, bool> || std::is_same_v<T, std::string>) {
                return p;
            } else if constexpr (std::is_same_v<T, Inexact>) {
                return {{"inexact", {p.center, p.half_width}}};
            } else if constexpr (std::is_same_v<T, Range>) {
                return {{"range", {p.lo, p.hi}}};
            } else if constexpr (std::is_same_v<T, FiniteSet>) {
                return {{"set", p.members}};
            } else {
                ojson pts = ojson::array();
                for (const auto& b : p.points()) pts.push_back({b.x, b.mu});
                return {{"mf", pts}};
            }
        },
        v.payload());
    if (v.certainty() == 1.0) return lit;
    return {{"value", lit}, {"cf", v.certainty()}};
}

Value decode_value(const nlohmann::json& j) { return decode_any(j); }
Value decode_value(const ojson& j) { return decode_any(j); }

ojson encode_truth(TruthValue t) {
    if (t.is_ne()) return "NE";
    return t.degree();
}

ojson encode_fact(const Fact& f) {
    return {{"value", encode_value(f.value)},
            {"asserted_at", f.asserted_at},
            {"stamp", f.stamp},
            {"provenance", f.provenance.to_string()}};
}

ojson encode_record(const TickRecord& rec) {
    ojson origins = ojson::array();
    for (const auto& o : rec.origins) origins.push_back({{"object", o.object}, {"kind", o.kind}});
    ojson anomalies = ojson::array();
    for (const auto& a : rec.anomalies)
        anomalies.push_back({{"object", a.object}, {"kind", a.kind}, {"message", a.message}});
    ojson fired = ojson::array();
    for (const auto& f : rec.fired) {
        ojson as = ojson::array();
        for (const auto& a : f.assignments) as.push_back({{"ref", a.ref}, {"value", encode_value(a.value)}});
        fired.push_back({{"rule", f.rule}, {"truth", encode_truth(f.truth)}, {"assignments", as}});
    }
    ojson diff = ojson::array();
    for (const auto& d : rec.wm_diff) {
        diff.push_back({{"phase", d.phase},
                        {"ref", d.ref},
                        {"before", d.before ? encode_fact(*d.before) : ojson(nullptr)},
                        {"after", d.after ? encode_fact(*d.after) : ojson(nullptr)}});
    }
    ojson controls = ojson::array();
    for (const auto& c : rec.control_actions)
        controls.push_back({{"rule", c.rule}, {"ref", c.ref}, {"value", encode_value(c.value)}});
    ojson defuzz = ojson::array();
    for (const auto& d : rec.defuzz_modes)
        defuzz.push_back({{"ref", d.ref}, {"modes", d.modes}, {"primary", d.primary}});

    ojson out;
    out["tick"] = rec.tick;
    out["phases"] = rec.phases;
    out["origins"] = std::move(origins);
    out["anomalies"] = std::move(anomalies);
    out["fired"] = std::move(fired);
    out["wm_diff"] = std::move(diff);
    out["control_actions"] = std::move(controls);
    out["defuzz_modes"] = std::move(defuzz);
    out["flags"] = rec.flags;
    return out;
}

ojson encode_config(const EngineConfig& c) {
    return {{"theta_fire", c.theta_fire},
            {"max_firings", c.max_firings},
            {"alpha_levels", c.alpha_levels},
            {"singleton_epsilon", c.singleton_epsilon},
            {"firing_mode", to_string(c.firing_mode)},
            {"persist_conflict_set", c.persist_conflict_set},
            {"use_cache", c.use_cache}};
}

EngineConfig decode_config(const nlohmann::json& j, EngineConfig base) {
    if (!j.is_object()) throw std::invalid_argument("config: expected an object");
    for (const auto& [key, v] : j.items()) {
        ConfigSetting s{key, 0.0, {}};
        if (v.is_boolean()) s.value = v.get<bool>();
        else if (v.is_number()) s.value = v.get<double>();
        else if (v.is_string()) s.value = v.get<std::string>();
        else throw std::invalid_argument("config: bad value for '" + key + "'");
        base.apply(s);
    }
    base.validate();
    return base;
}

std::string fnv1a_hex(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace dynes::detail

namespace dynes {

EngineConfig apply_config_json(std::string_view json, EngineConfig base) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    return detail::decode_config(j, base);
}

}  // namespace dynes
