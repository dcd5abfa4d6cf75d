#include "dynes/sim/scenario.hpp"

#include <algorithm>

#include "detail/json_codec.hpp"
#include "dynes/kb/parser.hpp"

namespace dynes {

ScenarioError::ScenarioError(int line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

std::vector<ExternalFact> Scenario::facts_at(int tick) const {
    auto it = std::lower_bound(entries.begin(), entries.end(), tick,
                               [](const ScenarioEntry& e, int t) { return e.tick < t; });
    if (it == entries.end() || it->tick != tick) return {};
    return it->facts;
}

std::string Scenario::to_jsonl() const {
    std::string out;
    for (const auto& e : entries) {
        detail::ojson set = detail::ojson::object();
        for (const auto& f : e.facts) set[f.ref] = detail::encode_value(f.value);
        detail::ojson line;
        line["tick"] = e.tick;
        line["set"] = std::move(set);
        out += line.dump();
        out += '\n';
    }
    return out;
}

Scenario parse_scenario(std::string_view text) {
    Scenario sc;
    int lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view line = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;

        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw ScenarioError(lineno, std::string("malformed entry: ") + e.what());
        }
        if (!j.is_object() || !j.contains("tick") || !j["tick"].is_number_integer())
            throw ScenarioError(lineno, "malformed entry: expected an integer \"tick\"");
        for (const auto& [key, _] : j.items())
            if (key != "tick" && key != "set") throw ScenarioError(lineno, "malformed entry: unknown key '" + key + "'");
        ScenarioEntry entry;
        entry.tick = j["tick"].get<int>();
        if (entry.tick < 0) throw ScenarioError(lineno, "malformed entry: negative tick");
        if (!sc.entries.empty() && entry.tick <= sc.entries.back().tick)
            throw ScenarioError(lineno, "non-ascending tick " + std::to_string(entry.tick));
        if (j.contains("set")) {
            const auto& set = j["set"];
            if (!set.is_object()) throw ScenarioError(lineno, "malformed entry: \"set\" must be an object");
            for (const auto& [ref, lit] : set.items()) {
                try {
                    entry.facts.push_back({ref, detail::decode_value(lit)});
                } catch (const std::exception& e) {
                    throw ScenarioError(lineno, "malformed entry: " + ref + ": " + e.what());
                }
            }
        }
        sc.entries.push_back(std::move(entry));
        if (nl == text.size()) break;
    }
    return sc;
}

Scenario load_scenario(const std::filesystem::path& path) { return parse_scenario(read_text_file(path)); }

}  // namespace dynes
