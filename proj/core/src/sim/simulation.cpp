#include "dynes/sim/simulation.hpp"

#include <chrono>
#include <ctime>

#include "detail/json_codec.hpp"
#include "dynes/kb/printer.hpp"

namespace dynes {

namespace {

std::string utc_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view line = text.substr(pos, nl - pos);
        if (line.find_first_not_of(" \t\r") != std::string_view::npos) out.push_back(line);
        pos = nl + 1;
    }
    return out;
}

}  // namespace

SimulationError::SimulationError(int tick, const std::string& message)
    : std::runtime_error("tick " + std::to_string(tick) + ": " + message), tick_(tick) {}

std::string kb_hash(const KnowledgeBase& kb) { return detail::fnv1a_hex(print_kb(kb)); }

std::string scenario_hash(const Scenario& scenario) { return detail::fnv1a_hex(scenario.to_jsonl()); }

std::string header_line(const TraceHeader& h) {
    detail::ojson j;
    j["type"] = "header";
    j["format"] = 1;
    j["kb_hash"] = h.kb_hash;
    j["scenario_hash"] = h.scenario_hash;
    j["config"] = detail::encode_config(h.config);
    j["ticks"] = h.ticks;
    j["created"] = h.created;
    return j.dump();
}

std::string record_line(const TickRecord& record) { return detail::encode_record(record).dump(); }

std::string trace_to_jsonl(const Trace& trace) {
    std::string out = header_line(trace.header) + '\n';
    for (const auto& r : trace.records) out += record_line(r) + '\n';
    return out;
}

Trace run_simulation(const KnowledgeBase& kb, const Scenario& scenario, int ticks, const EngineConfig& config,
                     const SimulationOptions& options) {
    if (ticks < 0) throw std::invalid_argument("tick count must be >= 0");
    Trace trace;
    trace.header = {kb_hash(kb), scenario_hash(scenario), config, ticks, options.created.value_or(utc_now())};
    if (options.stream) *options.stream << header_line(trace.header) << '\n';

    Engine engine(kb, config);
    for (int t = 0; t < ticks; ++t) {
        TickRecord rec;
        try {
            rec = engine.run_cycle(scenario.facts_at(t));
        } catch (const UndeclaredReference& e) {
            throw SimulationError(t, e.what());
        }
        if (options.stream) *options.stream << record_line(rec) << '\n' << std::flush;
        trace.records.push_back(std::move(rec));
    }
    return trace;
}

ReplayResult verify_replay(std::string_view trace_jsonl, const KnowledgeBase& kb, const Scenario& scenario) {
    const auto lines = split_lines(trace_jsonl);
    if (lines.empty()) throw ReplayError("empty trace");
    nlohmann::json header;
    try {
        header = nlohmann::json::parse(lines.front());
    } catch (const nlohmann::json::parse_error& e) {
        throw ReplayError(std::string("malformed trace header: ") + e.what());
    }
    if (!header.is_object() || header.value("type", "") != "header") throw ReplayError("first line is not a trace header");

    EngineConfig config;
    int ticks = 0;
    try {
        if (header.at("kb_hash").get<std::string>() != kb_hash(kb)) throw ReplayError("kb hash mismatch");
        if (header.at("scenario_hash").get<std::string>() != scenario_hash(scenario))
            throw ReplayError("scenario hash mismatch");
        config = detail::decode_config(header.at("config"));
        ticks = header.at("ticks").get<int>();
    } catch (const nlohmann::json::exception& e) {
        throw ReplayError(std::string("malformed trace header: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ReplayError(std::string("malformed trace header: ") + e.what());
    }

    const Trace fresh = run_simulation(kb, scenario, ticks, config, {.stream = nullptr, .created = ""});
    const std::size_t given = lines.size() - 1;
    for (std::size_t i = 0; i < std::max(given, fresh.records.size()); ++i) {
        const int tick = static_cast<int>(i);
        if (i >= given) return {false, tick, "trace ends before tick " + std::to_string(tick)};
        if (i >= fresh.records.size()) return {false, tick, "unexpected record beyond the last tick"};
        std::string recorded;
        try {
            recorded = detail::ojson::parse(lines[i + 1]).dump();
        } catch (const nlohmann::json::parse_error&) {
            return {false, tick, "malformed record"};
        }
        if (recorded != record_line(fresh.records[i])) return {false, tick, "record differs"};
    }
    return {true, std::nullopt, ""};
}

}  // namespace dynes
