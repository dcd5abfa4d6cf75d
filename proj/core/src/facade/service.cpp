#include "dynes/facade/service.hpp"

#include <cstdio>
#include <random>
#include <variant>

#include "detail/json_codec.hpp"
#include "dynes/engine/engine.hpp"
#include "dynes/kb/parser.hpp"

namespace dynes {

using detail::ojson;

namespace {

ServiceResponse reply(int status, const ojson& body) { return {status, body.dump()}; }

ServiceResponse error(int status, const std::string& message) { return reply(status, ojson{{"error", message}}); }

ojson question_json(const Question& q) {
    return {{"id", q.id}, {"ref", q.ref}, {"domain", q.domain}, {"candidates", q.candidates}};
}

ojson result_json(const ConsultationResult& r) {
    return {{"goal", r.goal},
            {"value", r.value ? detail::encode_value(*r.value) : ojson(nullptr)},
            {"fired", r.fired}};
}

ojson transcript_json(const Consultation& c) {
    ojson log = ojson::array();
    for (const auto& e : c.log())
        log.push_back({{"question", question_json(e.question)},
                       {"answer", e.answer ? detail::encode_value(*e.answer) : ojson(nullptr)}});
    return {{"log", std::move(log)}, {"result", c.finished() ? result_json(c.result()) : ojson(nullptr)}};
}

ojson wm_json(const KnowledgeBase& kb, const WorkingMemory& wm) {
    ojson out = ojson::object();
    for (int a = 0; a < static_cast<int>(kb.attributes.size()); ++a)
        if (const Fact* f = wm.lookup(a)) out[kb.attribute_name(a)] = detail::encode_fact(*f);
    return out;
}

ojson timeline_json(const KnowledgeBase& kb, const EventFlow& flow) {
    ojson out = ojson::array();
    for (int t = 0; t < kb.temporal_count(); ++t) {
        ojson occ = ojson::array();
        for (const auto& o : flow.history(t))
            occ.push_back({{"start", o.start}, {"end", o.end ? ojson(*o.end) : ojson(nullptr)}});
        ojson anomalies = ojson::array();
        for (const auto& a : flow.anomalies())
            if (a.temporal == t)
                anomalies.push_back({{"tick", a.tick}, {"kind", to_string(a.kind)}, {"message", a.message()}});
        out.push_back({{"object", kb.temporal_name(t)},
                       {"kind", kb.temporal_kind(t) == TemporalKind::Event ? "event" : "interval"},
                       {"occurrences", std::move(occ)},
                       {"anomalies", std::move(anomalies)}});
    }
    return out;
}

ojson conflict_json(const KnowledgeBase& kb, const ConflictSet& cs) {
    ojson out = ojson::array();
    for (const auto& inst : cs.entries())
        out.push_back({{"rule", kb.rules.at(inst.rule).name},
                       {"truth", detail::encode_truth(inst.truth)},
                       {"rank",
                        {{"specificity", inst.rank.specificity},
                         {"novelty", inst.rank.novelty},
                         {"reliability", inst.rank.reliability},
                         {"index", inst.rank.index}}}});
    return out;
}

std::optional<nlohmann::json> parse_body(std::string_view body) {
    if (body.find_first_not_of(" \t\r\n") == std::string_view::npos) return nlohmann::json::object();
    try {
        auto j = nlohmann::json::parse(body);
        if (j.is_object()) return j;
    } catch (const nlohmann::json::parse_error&) {
    }
    return std::nullopt;
}

}  // namespace

std::string consultation_transcript(const Consultation& c) { return transcript_json(c).dump(); }

struct SessionManager::Session {
    std::mutex mutex;
    std::string id;
    std::unique_ptr<KnowledgeBase> kb;
    std::variant<std::monostate, Engine, Consultation> state;

    bool simulation() const { return std::holds_alternative<Engine>(state); }

    ojson question_view() {
        auto& c = std::get<Consultation>(state);
        ojson out;
        out["pending"] = c.pending() ? question_json(*c.pending()) : ojson(nullptr);
        out["result"] = c.finished() ? result_json(c.result()) : ojson(nullptr);
        return out;
    }
};

SessionManager::SessionManager() : seed_(std::random_device{}()) {}
SessionManager::~SessionManager() = default;

std::size_t SessionManager::size() const {
    std::lock_guard lock(mutex_);
    return sessions_.size();
}

std::shared_ptr<SessionManager::Session> SessionManager::find(const std::string& id) const {
    std::lock_guard lock(mutex_);
    auto it = sessions_.find(id);
    return it == sessions_.end() ? nullptr : it->second;
}

ServiceResponse SessionManager::create(std::string_view body) {
    const auto req = parse_body(body);
    if (!req || !req->contains("kb") || !(*req)["kb"].is_string()) return error(400, "expected {\"kb\": \"<KRL>\", ...}");
    const std::string mode = req->value("mode", "simulation");
    if (mode != "simulation" && mode != "consultation") return error(400, "mode must be simulation or consultation");

    auto session = std::make_shared<Session>();
    try {
        session->kb = std::make_unique<KnowledgeBase>(parse_kb((*req)["kb"].get<std::string>(), "<upload>"));
    } catch (const KrlError& e) {
        ojson diags = ojson::array();
        for (const auto& d : e.diagnostics()) diags.push_back(d.to_string());
        return reply(400, ojson{{"error", "invalid knowledge base"}, {"diagnostics", diags}});
    }
    EngineConfig config;
    try {
        config = config_from_kb(*session->kb);
        if (req->contains("config")) config = detail::decode_config((*req)["config"], config);
    } catch (const std::invalid_argument& e) {
        return error(400, e.what());
    }

    if (mode == "simulation") {
        session->state.emplace<Engine>(*session->kb, config);
    } else {
        if (!req->contains("goal") || !(*req)["goal"].is_string()) return error(400, "consultation needs a \"goal\"");
        const std::string goal = (*req)["goal"].get<std::string>();
        if (!session->kb->find_attribute(goal)) return error(400, "undeclared goal '" + goal + "'");
        auto& c = session->state.emplace<Consultation>(*session->kb, goal, config);
        c.next();
    }

    std::lock_guard lock(mutex_);
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(std::mt19937_64(seed_ + ++counter_)()));
    session->id = buf;
    sessions_[session->id] = session;
    return reply(201, ojson{{"id", session->id}, {"mode", mode}});
}

ServiceResponse SessionManager::state(const std::string& id) {
    auto s = find(id);
    if (!s) return error(404, "unknown session");
    std::lock_guard lock(s->mutex);
    ojson out;
    out["id"] = s->id;
    out["mode"] = s->simulation() ? "simulation" : "consultation";
    if (s->simulation()) {
        const Engine& e = std::get<Engine>(s->state);
        out["tick"] = e.next_tick();
        out["wm"] = wm_json(*s->kb, e.wm());
        out["timeline"] = timeline_json(*s->kb, e.flow());
        out["conflict_set"] = conflict_json(*s->kb, e.conflict_set());
    } else {
        const Consultation& c = std::get<Consultation>(s->state);
        out["wm"] = wm_json(*s->kb, c.wm());
        ojson q = s->question_view();
        out["pending"] = q["pending"];
        out["log"] = transcript_json(c)["log"];
        out["result"] = q["result"];
    }
    return reply(200, out);
}

ServiceResponse SessionManager::tick(const std::string& id, std::string_view body) {
    auto s = find(id);
    if (!s) return error(404, "unknown session");
    std::lock_guard lock(s->mutex);
    if (!s->simulation()) return error(409, "session is not in simulation mode");
    const auto req = parse_body(body);
    if (!req) return error(400, "malformed body");
    std::vector<ExternalFact> facts;
    if (req->contains("set")) {
        const auto& set = (*req)["set"];
        if (!set.is_object()) return error(400, "\"set\" must be an object");
        try {
            for (const auto& [ref, lit] : set.items()) facts.push_back({ref, detail::decode_value(lit)});
        } catch (const std::exception& e) {
            return error(400, e.what());
        }
    }
    try {
        return reply(200, detail::encode_record(std::get<Engine>(s->state).run_cycle(facts)));
    } catch (const UndeclaredReference& e) {
        return error(400, e.what());
    }
}

ServiceResponse SessionManager::question(const std::string& id) {
    auto s = find(id);
    if (!s) return error(404, "unknown session");
    std::lock_guard lock(s->mutex);
    if (s->simulation()) return error(409, "session is not in consultation mode");
    return reply(200, s->question_view());
}

ServiceResponse SessionManager::answer(const std::string& id, std::string_view body) {
    auto s = find(id);
    if (!s) return error(404, "unknown session");
    std::lock_guard lock(s->mutex);
    if (s->simulation()) return error(409, "session is not in consultation mode");
    auto& c = std::get<Consultation>(s->state);
    if (!c.pending()) return error(409, "no question is pending");
    const auto req = parse_body(body);
    if (!req) return error(400, "malformed body");
    try {
        if (req->value("unknown", false)) {
            c.answer_unknown();
        } else if (req->contains("value")) {
            c.answer(detail::decode_value((*req)["value"]));
        } else if (req->contains("text") && (*req)["text"].is_string()) {
            const std::string text = (*req)["text"].get<std::string>();
            if (text == "unknown") c.answer_unknown();
            else c.answer(parse_answer(text, *s->kb, c.pending()->attr));
        } else {
            return error(400, "expected \"value\", \"text\" or \"unknown\"");
        }
    } catch (const std::invalid_argument& e) {
        return error(400, e.what());
    } catch (const nlohmann::json::exception& e) {
        return error(400, e.what());
    }
    c.next();
    return reply(200, s->question_view());
}

ServiceResponse SessionManager::timeline(const std::string& id) {
    auto s = find(id);
    if (!s) return error(404, "unknown session");
    std::lock_guard lock(s->mutex);
    if (!s->simulation()) return reply(200, ojson::array());
    return reply(200, timeline_json(*s->kb, std::get<Engine>(s->state).flow()));
}

ServiceResponse SessionManager::remove(const std::string& id) {
    std::lock_guard lock(mutex_);
    if (sessions_.erase(id) == 0) return error(404, "unknown session");
    return {204, ""};
}

}  // namespace dynes
